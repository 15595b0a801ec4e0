#include "globsci/cli.hpp"

int main(int argc, char** argv) { return globsci::run_cli(argc, argv); }
