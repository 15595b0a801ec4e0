#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace globsci {

// Bad arguments or configuration (CLI exit 1).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad or missing input data (CLI exit 2). Carries the location when known.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}

    DataError(const std::string& file, std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          file_(file), line_(line), column_(column) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string file_;
    std::size_t line_ = 0;
    std::size_t column_ = 0;
};

}  // namespace globsci
