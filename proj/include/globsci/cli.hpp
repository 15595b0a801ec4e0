#pragma once

#include "globsci/aggregate.hpp"
#include "globsci/disciplines.hpp"
#include "globsci/types.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace globsci {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitData = 2, kExitInternal = 3 };

struct RunConfig {
    std::string input = "data";  // corpus CSV directory
    std::string out = "out";
    std::string raw;       // raw facet responses (harvest output, ingest input)
    std::string journals;  // journal metadata CSV for harvest/ingest
    std::string fixtures;  // harvest from saved search responses instead of the live API
    std::string discipline_map;
    std::string country_groups;
    std::string territories;
    std::set<DisciplineLevel> levels{DisciplineLevel::Broad, DisciplineLevel::All};
    int min_journals = 30;
    Count min_docs = 30;
    Count quartile_min_docs = 1;
    IndicatorId quartile_indicator = IndicatorId::Euclidean;
    std::vector<IndicatorId> indicators{kAllIndicators.begin(), kAllIndicators.end()};
    std::vector<int> years;
    std::string map_discipline = "ALL";
    std::optional<int> map_year;  // default: latest year
    bool strict_denominator = false;
    bool strict_audit = true;
    int workers = 1;
    int first_year = 1996;
    int last_year = 2008;
    double rate_limit = 5.0;
    int max_retries = 3;
    std::optional<std::uint64_t> seed;
    nlohmann::json synth = nlohmann::json::object();

    void validate() const;
    PipelineConfig pipeline() const;
    // Everything that affects outputs (the worker count does not).
    nlohmann::json canonical() const;
};

// Applies keys of a JSON config on top of `config`; unknown keys are rejected.
void apply_json(RunConfig& config, const nlohmann::json& j);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

// Entry point of the command-line tool.
int run_cli(int argc, char** argv);

}  // namespace globsci
