#pragma once

#include "globsci/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace globsci {

struct SynthConfig {
    std::uint64_t seed = 1;
    int n_countries = 20;
    int n_journals = 60;
    int first_year = 2005;
    int last_year = 2009;
    // Relative country sizes; empty means Zipf weights 1/rank^country_zipf.
    std::vector<double> country_weights;
    double country_zipf = 1.0;
    // Per-journal locality lambda ~ U[locality_min, locality_max]: the chance a
    // document's author country is the journal's home country.
    double locality_min = 0.0;
    double locality_max = 1.0;
    double multi_country_rate = 0.2;
    int docs_min = 10;
    int docs_max = 120;
    int institutions_per_country = 12;
    double institution_zipf = 1.0;
    double english_min = 0.5;
    double english_max = 1.0;
    // "home": publisher in the journal's home country; "random": drawn from
    // the country weights.
    std::string publisher_rule = "home";
    double missing_publisher_rate = 0.05;
    double undefined_rate = 0.05;
    std::vector<std::string> narrow_codes{"11", "13", "27", "31", "33"};
    double second_discipline_rate = 0.2;

    // Throws ValidationError for infeasible settings.
    void validate() const;
};

SynthConfig synth_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SynthConfig& config);
SynthConfig load_synth_config(const std::string& path);

struct SynthCorpus {
    std::vector<JournalMeta> journals;
    std::vector<JournalYearRecord> records;
};

// Country codes the generator draws from, in rank order.
std::vector<std::string> synth_country_codes(int n_countries);

// Streams journals (ascending ISSN) and their records (ascending year).
void generate(const SynthConfig& config, const std::function<void(const JournalMeta&)>& on_journal,
              const std::function<void(const JournalYearRecord&)>& on_record);

SynthCorpus generate(const SynthConfig& config);

// Writes the five corpus CSVs into `dir`. Returns the number of facet rows.
std::size_t generate_to_directory(const SynthConfig& config, const std::string& dir);

}  // namespace globsci
