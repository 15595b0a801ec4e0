#pragma once

#include "globsci/corpus_index.hpp"
#include "globsci/indicators.hpp"
#include "globsci/types.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace globsci {

// One country-discipline-year-indicator cell.
struct GlobalizationScore {
    std::string country;
    std::string discipline;
    int year = 0;
    IndicatorId indicator;
    std::optional<double> raw;           // G_{c,d,y,i}
    std::optional<double> standardized;  // G^S, only for eligible cells
    bool eligible = false;
    int journal_count = 0;             // journals with N_{c,j,y} >= 1
    int qualifying_journal_count = 0;  // ... that also have T_{j,y} >= min_docs
};

struct StandardizationParams {
    IndicatorId indicator;
    double g_min = 0.0;
    double g_max = 0.0;
    Orientation orientation = Orientation::Maximizing;
    bool degenerate = false;  // g_max == g_min
    std::size_t cells = 0;    // eligible cells with a raw value
};

struct EligibilityRule {
    int min_journals = 30;
    Count min_docs = 30;
};

// Document-share weighted mean of journal indicator values for one cell.
// Journals with an undefined value are left out and the weights renormalized,
// unless strict_denominator keeps N_{c,d,y} as the denominator.
std::optional<double> aggregate_raw(const CorpusIndex& corpus, const ScoreTable& scores, std::string_view country,
                                    std::string_view discipline, int year, IndicatorId indicator,
                                    bool strict_denominator = false);

bool eligibility(const CorpusIndex& corpus, std::string_view country, std::string_view discipline, int year,
                 const EligibilityRule& rule = {});

// Maps a raw value onto [0, 1] where 1 is the highest globalization.
double standardize_value(double raw, const StandardizationParams& params);

// Fills `standardized` for eligible cells; min/max are taken per indicator
// over eligible cells with a raw value. Returns the parameters used.
std::vector<StandardizationParams> standardize(std::vector<GlobalizationScore>& cells);

struct PipelineConfig {
    std::set<DisciplineLevel> levels{DisciplineLevel::Broad, DisciplineLevel::All};
    std::vector<int> years;  // empty: every year in the corpus
    EligibilityRule eligibility;
    bool strict_denominator = false;
    std::vector<IndicatorId> indicators{kAllIndicators.begin(), kAllIndicators.end()};
    int workers = 1;
};

struct PipelineResult {
    ScoreTable scores;
    std::vector<GlobalizationScore> globalization;  // sorted by country, discipline, year, indicator
    std::vector<StandardizationParams> params;
};

// Raw aggregation plus eligibility for every cell (no standardization).
std::vector<GlobalizationScore> aggregate_all(const CorpusIndex& corpus, const ScoreTable& scores,
                                              const PipelineConfig& config);

PipelineResult run_pipeline(const CorpusIndex& corpus, const PipelineConfig& config);

// globalization_scores.csv
void write_globalization_scores(const std::string& path, const std::vector<GlobalizationScore>& cells);
std::vector<GlobalizationScore> read_globalization_scores(const std::string& path);

}  // namespace globsci
