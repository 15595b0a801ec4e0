#pragma once

#include "globsci/aggregate.hpp"
#include "globsci/countries.hpp"
#include "globsci/corpus_index.hpp"
#include "globsci/indicators.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace globsci {

struct JournalValue {
    std::string journal_id;
    double value;  // NaN when undefined
    Count total_docs;
};

// Ranks journals from most to least international (ascending values for a
// minimizing indicator, descending otherwise; ties by ISSN) and assigns rank
// r of n to quartile ceil(4r/n). Journals with an undefined value or fewer
// than min_docs documents are left out. Throws DataError with < 4 journals.
std::map<std::string, int> quartile_split(std::span<const JournalValue> journals,
                                          IndicatorId indicator = IndicatorId::Euclidean, Count min_docs = 1);

// Indicator values of every scored journal in one discipline-year.
std::vector<JournalValue> journal_values(const CorpusIndex& corpus, const ScoreTable& scores, std::size_t discipline_pos,
                                         std::size_t year_pos, IndicatorId indicator);

struct QuartileBreakdown {
    std::string country;
    std::string discipline;
    int year = 0;
    std::optional<std::array<double, 4>> shares;  // absent without documents in quartiled journals
};

QuartileBreakdown document_breakdown(const CorpusIndex& corpus, const std::map<std::string, int>& quartiles,
                                     std::string_view country, std::string_view discipline, int year);

// Breakdown for every country with documents in every discipline-year that
// has at least four quartiled journals.
std::vector<QuartileBreakdown> quartile_breakdowns(const CorpusIndex& corpus, const ScoreTable& scores,
                                                   IndicatorId indicator, Count min_docs);

enum class ScoreKind { Raw, Standardized };

using CorrelationMatrix = std::array<std::array<std::optional<double>, kIndicatorCount>, kIndicatorCount>;

// Pearson r between indicators over matched (country, discipline, year)
// cells, pairwise complete. Entries with < 2 pairs or zero variance are absent.
CorrelationMatrix correlation_matrix(std::span<const GlobalizationScore> cells, ScoreKind kind = ScoreKind::Standardized);

// Plain Pearson coefficient; absent for < 2 points or zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

struct GroupTimeSeries {
    CountryGroup group;
    std::string discipline;
    int year = 0;
    IndicatorId indicator;
    double mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t n = 0;
};

// Unweighted mean of country scores per group, discipline and year with a
// normal-approximation 95% interval (sample standard deviation).
std::vector<GroupTimeSeries> group_series(std::span<const GlobalizationScore> cells, const CountryGroupTable& groups,
                                          IndicatorId indicator, ScoreKind kind = ScoreKind::Standardized);

// ((clamp(value) - v_min) / (v_max - v_min))^gamma
double powerlaw_normalize(double value, double v_min = 0.3, double v_max = 0.9, double gamma = 0.6);

struct MapColor {
    std::string country;
    double normalized;
};

std::vector<MapColor> map_colors(std::span<const GlobalizationScore> cells, std::string_view discipline, int year,
                                 IndicatorId indicator = IndicatorId::Euclidean);

void write_quartile_breakdown(const std::string& path, const std::vector<QuartileBreakdown>& rows);
void write_correlation_matrix(const std::string& path, const CorrelationMatrix& matrix,
                              const std::vector<IndicatorId>& indicators);
void write_group_series(const std::string& path, const std::vector<GroupTimeSeries>& rows);
void write_map_colors(const std::string& path, const std::vector<MapColor>& rows);

}  // namespace globsci
