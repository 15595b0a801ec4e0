#pragma once

#include "globsci/corpus_index.hpp"
#include "globsci/types.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace globsci {

struct ShareEntry {
    std::uint32_t id;
    double share;

    bool operator==(const ShareEntry&) const = default;
};

// Country shares sorted by ascending id. A missing id means share 0.
using ShareVector = std::vector<ShareEntry>;

struct DisciplineBenchmark {
    std::string discipline;
    ShareVector shares;  // m_{c,d}, ids from the corpus country dictionary
    int first_year = 0;
    int last_year = 0;
};

// x_{c,j,y} = N_{c,j,y} / T_{j,y}. Requires total > 0.
ShareVector journal_shares(std::span<const FacetEntry> country_counts, Count total);

// Pooled multi-year country shares of a discipline. Throws DataError when the
// discipline has no journal-year with documents.
DisciplineBenchmark build_benchmark(const CorpusIndex& corpus, std::size_t discipline);

// Pure indicator functions. Vector arguments are sorted by id; operations run
// over the union of ids with missing entries taken as 0.
double euclidean_distance(std::span<const ShareEntry> x, std::span<const ShareEntry> m);
std::optional<double> cosine_similarity(std::span<const ShareEntry> x, std::span<const ShareEntry> m);
std::optional<double> gini_simpson(std::span<const FacetEntry> country_counts);
// Top three contributors by share (ties: smaller id first), only x_c > 0.
std::optional<double> largest_contributors_surplus(std::span<const ShareEntry> x, std::span<const ShareEntry> m);
// Top three institutions by count (ties: smaller id first) over T.
std::optional<double> institutional_diversity(std::span<const FacetEntry> institution_counts, Count total);
std::optional<double> english_share(Count english_docs, Count total);
std::optional<double> local_authors_share(std::span<const FacetEntry> country_counts, Count total,
                                          std::optional<std::uint32_t> publisher_country);

inline constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

using IndicatorValues = std::array<double, kIndicatorCount>;  // NaN = undefined

// All seven indicators for one journal-year against a benchmark.
IndicatorValues score_record(const CorpusIndex& corpus, const PackedRecord& record, const DisciplineBenchmark& benchmark);

// One journal-discipline-year-indicator cell.
struct IndicatorScore {
    std::string journal_id;
    std::string discipline;
    int year = 0;
    IndicatorId indicator;
    double value = 0.0;
    bool defined = false;
};

struct ScoreRow {
    std::uint32_t record;  // index into corpus.records()
    IndicatorValues values;
};

// Indicator values for every (discipline, year, journal) with a record,
// grouped by discipline-year.
class ScoreTable {
public:
    const std::vector<std::size_t>& disciplines() const noexcept { return disciplines_; }
    const std::vector<int>& years() const noexcept { return years_; }
    const std::map<std::size_t, DisciplineBenchmark>& benchmarks() const noexcept { return benchmarks_; }

    // Rows of one discipline-year in ascending journal order.
    std::span<const ScoreRow> rows(std::size_t discipline_pos, std::size_t year_pos) const;
    std::size_t row_count() const noexcept { return rows_.size(); }

    // Records whose English share exceeded 1.
    const std::vector<std::uint32_t>& english_anomalies() const noexcept { return english_anomalies_; }

    std::vector<IndicatorScore> expand(const CorpusIndex& corpus) const;

private:
    friend ScoreTable score_all(const CorpusIndex&, const std::vector<std::size_t>&, const std::vector<int>&,
                                std::map<std::size_t, DisciplineBenchmark>, int);
    std::vector<std::size_t> disciplines_;
    std::vector<int> years_;
    std::map<std::size_t, DisciplineBenchmark> benchmarks_;
    std::vector<ScoreRow> rows_;
    std::vector<std::size_t> offsets_;  // (discipline_pos * years + year_pos) -> begin; size cells + 1
    std::vector<std::uint32_t> english_anomalies_;
};

// Builds benchmarks for the given disciplines (in parallel).
std::map<std::size_t, DisciplineBenchmark> build_benchmarks(const CorpusIndex& corpus,
                                                            const std::vector<std::size_t>& disciplines, int workers);

// Throws DataError when a discipline lacks a benchmark.
ScoreTable score_all(const CorpusIndex& corpus, const std::vector<std::size_t>& disciplines,
                     const std::vector<int>& years, std::map<std::size_t, DisciplineBenchmark> benchmarks,
                     int workers = 1);

// journal_scores.csv: issn,discipline,year,indicator,value,defined
void write_journal_scores(const std::string& path, const CorpusIndex& corpus, const ScoreTable& table,
                          const std::vector<IndicatorId>& indicators);

// benchmarks.csv: discipline,country,share
void write_benchmarks(const std::string& path, const CorpusIndex& corpus,
                      const std::map<std::size_t, DisciplineBenchmark>& benchmarks);

}  // namespace globsci
