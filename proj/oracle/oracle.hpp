#pragma once

// Straightforward reference implementation of the scoring pipeline working
// directly on the corpus CSV files. Intended for small corpora in tests.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace oracle {

struct Options {
    std::map<std::string, std::vector<std::string>> narrow_to_broad;
    bool narrow = false;
    bool broad = true;
    bool all = true;
    int min_journals = 30;
    long long min_docs = 30;
    bool strict_denominator = false;
    std::size_t max_journal_years = 200;
};

struct JournalScore {
    std::string issn;
    std::string discipline;
    int year = 0;
    std::string indicator;
    std::optional<double> value;
};

struct CellScore {
    std::string country;
    std::string discipline;
    int year = 0;
    std::string indicator;
    std::optional<double> raw;
    std::optional<double> standardized;
    bool eligible = false;
    int qualifying_journals = 0;
};

struct Result {
    std::vector<JournalScore> journals;  // sorted by issn, discipline, year, indicator order
    std::vector<CellScore> cells;        // sorted by country, discipline, year, indicator order
};

// Indicator names in output order.
const std::vector<std::string>& indicator_names();

// Reads the five corpus CSVs in `dir`. Throws std::runtime_error when the
// corpus exceeds the journal-year guard or a file is malformed.
Result run(const std::string& dir, const Options& options);

}  // namespace oracle
