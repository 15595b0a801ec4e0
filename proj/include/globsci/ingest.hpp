#pragma once

#include "globsci/corpus_index.hpp"
#include "globsci/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace globsci {

inline constexpr std::string_view kDocTypeFilter = "DOCTYPE(AR OR RE OR CP)";

// True for `dddd-ddd[dX]`.
bool is_valid_issn(std::string_view issn);

// `ISSN(<issn>) AND DOCTYPE(AR OR RE OR CP) AND PUBYEAR = <year>`.
// Throws ValidationError naming the offending value.
std::string build_query(std::string_view issn, int year);

// Facet counts for one journal-year as returned by the search service.
struct RawFacetResponse {
    std::string journal_id;
    int year = 0;
    std::string doc_type_filter{kDocTypeFilter};
    FacetCounts country_facet;
    FacetCounts institution_facet;
    FacetCounts language_facet;
    Count reported_total = 0;

    bool operator==(const RawFacetResponse&) const = default;
};

nlohmann::json to_json(const RawFacetResponse& raw);
RawFacetResponse raw_from_json(const nlohmann::json& j);

// Parses a search-service response body (`search-results` with `facet`
// arrays) into a RawFacetResponse for the given journal-year.
RawFacetResponse parse_search_response(std::string_view body, std::string_view issn, int year);

struct CleanOptions {
    std::set<std::string> dropped_territories;  // ISO codes; Hong Kong is never dropped
};

CleanOptions default_clean_options();

// Audit trail of a clean() call.
struct CleanAudit {
    std::vector<std::string> dropped;     // territory codes removed
    std::vector<std::string> unresolved;  // labels kept verbatim
};

// Removes the undefined-country facet (subtracting it from the total), drops
// dependent territories (total unchanged) and normalizes labels to ISO codes.
// Facet rows that normalize to the same code are summed. Throws DataError
// when the total would go negative.
JournalYearRecord clean(const RawFacetResponse& raw, const CleanOptions& options = default_clean_options(),
                        CleanAudit* audit = nullptr);

// Inverse view used to re-clean a record: the cleaned total becomes the
// reported total and there is no undefined facet.
RawFacetResponse to_raw(const JournalYearRecord& record);

// File names of the corpus CSV set inside a directory.
struct CorpusPaths {
    std::string journals;
    std::string totals;
    std::string countries;
    std::string institutions;
    std::string languages;

    static CorpusPaths in_directory(const std::string& dir);
    std::vector<std::string> all() const;
};

struct LoadOptions {
    BuildOptions build;
};

// Reads the five corpus CSVs. Missing files are treated as empty only when
// every file is missing (an empty corpus); otherwise each must exist.
CorpusIndex load_corpus(const CorpusPaths& paths, const DisciplineMap& map, const LoadOptions& options = {});

JournalMeta parse_journal_row(std::string_view issn, std::string_view title, std::string_view publisher,
                              std::string_view narrow_codes);

void write_journals(const std::string& path, const std::vector<JournalMeta>& journals);

// Writes records (sorted by issn, year) into the four journal-year CSVs.
void write_records(const CorpusPaths& paths, std::vector<JournalYearRecord> records);

}  // namespace globsci
