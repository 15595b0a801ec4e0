#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace globsci {

using Count = std::int64_t;

// (label, count) pairs. Labels are ISO alpha-2 codes for countries once cleaned.
using FacetCounts = std::vector<std::pair<std::string, Count>>;

struct JournalMeta {
    std::string journal_id;  // ISSN, AAAA-BBBB
    std::string title;
    std::optional<std::string> publisher_country;
    std::set<std::string> narrow_disciplines;
    std::set<std::string> broad_disciplines;
};

// Cleaned authorship facets for one journal-year.
struct JournalYearRecord {
    std::string journal_id;
    int year = 0;
    Count total_docs = 0;
    FacetCounts country_counts;
    FacetCounts institution_counts;
    FacetCounts language_counts;
    Count undefined_country_docs = 0;

    bool operator==(const JournalYearRecord&) const = default;
};

enum class IndicatorId : std::uint8_t {
    Euclidean,
    Cosine,
    GiniSimpson,
    LargestContributorsSurplus,
    InstitutionalDiversity,
    EnglishDocuments,
    LocalAuthors,
};

inline constexpr std::size_t kIndicatorCount = 7;

inline constexpr std::array<IndicatorId, kIndicatorCount> kAllIndicators = {
    IndicatorId::Euclidean,
    IndicatorId::Cosine,
    IndicatorId::GiniSimpson,
    IndicatorId::LargestContributorsSurplus,
    IndicatorId::InstitutionalDiversity,
    IndicatorId::EnglishDocuments,
    IndicatorId::LocalAuthors,
};

enum class Orientation : std::uint8_t { Minimizing, Maximizing };

struct IndicatorSpec {
    IndicatorId id;
    std::string_view name;
    Orientation orientation;
    bool requires_benchmark;
    bool requires_publisher_country;

    // +1 for maximizing, -1 for minimizing indicators.
    int alpha() const noexcept { return orientation == Orientation::Minimizing ? -1 : 1; }
};

const IndicatorSpec& indicator_spec(IndicatorId id);
std::string_view indicator_name(IndicatorId id);
std::optional<IndicatorId> parse_indicator(std::string_view name);

constexpr std::size_t index_of(IndicatorId id) noexcept { return static_cast<std::size_t>(id); }

}  // namespace globsci
