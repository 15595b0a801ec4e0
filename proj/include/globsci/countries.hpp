#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace globsci {

enum class CountryGroup {
    AdvancedCountries,
    DevelopingAfrica,
    DevelopingAsiaPacific,
    DevelopingAmerica,
    TransitionEU,
    TransitionNonEU,
};

inline constexpr CountryGroup kAllCountryGroups[] = {
    CountryGroup::AdvancedCountries,  CountryGroup::DevelopingAfrica, CountryGroup::DevelopingAsiaPacific,
    CountryGroup::DevelopingAmerica, CountryGroup::TransitionEU,     CountryGroup::TransitionNonEU,
};

std::string_view group_name(CountryGroup group);
std::optional<CountryGroup> parse_group(std::string_view name);

// Canonical ISO 3166-1 alpha-2 code for a facet label. Accepts codes and
// English names (including common database spellings), case-insensitively.
std::optional<std::string> normalize_country(std::string_view label);

// English name for a code, or the code itself when unknown.
std::string country_name(std::string_view code);

// Labels the source uses for affiliations without a resolvable country.
bool is_undefined_country(std::string_view label);

// Dependent territories dropped at ingest. Never contains Hong Kong.
std::set<std::string> default_dependent_territories();

// Country -> group membership, keyed by ISO code.
class CountryGroupTable {
public:
    CountryGroupTable() = default;
    explicit CountryGroupTable(std::map<std::string, CountryGroup> membership);

    // The built-in IMF-derived classification (174 countries).
    static CountryGroupTable defaults();

    // Loads `country_code,group`. Throws DataError on malformed rows or a
    // country listed twice.
    static CountryGroupTable load(const std::string& path);
    void save(const std::string& path) const;

    // Accepts ISO codes or country names.
    std::optional<CountryGroup> classify(std::string_view country) const;

    std::vector<std::string> members(CountryGroup group) const;
    const std::map<std::string, CountryGroup>& membership() const noexcept { return membership_; }

private:
    std::map<std::string, CountryGroup> membership_;
};

std::optional<CountryGroup> classify_country(std::string_view country);

}  // namespace globsci
