#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace globsci {

enum class DisciplineLevel { Narrow, Broad, All };

// The synthetic discipline holding every journal.
inline constexpr std::string_view kAllDiscipline = "ALL";

inline constexpr std::string_view kBroadLife = "LIFE";
inline constexpr std::string_view kBroadPhysical = "PHYS";
inline constexpr std::string_view kBroadHealth = "HEALTH";
inline constexpr std::string_view kBroadSocial = "SOC";

std::string_view level_name(DisciplineLevel level);
// Comma-separated list of narrow|broad|all.
std::set<DisciplineLevel> parse_levels(std::string_view text);

// Narrow (ASJC major subject area) -> broad subject cluster mapping.
class DisciplineMap {
public:
    DisciplineMap() = default;
    explicit DisciplineMap(std::map<std::string, std::set<std::string>> narrow_to_broad);

    // The 27 two-digit major subject areas with their public cluster
    // assignment; Multidisciplinary (10) belongs to all four clusters.
    static DisciplineMap defaults();

    // Loads `narrow_code,broad_code`; one row per pair, so a narrow code may
    // appear on several rows.
    static DisciplineMap load(const std::string& path);
    void save(const std::string& path) const;

    // Unknown codes map to the empty set (and are logged).
    std::set<std::string> map_narrow_to_broad(std::string_view narrow_code) const;
    std::set<std::string> broad_of(const std::set<std::string>& narrow_codes) const;

    bool knows(std::string_view narrow_code) const;
    std::vector<std::string> narrow_codes() const;
    std::set<std::string> broad_codes() const;
    const std::map<std::string, std::set<std::string>>& table() const noexcept { return table_; }

private:
    std::map<std::string, std::set<std::string>> table_;
};

// Human readable name for a narrow or broad code.
std::string discipline_name(std::string_view code);

}  // namespace globsci
