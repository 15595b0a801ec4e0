#include "globsci/disciplines.hpp"

#include "globsci/csv.hpp"
#include "globsci/error.hpp"

#include <spdlog/spdlog.h>

#include <utility>

namespace globsci {

namespace {

struct NarrowRow {
    const char* code;
    const char* name;
    std::string_view broad;
};

constexpr NarrowRow kNarrow[] = {
    {"10", "Multidisciplinary", ""},
    {"11", "Agricultural and Biological Sciences", kBroadLife},
    {"12", "Arts and Humanities", kBroadSocial},
    {"13", "Biochemistry, Genetics and Molecular Biology", kBroadLife},
    {"14", "Business, Management and Accounting", kBroadSocial},
    {"15", "Chemical Engineering", kBroadPhysical},
    {"16", "Chemistry", kBroadPhysical},
    {"17", "Computer Science", kBroadPhysical},
    {"18", "Decision Sciences", kBroadSocial},
    {"19", "Earth and Planetary Sciences", kBroadPhysical},
    {"20", "Economics, Econometrics and Finance", kBroadSocial},
    {"21", "Energy", kBroadPhysical},
    {"22", "Engineering", kBroadPhysical},
    {"23", "Environmental Science", kBroadPhysical},
    {"24", "Immunology and Microbiology", kBroadLife},
    {"25", "Materials Science", kBroadPhysical},
    {"26", "Mathematics", kBroadPhysical},
    {"27", "Medicine", kBroadHealth},
    {"28", "Neuroscience", kBroadLife},
    {"29", "Nursing", kBroadHealth},
    {"30", "Pharmacology, Toxicology and Pharmaceutics", kBroadLife},
    {"31", "Physics and Astronomy", kBroadPhysical},
    {"32", "Psychology", kBroadSocial},
    {"33", "Social Sciences", kBroadSocial},
    {"34", "Veterinary", kBroadHealth},
    {"35", "Dentistry", kBroadHealth},
    {"36", "Health Professions", kBroadHealth},
};

}  // namespace

std::string_view level_name(DisciplineLevel level) {
    switch (level) {
        case DisciplineLevel::Narrow: return "narrow";
        case DisciplineLevel::Broad: return "broad";
        case DisciplineLevel::All: return "all";
    }
    return "unknown";
}

std::set<DisciplineLevel> parse_levels(std::string_view text) {
    std::set<DisciplineLevel> levels;
    for (const auto& part : csv::split(text, ',')) {
        if (part == "narrow") {
            levels.insert(DisciplineLevel::Narrow);
        } else if (part == "broad") {
            levels.insert(DisciplineLevel::Broad);
        } else if (part == "all") {
            levels.insert(DisciplineLevel::All);
        } else {
            throw ValidationError("unknown discipline level '" + part + "' (expected narrow, broad or all)");
        }
    }
    if (levels.empty()) {
        throw ValidationError("no discipline level given");
    }
    return levels;
}

DisciplineMap::DisciplineMap(std::map<std::string, std::set<std::string>> narrow_to_broad)
    : table_(std::move(narrow_to_broad)) {}

DisciplineMap DisciplineMap::defaults() {
    std::map<std::string, std::set<std::string>> table;
    for (const auto& row : kNarrow) {
        if (row.broad.empty()) {
            table[row.code] = {std::string(kBroadHealth), std::string(kBroadLife), std::string(kBroadPhysical),
                               std::string(kBroadSocial)};
        } else {
            table[row.code] = {std::string(row.broad)};
        }
    }
    return DisciplineMap(std::move(table));
}

DisciplineMap DisciplineMap::load(const std::string& path) {
    csv::Reader reader(path);
    reader.expect_header({"narrow_code", "broad_code"});
    std::map<std::string, std::set<std::string>> table;
    while (reader.next()) {
        const std::string narrow(reader.text(0));
        const std::string broad(reader.text(1));
        if (narrow.empty()) {
            reader.fail(1, "empty narrow code");
        }
        if (broad.empty()) {
            reader.fail(2, "empty broad code");
        }
        if (broad == kAllDiscipline) {
            reader.fail(2, "'ALL' is not a broad cluster");
        }
        table[narrow].insert(broad);
    }
    return DisciplineMap(std::move(table));
}

void DisciplineMap::save(const std::string& path) const {
    csv::Writer writer(path);
    writer.row({"narrow_code", "broad_code"});
    for (const auto& [narrow, broads] : table_) {
        for (const auto& broad : broads) {
            writer.field(narrow).field(broad).end_row();
        }
    }
    writer.close();
}

std::set<std::string> DisciplineMap::map_narrow_to_broad(std::string_view narrow_code) const {
    const auto it = table_.find(std::string(narrow_code));
    if (it == table_.end()) {
        spdlog::debug("narrow discipline '{}' has no broad cluster", narrow_code);
        return {};
    }
    return it->second;
}

std::set<std::string> DisciplineMap::broad_of(const std::set<std::string>& narrow_codes) const {
    std::set<std::string> out;
    for (const auto& code : narrow_codes) {
        const auto broad = map_narrow_to_broad(code);
        out.insert(broad.begin(), broad.end());
    }
    return out;
}

bool DisciplineMap::knows(std::string_view narrow_code) const { return table_.count(std::string(narrow_code)) > 0; }

std::vector<std::string> DisciplineMap::narrow_codes() const {
    std::vector<std::string> out;
    for (const auto& [code, _] : table_) {
        out.push_back(code);
    }
    return out;
}

std::set<std::string> DisciplineMap::broad_codes() const {
    std::set<std::string> out;
    for (const auto& [_, broads] : table_) {
        out.insert(broads.begin(), broads.end());
    }
    return out;
}

std::string discipline_name(std::string_view code) {
    if (code == kAllDiscipline) return "All";
    if (code == kBroadLife) return "Life Sciences";
    if (code == kBroadPhysical) return "Physical Sciences";
    if (code == kBroadHealth) return "Health Sciences";
    if (code == kBroadSocial) return "Social Sciences";
    for (const auto& row : kNarrow) {
        if (code == row.code) {
            return row.name;
        }
    }
    return std::string(code);
}

}  // namespace globsci
