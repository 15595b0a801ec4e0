#pragma once

#include "globsci/corpus_index.hpp"
#include "globsci/disciplines.hpp"
#include "globsci/types.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace support {

class TempDir {
public:
    TempDir() {
        std::string pattern = (std::filesystem::temp_directory_path() / "globsci-test-XXXXXX").string();
        path_ = ::mkdtemp(pattern.data());
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string str() const { return path_.string(); }
    std::string operator/(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

inline void spit(const std::string& path, const std::string& text) {
    std::filesystem::create_directories(std::filesystem::path(path).parent_path());
    std::ofstream(path, std::ios::binary) << text;
}

inline globsci::JournalMeta journal(std::string issn, std::set<std::string> narrow,
                                    std::optional<std::string> publisher = std::nullopt) {
    globsci::JournalMeta m;
    m.journal_id = std::move(issn);
    m.title = "Journal " + m.journal_id;
    m.publisher_country = std::move(publisher);
    m.narrow_disciplines = std::move(narrow);
    return m;
}

inline globsci::JournalYearRecord record(std::string issn, int year, globsci::Count total,
                                         globsci::FacetCounts countries, globsci::FacetCounts institutions = {},
                                         globsci::FacetCounts languages = {}, globsci::Count undefined = 0) {
    globsci::JournalYearRecord r;
    r.journal_id = std::move(issn);
    r.year = year;
    r.total_docs = total;
    r.country_counts = std::move(countries);
    r.institution_counts = std::move(institutions);
    r.language_counts = std::move(languages);
    r.undefined_country_docs = undefined;
    return r;
}

inline globsci::CorpusIndex corpus(const std::vector<globsci::JournalMeta>& journals,
                                   const std::vector<globsci::JournalYearRecord>& records, bool strict_audit = true,
                                   globsci::DisciplineMap map = globsci::DisciplineMap::defaults()) {
    globsci::CorpusIndex::Builder builder(std::move(map), globsci::BuildOptions{strict_audit});
    for (const auto& j : journals) {
        builder.add_journal(j);
    }
    for (const auto& r : records) {
        builder.add_record(r);
    }
    return std::move(builder).build();
}

}  // namespace support
