#pragma once

#include "globsci/disciplines.hpp"
#include "globsci/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace globsci {

// Immutable string <-> dense id table. Ids follow lexicographic order of the
// strings, so sorting by id is sorting by label.
class Dictionary {
public:
    Dictionary() = default;
    explicit Dictionary(std::vector<std::string> sorted_unique);

    std::optional<std::uint32_t> find(std::string_view name) const;
    const std::string& name(std::uint32_t id) const { return names_[id]; }
    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string_view, std::uint32_t> ids_;
};

struct FacetEntry {
    std::uint32_t id;
    std::uint32_t count;
};

struct PackedRecord {
    std::uint32_t journal = 0;
    int year = 0;
    Count total_docs = 0;
    Count undefined_docs = 0;
    std::uint64_t country_begin = 0, country_end = 0;
    std::uint64_t institution_begin = 0, institution_end = 0;
    std::uint64_t language_begin = 0, language_end = 0;
};

struct Discipline {
    std::string code;
    DisciplineLevel level;
    std::vector<std::uint32_t> journals;  // ascending journal index
};

// N_{c,d,y} for one discipline-year, dense over country ids.
struct DisciplineCountryTotals {
    std::string discipline;
    int year = 0;
    std::vector<Count> totals;
};

// Audit findings raised while indexing.
struct AuditIssue {
    std::string journal_id;
    int year = 0;
    std::string message;
};

// The loaded corpus: journal metadata, cleaned journal-year facets and the
// discipline-country totals derived from them.
class CorpusIndex {
public:
    class Builder;

    CorpusIndex() = default;

    const std::vector<JournalMeta>& journals() const noexcept { return journals_; }
    std::optional<std::uint32_t> journal_index(std::string_view issn) const;

    const std::vector<PackedRecord>& records() const noexcept { return records_; }
    // Records of one journal, ascending by year.
    std::span<const PackedRecord> records_of(std::uint32_t journal) const;
    const PackedRecord* find_record(std::uint32_t journal, int year) const;

    std::span<const FacetEntry> countries(const PackedRecord& r) const {
        return {country_entries_.data() + r.country_begin, r.country_end - r.country_begin};
    }
    std::span<const FacetEntry> institutions(const PackedRecord& r) const {
        return {institution_entries_.data() + r.institution_begin, r.institution_end - r.institution_begin};
    }
    std::span<const FacetEntry> languages(const PackedRecord& r) const {
        return {language_entries_.data() + r.language_begin, r.language_end - r.language_begin};
    }

    // N_{ENG,j,y}; zero when the record has no English entry.
    Count english_docs(const PackedRecord& r) const;
    // Country id of the journal's publisher, absent when unknown.
    std::optional<std::uint32_t> publisher_country(std::uint32_t journal) const {
        return publisher_ids_[journal];
    }

    const Dictionary& country_dict() const noexcept { return countries_; }
    const Dictionary& institution_dict() const noexcept { return institutions_; }
    const Dictionary& language_dict() const noexcept { return languages_; }

    const std::vector<Discipline>& disciplines() const noexcept { return disciplines_; }
    std::optional<std::size_t> discipline_index(std::string_view code) const;
    // Disciplines of the requested levels, in code order.
    std::vector<std::size_t> disciplines_at(const std::set<DisciplineLevel>& levels) const;

    // Distinct years with at least one record, ascending.
    const std::vector<int>& years() const noexcept { return years_; }

    // Empty vector of zeros for years without records.
    const std::vector<Count>& country_totals(std::size_t discipline, int year) const;
    DisciplineCountryTotals discipline_country_totals(std::size_t discipline, int year) const;

    const DisciplineMap& discipline_map() const noexcept { return discipline_map_; }
    const std::vector<AuditIssue>& audit_issues() const noexcept { return audit_; }

    // String-keyed view of a packed record.
    JournalYearRecord unpack(const PackedRecord& r) const;

    std::size_t facet_row_count() const noexcept {
        return country_entries_.size() + institution_entries_.size() + language_entries_.size();
    }

private:
    std::vector<JournalMeta> journals_;
    std::unordered_map<std::string, std::uint32_t> journal_ids_;
    std::vector<std::optional<std::uint32_t>> publisher_ids_;
    std::vector<PackedRecord> records_;
    std::vector<std::uint64_t> journal_record_begin_;  // size journals + 1
    std::vector<FacetEntry> country_entries_;
    std::vector<FacetEntry> institution_entries_;
    std::vector<FacetEntry> language_entries_;
    Dictionary countries_;
    Dictionary institutions_;
    Dictionary languages_;
    std::optional<std::uint32_t> english_id_;
    std::vector<Discipline> disciplines_;
    std::vector<int> years_;
    // [discipline][year position] -> dense totals
    std::vector<std::vector<std::vector<Count>>> totals_;
    std::vector<Count> zero_totals_;
    DisciplineMap discipline_map_;
    std::vector<AuditIssue> audit_;
};

struct BuildOptions {
    // Whole-counting audit: T <= sum of country counts, language counts bounded
    // by the pre-cleaning total. Violations throw DataError when strict.
    bool strict_audit = true;
};

// Incremental construction; rows may arrive in any order. Labels are taken
// verbatim (cleaning happens upstream).
class CorpusIndex::Builder {
public:
    explicit Builder(DisciplineMap map, BuildOptions options = {});

    // Throws DataError on a duplicate ISSN.
    void add_journal(JournalMeta meta);
    // Throws DataError on an unknown ISSN or duplicate (issn, year).
    void add_total(std::string_view issn, int year, Count total_docs, Count undefined_docs);
    // Facet rows require a prior add_total for the same (issn, year).
    void add_country(std::string_view issn, int year, std::string_view country, Count count);
    void add_institution(std::string_view issn, int year, std::string_view institution, Count count);
    void add_language(std::string_view issn, int year, std::string_view language, Count count);

    void add_record(const JournalYearRecord& record);

    CorpusIndex build() &&;

private:
    struct Row {
        std::uint32_t record;
        std::uint32_t label;
        std::uint32_t count;
    };
    struct Interner {
        std::unordered_map<std::string, std::uint32_t> ids;
        std::vector<std::string> names;
        std::uint32_t intern(std::string_view s);
    };

    std::uint32_t record_of(std::string_view issn, int year);
    void add_facet(std::vector<Row>& rows, Interner& interner, std::string_view issn, int year,
                   std::string_view label, Count count, const char* what);

    DisciplineMap map_;
    BuildOptions options_;
    std::vector<JournalMeta> journals_;
    std::unordered_map<std::string, std::uint32_t> journal_ids_;
    std::vector<PackedRecord> records_;
    std::unordered_map<std::uint64_t, std::uint32_t> record_ids_;
    std::uint64_t last_key_ = ~0ull;
    std::uint32_t last_record_ = 0;
    std::vector<Row> country_rows_, institution_rows_, language_rows_;
    Interner countries_, institutions_, languages_;
};

inline constexpr std::string_view kEnglish = "English";

}  // namespace globsci
