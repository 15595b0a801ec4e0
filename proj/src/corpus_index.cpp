#include "globsci/corpus_index.hpp"

#include "globsci/error.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <limits>
#include <numeric>

namespace globsci {

Dictionary::Dictionary(std::vector<std::string> sorted_unique) : names_(std::move(sorted_unique)) {
    ids_.reserve(names_.size());
    for (std::uint32_t i = 0; i < names_.size(); ++i) {
        ids_.emplace(names_[i], i);
    }
}

std::optional<std::uint32_t> Dictionary::find(std::string_view name) const {
    const auto it = ids_.find(name);
    if (it == ids_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<std::uint32_t> CorpusIndex::journal_index(std::string_view issn) const {
    const auto it = journal_ids_.find(std::string(issn));
    if (it == journal_ids_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::span<const PackedRecord> CorpusIndex::records_of(std::uint32_t journal) const {
    const auto begin = journal_record_begin_[journal];
    const auto end = journal_record_begin_[journal + 1];
    return {records_.data() + begin, end - begin};
}

const PackedRecord* CorpusIndex::find_record(std::uint32_t journal, int year) const {
    const auto span = records_of(journal);
    const auto it = std::lower_bound(span.begin(), span.end(), year,
                                     [](const PackedRecord& r, int y) { return r.year < y; });
    if (it == span.end() || it->year != year) {
        return nullptr;
    }
    return &*it;
}

Count CorpusIndex::english_docs(const PackedRecord& r) const {
    if (!english_id_) {
        return 0;
    }
    for (const auto& e : languages(r)) {
        if (e.id == *english_id_) {
            return e.count;
        }
    }
    return 0;
}

std::optional<std::size_t> CorpusIndex::discipline_index(std::string_view code) const {
    const auto it = std::lower_bound(disciplines_.begin(), disciplines_.end(), code,
                                     [](const Discipline& d, std::string_view c) { return d.code < c; });
    if (it == disciplines_.end() || it->code != code) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - disciplines_.begin());
}

std::vector<std::size_t> CorpusIndex::disciplines_at(const std::set<DisciplineLevel>& levels) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < disciplines_.size(); ++i) {
        if (levels.count(disciplines_[i].level) > 0) {
            out.push_back(i);
        }
    }
    return out;
}

const std::vector<Count>& CorpusIndex::country_totals(std::size_t discipline, int year) const {
    const auto it = std::lower_bound(years_.begin(), years_.end(), year);
    if (it == years_.end() || *it != year) {
        return zero_totals_;
    }
    return totals_.at(discipline)[static_cast<std::size_t>(it - years_.begin())];
}

DisciplineCountryTotals CorpusIndex::discipline_country_totals(std::size_t discipline, int year) const {
    return {disciplines_.at(discipline).code, year, country_totals(discipline, year)};
}

JournalYearRecord CorpusIndex::unpack(const PackedRecord& r) const {
    JournalYearRecord out;
    out.journal_id = journals_[r.journal].journal_id;
    out.year = r.year;
    out.total_docs = r.total_docs;
    out.undefined_country_docs = r.undefined_docs;
    for (const auto& e : countries(r)) {
        out.country_counts.emplace_back(countries_.name(e.id), e.count);
    }
    for (const auto& e : institutions(r)) {
        out.institution_counts.emplace_back(institutions_.name(e.id), e.count);
    }
    for (const auto& e : languages(r)) {
        out.language_counts.emplace_back(languages_.name(e.id), e.count);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::uint32_t CorpusIndex::Builder::Interner::intern(std::string_view s) {
    const auto it = ids.find(std::string(s));
    if (it != ids.end()) {
        return it->second;
    }
    const auto id = static_cast<std::uint32_t>(names.size());
    names.emplace_back(s);
    ids.emplace(names.back(), id);
    return id;
}

CorpusIndex::Builder::Builder(DisciplineMap map, BuildOptions options)
    : map_(std::move(map)), options_(options) {}

void CorpusIndex::Builder::add_journal(JournalMeta meta) {
    const auto id = static_cast<std::uint32_t>(journals_.size());
    if (!journal_ids_.emplace(meta.journal_id, id).second) {
        throw DataError("duplicate journal " + meta.journal_id);
    }
    meta.broad_disciplines = map_.broad_of(meta.narrow_disciplines);
    for (const auto& code : meta.narrow_disciplines) {
        if (!map_.knows(code)) {
            spdlog::warn("journal {} lists unknown narrow discipline '{}'", meta.journal_id, code);
        }
    }
    journals_.push_back(std::move(meta));
}

void CorpusIndex::Builder::add_total(std::string_view issn, int year, Count total_docs, Count undefined_docs) {
    const auto it = journal_ids_.find(std::string(issn));
    if (it == journal_ids_.end()) {
        throw DataError("unknown journal " + std::string(issn));
    }
    if (total_docs < 0 || undefined_docs < 0) {
        throw DataError("negative document count for " + std::string(issn) + " " + std::to_string(year));
    }
    const std::uint64_t key = (static_cast<std::uint64_t>(it->second) << 32) | static_cast<std::uint32_t>(year);
    const auto id = static_cast<std::uint32_t>(records_.size());
    if (!record_ids_.emplace(key, id).second) {
        throw DataError("duplicate journal-year " + std::string(issn) + " " + std::to_string(year));
    }
    PackedRecord r;
    r.journal = it->second;
    r.year = year;
    r.total_docs = total_docs;
    r.undefined_docs = undefined_docs;
    records_.push_back(r);
}

std::uint32_t CorpusIndex::Builder::record_of(std::string_view issn, int year) {
    const auto it = journal_ids_.find(std::string(issn));
    if (it == journal_ids_.end()) {
        throw DataError("unknown journal " + std::string(issn));
    }
    const std::uint64_t key = (static_cast<std::uint64_t>(it->second) << 32) | static_cast<std::uint32_t>(year);
    if (key == last_key_) {
        return last_record_;
    }
    const auto rit = record_ids_.find(key);
    if (rit == record_ids_.end()) {
        throw DataError("no total row for " + std::string(issn) + " " + std::to_string(year));
    }
    last_key_ = key;
    last_record_ = rit->second;
    return rit->second;
}

void CorpusIndex::Builder::add_facet(std::vector<Row>& rows, Interner& interner, std::string_view issn, int year,
                                     std::string_view label, Count count, const char* what) {
    if (count < 0 || count > std::numeric_limits<std::uint32_t>::max()) {
        throw DataError(std::string(what) + " count out of range for " + std::string(issn));
    }
    const auto record = record_of(issn, year);
    rows.push_back({record, interner.intern(label), static_cast<std::uint32_t>(count)});
}

void CorpusIndex::Builder::add_country(std::string_view issn, int year, std::string_view country, Count count) {
    add_facet(country_rows_, countries_, issn, year, country, count, "country");
}

void CorpusIndex::Builder::add_institution(std::string_view issn, int year, std::string_view institution,
                                           Count count) {
    add_facet(institution_rows_, institutions_, issn, year, institution, count, "institution");
}

void CorpusIndex::Builder::add_language(std::string_view issn, int year, std::string_view language, Count count) {
    add_facet(language_rows_, languages_, issn, year, language, count, "language");
}

void CorpusIndex::Builder::add_record(const JournalYearRecord& record) {
    add_total(record.journal_id, record.year, record.total_docs, record.undefined_country_docs);
    for (const auto& [label, n] : record.country_counts) {
        add_country(record.journal_id, record.year, label, n);
    }
    for (const auto& [label, n] : record.institution_counts) {
        add_institution(record.journal_id, record.year, label, n);
    }
    for (const auto& [label, n] : record.language_counts) {
        add_language(record.journal_id, record.year, label, n);
    }
}

namespace {

// Sorted dictionary plus old-id -> new-id remap.
std::pair<Dictionary, std::vector<std::uint32_t>> finalize_dictionary(std::vector<std::string> names) {
    std::vector<std::uint32_t> order(names.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return names[a] < names[b]; });
    std::vector<std::uint32_t> remap(names.size());
    std::vector<std::string> sorted;
    sorted.reserve(names.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) {
        remap[order[i]] = i;
        sorted.push_back(std::move(names[order[i]]));
    }
    return {Dictionary(std::move(sorted)), std::move(remap)};
}

}  // namespace

CorpusIndex CorpusIndex::Builder::build() && {
    CorpusIndex index;
    index.discipline_map_ = map_;

    for (const auto& meta : journals_) {
        if (meta.publisher_country) {
            countries_.intern(*meta.publisher_country);
        }
    }

    // Records ordered by (journal, year).
    std::vector<std::uint32_t> order(records_.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        const auto& ra = records_[a];
        const auto& rb = records_[b];
        return ra.journal != rb.journal ? ra.journal < rb.journal : ra.year < rb.year;
    });
    std::vector<std::uint32_t> record_remap(records_.size());
    index.records_.reserve(records_.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) {
        record_remap[order[i]] = i;
        index.records_.push_back(records_[order[i]]);
    }
    records_.clear();
    records_.shrink_to_fit();
    record_ids_.clear();

    auto layout = [&](std::vector<Row>& rows, Interner& interner, Dictionary& dict, std::vector<FacetEntry>& entries,
                      std::uint64_t PackedRecord::*begin, std::uint64_t PackedRecord::*end, const char* what) {
        auto [d, remap] = finalize_dictionary(std::move(interner.names));
        interner.ids.clear();
        dict = std::move(d);
        for (auto& row : rows) {
            row.record = record_remap[row.record];
            row.label = remap[row.label];
        }
        std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
            return a.record != b.record ? a.record < b.record : a.label < b.label;
        });
        entries.reserve(rows.size());
        std::size_t i = 0;
        for (std::uint32_t rec = 0; rec < index.records_.size(); ++rec) {
            auto& r = index.records_[rec];
            r.*begin = entries.size();
            for (; i < rows.size() && rows[i].record == rec; ++i) {
                if (!entries.empty() && entries.size() > r.*begin && entries.back().id == rows[i].label) {
                    throw DataError(std::string("duplicate ") + what + " row '" + dict.name(rows[i].label) +
                                    "' for " + journals_[r.journal].journal_id + " " + std::to_string(r.year));
                }
                entries.push_back({rows[i].label, rows[i].count});
            }
            r.*end = entries.size();
        }
        rows.clear();
        rows.shrink_to_fit();
    };
    layout(country_rows_, countries_, index.countries_, index.country_entries_, &PackedRecord::country_begin,
           &PackedRecord::country_end, "country");
    layout(institution_rows_, institutions_, index.institutions_, index.institution_entries_,
           &PackedRecord::institution_begin, &PackedRecord::institution_end, "institution");
    layout(language_rows_, languages_, index.languages_, index.language_entries_, &PackedRecord::language_begin,
           &PackedRecord::language_end, "language");
    index.english_id_ = index.languages_.find(kEnglish);

    index.journal_record_begin_.assign(journals_.size() + 1, 0);
    for (const auto& r : index.records_) {
        ++index.journal_record_begin_[r.journal + 1];
    }
    std::partial_sum(index.journal_record_begin_.begin(), index.journal_record_begin_.end(),
                     index.journal_record_begin_.begin());

    index.publisher_ids_.reserve(journals_.size());
    for (const auto& meta : journals_) {
        index.publisher_ids_.push_back(meta.publisher_country ? index.countries_.find(*meta.publisher_country)
                                                              : std::nullopt);
    }

    // Disciplines: every narrow and broad code in use, plus ALL.
    std::map<std::string, Discipline> disciplines;
    for (std::uint32_t j = 0; j < journals_.size(); ++j) {
        for (const auto& code : journals_[j].narrow_disciplines) {
            auto& d = disciplines.try_emplace(code, Discipline{code, DisciplineLevel::Narrow, {}}).first->second;
            d.journals.push_back(j);
        }
        for (const auto& code : journals_[j].broad_disciplines) {
            auto& d = disciplines.try_emplace(code, Discipline{code, DisciplineLevel::Broad, {}}).first->second;
            d.journals.push_back(j);
        }
        auto& all = disciplines
                        .try_emplace(std::string(kAllDiscipline),
                                     Discipline{std::string(kAllDiscipline), DisciplineLevel::All, {}})
                        .first->second;
        all.journals.push_back(j);
    }
    for (auto& [_, d] : disciplines) {
        index.disciplines_.push_back(std::move(d));
    }

    for (const auto& r : index.records_) {
        index.years_.push_back(r.year);
    }
    std::sort(index.years_.begin(), index.years_.end());
    index.years_.erase(std::unique(index.years_.begin(), index.years_.end()), index.years_.end());

    const auto n_countries = index.countries_.size();
    index.zero_totals_.assign(n_countries, 0);
    index.totals_.resize(index.disciplines_.size());
    for (std::size_t d = 0; d < index.disciplines_.size(); ++d) {
        auto& per_year = index.totals_[d];
        per_year.assign(index.years_.size(), std::vector<Count>(n_countries, 0));
        for (const auto j : index.disciplines_[d].journals) {
            for (const auto& r : index.records_of(j)) {
                const auto y = static_cast<std::size_t>(
                    std::lower_bound(index.years_.begin(), index.years_.end(), r.year) - index.years_.begin());
                for (const auto& e : index.countries(r)) {
                    per_year[y][e.id] += e.count;
                }
            }
        }
    }

    // Whole-counting audit.
    for (const auto& r : index.records_) {
        const auto& issn = journals_[r.journal].journal_id;
        const auto country_span = index.countries(r);
        Count country_sum = 0;
        for (const auto& e : country_span) {
            country_sum += e.count;
        }
        if (r.total_docs > 0 && !country_span.empty() && r.total_docs > country_sum) {
            index.audit_.push_back({issn, r.year,
                                    "total_docs " + std::to_string(r.total_docs) + " exceeds country count sum " +
                                        std::to_string(country_sum)});
        }
        for (const auto& e : index.languages(r)) {
            if (e.count > r.total_docs + r.undefined_docs) {
                index.audit_.push_back({issn, r.year,
                                        "language '" + index.languages_.name(e.id) + "' count " +
                                            std::to_string(e.count) + " exceeds pre-cleaning total"});
            }
        }
    }
    if (!index.audit_.empty()) {
        for (const auto& issue : index.audit_) {
            spdlog::warn("audit: {} {}: {}", issue.journal_id, issue.year, issue.message);
        }
        if (options_.strict_audit) {
            const auto& first = index.audit_.front();
            throw DataError("ingest audit failed (" + std::to_string(index.audit_.size()) + " issues), first: " +
                            first.journal_id + " " + std::to_string(first.year) + ": " + first.message);
        }
    }

    index.journals_ = std::move(journals_);
    index.journal_ids_ = std::move(journal_ids_);
    return index;
}

}  // namespace globsci
