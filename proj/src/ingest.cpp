#include "globsci/ingest.hpp"

#include "globsci/countries.hpp"
#include "globsci/csv.hpp"
#include "globsci/error.hpp"

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <map>

namespace globsci {

bool is_valid_issn(std::string_view issn) {
    if (issn.size() != 9 || issn[4] != '-') {
        return false;
    }
    for (std::size_t i = 0; i < 9; ++i) {
        if (i == 4) {
            continue;
        }
        const bool digit = std::isdigit(static_cast<unsigned char>(issn[i])) != 0;
        if (!digit && !(i == 8 && issn[i] == 'X')) {
            return false;
        }
    }
    return true;
}

std::string build_query(std::string_view issn, int year) {
    if (!is_valid_issn(issn)) {
        throw ValidationError("malformed ISSN '" + std::string(issn) + "' (expected dddd-ddd[dX])");
    }
    if (year < 1000 || year > 9999) {
        throw ValidationError("malformed year '" + std::to_string(year) + "' (expected four digits)");
    }
    return "ISSN(" + std::string(issn) + ") AND " + std::string(kDocTypeFilter) +
           " AND PUBYEAR = " + std::to_string(year);
}

namespace {

nlohmann::json facet_json(const FacetCounts& facet) {
    auto arr = nlohmann::json::array();
    for (const auto& [label, n] : facet) {
        arr.push_back(nlohmann::json::array({label, n}));
    }
    return arr;
}

FacetCounts facet_from_json(const nlohmann::json& j, const char* name) {
    FacetCounts out;
    if (!j.is_array()) {
        throw DataError(std::string("facet '") + name + "' is not an array");
    }
    for (const auto& item : j) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_string() || !item[1].is_number_integer()) {
            throw DataError(std::string("facet '") + name + "' entry must be [label, count]");
        }
        const auto n = item[1].get<Count>();
        if (n < 0) {
            throw DataError(std::string("facet '") + name + "' has a negative count");
        }
        out.emplace_back(item[0].get<std::string>(), n);
    }
    return out;
}

Count count_value(const nlohmann::json& v) {
    if (v.is_number_integer()) {
        return v.get<Count>();
    }
    if (v.is_string()) {
        try {
            std::size_t used = 0;
            const auto s = v.get<std::string>();
            const auto n = std::stoll(s, &used);
            if (used == s.size()) {
                return n;
            }
        } catch (const std::exception&) {
        }
    }
    throw DataError("expected a count, got " + v.dump());
}

}  // namespace

nlohmann::json to_json(const RawFacetResponse& raw) {
    nlohmann::json j;
    j["issn"] = raw.journal_id;
    j["year"] = raw.year;
    j["doc_type_filter"] = raw.doc_type_filter;
    j["reported_total"] = raw.reported_total;
    j["country_facet"] = facet_json(raw.country_facet);
    j["institution_facet"] = facet_json(raw.institution_facet);
    j["language_facet"] = facet_json(raw.language_facet);
    return j;
}

RawFacetResponse raw_from_json(const nlohmann::json& j) {
    try {
        RawFacetResponse raw;
        raw.journal_id = j.at("issn").get<std::string>();
        raw.year = j.at("year").get<int>();
        raw.doc_type_filter = j.at("doc_type_filter").get<std::string>();
        raw.reported_total = j.at("reported_total").get<Count>();
        raw.country_facet = facet_from_json(j.at("country_facet"), "country_facet");
        raw.institution_facet = facet_from_json(j.at("institution_facet"), "institution_facet");
        raw.language_facet = facet_from_json(j.at("language_facet"), "language_facet");
        if (raw.reported_total < 0) {
            throw DataError("negative reported_total");
        }
        return raw;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed raw response: ") + e.what());
    }
}

RawFacetResponse parse_search_response(std::string_view body, std::string_view issn, int year) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("search response is not JSON: ") + e.what());
    }
    const auto results = doc.find("search-results");
    if (results == doc.end() || !results->is_object()) {
        throw DataError("search response lacks 'search-results'");
    }
    RawFacetResponse raw;
    raw.journal_id = std::string(issn);
    raw.year = year;
    const auto total = results->find("opensearch:totalResults");
    raw.reported_total = total == results->end() ? 0 : count_value(*total);

    const auto facets = results->find("facet");
    if (facets != results->end() && !facets->is_null()) {
        // A single facet may come back as an object instead of a one-element array.
        const nlohmann::json list = facets->is_array() ? *facets : nlohmann::json::array({*facets});
        for (const auto& facet : list) {
            const auto name = facet.value("name", std::string{});
            FacetCounts* target = nullptr;
            if (name == "country" || name == "affilcountry") {
                target = &raw.country_facet;
            } else if (name == "af-id" || name == "affilname" || name == "affil" || name == "affiliation") {
                target = &raw.institution_facet;
            } else if (name == "language" || name == "lang") {
                target = &raw.language_facet;
            } else {
                continue;
            }
            const auto categories = facet.find("category");
            if (categories == facet.end() || categories->is_null()) {
                continue;
            }
            const nlohmann::json cats = categories->is_array() ? *categories : nlohmann::json::array({*categories});
            for (const auto& cat : cats) {
                std::string label;
                for (const char* key : {"label", "name", "@name", "value"}) {
                    if (cat.contains(key) && cat[key].is_string()) {
                        label = cat[key].get<std::string>();
                        break;
                    }
                }
                const auto hits = cat.find("hitCount");
                if (hits == cat.end()) {
                    throw DataError("facet category without hitCount");
                }
                const auto n = count_value(*hits);
                if (n < 0) {
                    throw DataError("negative facet count");
                }
                target->emplace_back(std::move(label), n);
            }
        }
    }
    return raw;
}

CleanOptions default_clean_options() { return CleanOptions{default_dependent_territories()}; }

JournalYearRecord clean(const RawFacetResponse& raw, const CleanOptions& options, CleanAudit* audit) {
    JournalYearRecord record;
    record.journal_id = raw.journal_id;
    record.year = raw.year;

    Count undefined = 0;
    std::map<std::string, Count> countries;
    for (const auto& [label, n] : raw.country_facet) {
        if (is_undefined_country(label)) {
            undefined += n;
            continue;
        }
        auto code = normalize_country(label);
        std::string key;
        if (code) {
            key = std::move(*code);
        } else {
            spdlog::warn("{} {}: unresolved country label '{}' kept verbatim", raw.journal_id, raw.year, label);
            if (audit) {
                audit->unresolved.push_back(label);
            }
            key = label;
        }
        if (key != "HK" && options.dropped_territories.count(key) > 0) {
            spdlog::info("{} {}: dropped territory {} ({} docs)", raw.journal_id, raw.year, key, n);
            if (audit) {
                audit->dropped.push_back(key);
            }
            continue;
        }
        countries[key] += n;
    }
    if (undefined > raw.reported_total) {
        throw DataError("record " + raw.journal_id + " " + std::to_string(raw.year) + " rejected: undefined-country count " +
                        std::to_string(undefined) + " exceeds total " + std::to_string(raw.reported_total));
    }
    record.total_docs = raw.reported_total - undefined;
    record.undefined_country_docs = undefined;
    record.country_counts.assign(countries.begin(), countries.end());

    std::map<std::string, Count> institutions;
    for (const auto& [label, n] : raw.institution_facet) {
        institutions[label] += n;
    }
    record.institution_counts.assign(institutions.begin(), institutions.end());

    std::map<std::string, Count> languages;
    for (const auto& [label, n] : raw.language_facet) {
        languages[label] += n;
    }
    record.language_counts.assign(languages.begin(), languages.end());
    return record;
}

RawFacetResponse to_raw(const JournalYearRecord& record) {
    RawFacetResponse raw;
    raw.journal_id = record.journal_id;
    raw.year = record.year;
    raw.reported_total = record.total_docs;
    raw.country_facet = record.country_counts;
    raw.institution_facet = record.institution_counts;
    raw.language_facet = record.language_counts;
    return raw;
}

CorpusPaths CorpusPaths::in_directory(const std::string& dir) {
    const std::filesystem::path base(dir);
    return {(base / "journals.csv").string(), (base / "journal_year_totals.csv").string(),
            (base / "journal_year_countries.csv").string(), (base / "journal_year_institutions.csv").string(),
            (base / "journal_year_languages.csv").string()};
}

std::vector<std::string> CorpusPaths::all() const { return {journals, totals, countries, institutions, languages}; }

JournalMeta parse_journal_row(std::string_view issn, std::string_view title, std::string_view publisher,
                              std::string_view narrow_codes) {
    JournalMeta meta;
    meta.journal_id = std::string(issn);
    meta.title = std::string(title);
    if (!publisher.empty()) {
        auto code = normalize_country(publisher);
        meta.publisher_country = code ? *code : std::string(publisher);
    }
    for (auto& code : csv::split(narrow_codes, ';')) {
        if (!code.empty()) {
            meta.narrow_disciplines.insert(std::move(code));
        }
    }
    return meta;
}

CorpusIndex load_corpus(const CorpusPaths& paths, const DisciplineMap& map, const LoadOptions& options) {
    const auto files = paths.all();
    const auto present = std::count_if(files.begin(), files.end(),
                                       [](const std::string& p) { return std::filesystem::exists(p); });
    CorpusIndex::Builder builder(map, options.build);
    if (present == 0) {
        spdlog::warn("no corpus files found; loading an empty corpus");
        return std::move(builder).build();
    }
    for (const auto& f : files) {
        if (!std::filesystem::exists(f)) {
            throw DataError("missing input file: " + f);
        }
    }

    auto wrap = [](csv::Reader& reader, auto&& fn) {
        try {
            fn();
        } catch (const DataError& e) {
            if (!e.file().empty()) {
                throw;
            }
            reader.fail(1, e.what());
        }
    };

    {
        csv::Reader reader(paths.journals);
        reader.expect_header({"issn", "title", "publisher_country", "narrow_codes"});
        while (reader.next()) {
            const auto issn = reader.text(0);
            if (!is_valid_issn(issn)) {
                reader.fail(1, "malformed ISSN '" + std::string(issn) + "'");
            }
            wrap(reader, [&] {
                builder.add_journal(parse_journal_row(issn, reader.text(1), reader.text(2), reader.text(3)));
            });
        }
    }
    {
        csv::Reader reader(paths.totals);
        reader.expect_header({"issn", "year", "total_docs", "undefined_docs"});
        while (reader.next()) {
            const auto year = static_cast<int>(reader.integer(1));
            const auto total = reader.count(2);
            const auto undefined = reader.count(3);
            wrap(reader, [&] { builder.add_total(reader.text(0), year, total, undefined); });
        }
    }
    auto facets = [&](const std::string& path, std::string_view label_column, auto add) {
        csv::Reader reader(path);
        reader.expect_header({"issn", "year", label_column, "doc_count"});
        while (reader.next()) {
            const auto year = static_cast<int>(reader.integer(1));
            const auto n = reader.count(3);
            wrap(reader, [&] { (builder.*add)(reader.text(0), year, reader.text(2), n); });
        }
    };
    facets(paths.countries, "country", &CorpusIndex::Builder::add_country);
    facets(paths.institutions, "institution_id", &CorpusIndex::Builder::add_institution);
    facets(paths.languages, "language", &CorpusIndex::Builder::add_language);
    return std::move(builder).build();
}

void write_journals(const std::string& path, const std::vector<JournalMeta>& journals) {
    std::vector<const JournalMeta*> sorted;
    for (const auto& j : journals) {
        sorted.push_back(&j);
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const JournalMeta* a, const JournalMeta* b) { return a->journal_id < b->journal_id; });
    csv::Writer out(path);
    out.row({"issn", "title", "publisher_country", "narrow_codes"});
    for (const auto* j : sorted) {
        std::string codes;
        for (const auto& c : j->narrow_disciplines) {
            codes += codes.empty() ? "" : ";";
            codes += c;
        }
        out.field(j->journal_id).field(j->title).field(j->publisher_country.value_or("")).field(codes).end_row();
    }
    out.close();
}

void write_records(const CorpusPaths& paths, std::vector<JournalYearRecord> records) {
    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        return a.journal_id != b.journal_id ? a.journal_id < b.journal_id : a.year < b.year;
    });
    csv::Writer totals(paths.totals);
    csv::Writer countries(paths.countries);
    csv::Writer institutions(paths.institutions);
    csv::Writer languages(paths.languages);
    totals.row({"issn", "year", "total_docs", "undefined_docs"});
    countries.row({"issn", "year", "country", "doc_count"});
    institutions.row({"issn", "year", "institution_id", "doc_count"});
    languages.row({"issn", "year", "language", "doc_count"});
    auto facet = [](csv::Writer& w, const JournalYearRecord& r, FacetCounts counts) {
        std::sort(counts.begin(), counts.end());
        for (const auto& [label, n] : counts) {
            w.field(r.journal_id).field(static_cast<std::int64_t>(r.year)).field(label).field(n).end_row();
        }
    };
    for (const auto& r : records) {
        totals.field(r.journal_id)
            .field(static_cast<std::int64_t>(r.year))
            .field(r.total_docs)
            .field(r.undefined_country_docs)
            .end_row();
        facet(countries, r, r.country_counts);
        facet(institutions, r, r.institution_counts);
        facet(languages, r, r.language_counts);
    }
    totals.close();
    countries.close();
    institutions.close();
    languages.close();
}

}  // namespace globsci
