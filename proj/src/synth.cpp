#include "globsci/synth.hpp"

#include "globsci/countries.hpp"
#include "globsci/csv.hpp"
#include "globsci/error.hpp"
#include "globsci/ingest.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

namespace globsci {

namespace {

// Large producers first; the remainder follows the group table order.
constexpr const char* kLeadingCountries[] = {
    "US", "CN", "GB", "DE", "JP", "FR", "IT", "IN", "CA", "ES", "AU", "KR", "BR", "RU", "NL", "PL", "IR", "CH",
    "TR", "SE", "TW", "BE", "MX", "CZ", "DK", "AT", "PT", "IL", "FI", "GR", "MY", "NO", "ZA", "EG", "SG", "AR",
    "NZ", "IE", "SA", "TH", "ID", "PK", "HU", "RO", "UA", "CL", "CO", "NG", "HK", "SK",
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) with 53 random bits; identical across standard libraries.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int integer(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(uniform() * static_cast<double>(hi - lo + 1));
    }
    bool chance(double p) { return uniform() < p; }

    // Index drawn from a cumulative distribution.
    std::size_t pick(const std::vector<double>& cdf) {
        const double u = uniform() * cdf.back();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        return std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
    }

private:
    std::mt19937_64 engine_;
};

std::vector<double> cumulative(const std::vector<double>& weights) {
    std::vector<double> cdf(weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        cdf[i] = acc;
    }
    return cdf;
}

std::vector<double> zipf(int n, double exponent) {
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        w[static_cast<std::size_t>(k)] = 1.0 / std::pow(static_cast<double>(k + 1), exponent);
    }
    return w;
}

std::string synth_issn(int k) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%04d", 1000 + k / 10000, k % 10000);
    return buf;
}

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError(std::string(name) + " must lie in [0, 1]");
    }
}

}  // namespace

std::vector<std::string> synth_country_codes(int n_countries) {
    std::vector<std::string> codes(std::begin(kLeadingCountries), std::end(kLeadingCountries));
    const auto table = CountryGroupTable::defaults();
    for (const auto group : kAllCountryGroups) {
        for (const auto& code : table.members(group)) {
            if (std::find(codes.begin(), codes.end(), code) == codes.end()) {
                codes.push_back(code);
            }
        }
    }
    if (n_countries < 0 || static_cast<std::size_t>(n_countries) > codes.size()) {
        throw ValidationError("n_countries must be between 1 and " + std::to_string(codes.size()));
    }
    codes.resize(static_cast<std::size_t>(n_countries));
    return codes;
}

void SynthConfig::validate() const {
    if (n_countries < 1) {
        throw ValidationError("n_countries must be at least 1");
    }
    synth_country_codes(n_countries);
    if (n_journals < 1 || n_journals > 99999999) {
        throw ValidationError("n_journals must be between 1 and 99999999");
    }
    if (first_year > last_year) {
        throw ValidationError("first_year must not exceed last_year");
    }
    if (!country_weights.empty()) {
        if (country_weights.size() != static_cast<std::size_t>(n_countries)) {
            throw ValidationError("country_weights must have n_countries entries");
        }
        for (const double w : country_weights) {
            if (!(w > 0.0)) {
                throw ValidationError("country_weights must be positive");
            }
        }
    }
    if (country_zipf < 0.0 || institution_zipf < 0.0) {
        throw ValidationError("zipf exponents must be non-negative");
    }
    check_probability(locality_min, "locality_min");
    check_probability(locality_max, "locality_max");
    check_probability(multi_country_rate, "multi_country_rate");
    check_probability(english_min, "english_min");
    check_probability(english_max, "english_max");
    check_probability(missing_publisher_rate, "missing_publisher_rate");
    check_probability(undefined_rate, "undefined_rate");
    check_probability(second_discipline_rate, "second_discipline_rate");
    if (locality_min > locality_max || english_min > english_max) {
        throw ValidationError("range minimum exceeds maximum");
    }
    if (docs_min < 0 || docs_min > docs_max) {
        throw ValidationError("need 0 <= docs_min <= docs_max");
    }
    if (institutions_per_country < 1) {
        throw ValidationError("institutions_per_country must be at least 1");
    }
    if (publisher_rule != "home" && publisher_rule != "random") {
        throw ValidationError("publisher_rule must be 'home' or 'random'");
    }
    if (narrow_codes.empty()) {
        throw ValidationError("narrow_codes must not be empty");
    }
}

SynthConfig synth_config_from_json(const nlohmann::json& j) {
    SynthConfig c;
    if (!j.is_object()) {
        throw ValidationError("synth config must be a JSON object");
    }
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "seed") c.seed = value.get<std::uint64_t>();
            else if (key == "n_countries") c.n_countries = value.get<int>();
            else if (key == "n_journals") c.n_journals = value.get<int>();
            else if (key == "first_year") c.first_year = value.get<int>();
            else if (key == "last_year") c.last_year = value.get<int>();
            else if (key == "country_weights") c.country_weights = value.get<std::vector<double>>();
            else if (key == "country_zipf") c.country_zipf = value.get<double>();
            else if (key == "locality_min") c.locality_min = value.get<double>();
            else if (key == "locality_max") c.locality_max = value.get<double>();
            else if (key == "locality") c.locality_min = c.locality_max = value.get<double>();
            else if (key == "multi_country_rate") c.multi_country_rate = value.get<double>();
            else if (key == "docs_min") c.docs_min = value.get<int>();
            else if (key == "docs_max") c.docs_max = value.get<int>();
            else if (key == "institutions_per_country") c.institutions_per_country = value.get<int>();
            else if (key == "institution_zipf") c.institution_zipf = value.get<double>();
            else if (key == "english_min") c.english_min = value.get<double>();
            else if (key == "english_max") c.english_max = value.get<double>();
            else if (key == "publisher_rule") c.publisher_rule = value.get<std::string>();
            else if (key == "missing_publisher_rate") c.missing_publisher_rate = value.get<double>();
            else if (key == "undefined_rate") c.undefined_rate = value.get<double>();
            else if (key == "narrow_codes") c.narrow_codes = value.get<std::vector<std::string>>();
            else if (key == "second_discipline_rate") c.second_discipline_rate = value.get<double>();
            else throw ValidationError("unknown synth config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad synth config value: ") + e.what());
    }
    c.validate();
    return c;
}

nlohmann::json to_json(const SynthConfig& c) {
    return {{"seed", c.seed},
            {"n_countries", c.n_countries},
            {"n_journals", c.n_journals},
            {"first_year", c.first_year},
            {"last_year", c.last_year},
            {"country_weights", c.country_weights},
            {"country_zipf", c.country_zipf},
            {"locality_min", c.locality_min},
            {"locality_max", c.locality_max},
            {"multi_country_rate", c.multi_country_rate},
            {"docs_min", c.docs_min},
            {"docs_max", c.docs_max},
            {"institutions_per_country", c.institutions_per_country},
            {"institution_zipf", c.institution_zipf},
            {"english_min", c.english_min},
            {"english_max", c.english_max},
            {"publisher_rule", c.publisher_rule},
            {"missing_publisher_rate", c.missing_publisher_rate},
            {"undefined_rate", c.undefined_rate},
            {"narrow_codes", c.narrow_codes},
            {"second_discipline_rate", c.second_discipline_rate}};
}

SynthConfig load_synth_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open synth config: " + path);
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path, 1, 1, std::string("invalid JSON: ") + e.what());
    }
    return synth_config_from_json(j);
}

void generate(const SynthConfig& config, const std::function<void(const JournalMeta&)>& on_journal,
              const std::function<void(const JournalYearRecord&)>& on_record) {
    config.validate();
    Rng rng(config.seed);
    const auto codes = synth_country_codes(config.n_countries);
    const auto n_countries = codes.size();
    const auto country_cdf =
        cumulative(config.country_weights.empty() ? zipf(config.n_countries, config.country_zipf) : config.country_weights);
    const auto institution_cdf = cumulative(zipf(config.institutions_per_country, config.institution_zipf));
    const auto ipc = static_cast<std::size_t>(config.institutions_per_country);

    // Institution labels sorted per country: "<CC>-I<k>" with zero padding.
    std::vector<std::string> institution_labels(n_countries * ipc);
    for (std::size_t c = 0; c < n_countries; ++c) {
        for (std::size_t k = 0; k < ipc; ++k) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%s-I%04zu", codes[c].c_str(), k + 1);
            institution_labels[c * ipc + k] = buf;
        }
    }
    // Emit facets in label order.
    std::vector<std::size_t> country_order(n_countries);
    for (std::size_t i = 0; i < n_countries; ++i) {
        country_order[i] = i;
    }
    std::sort(country_order.begin(), country_order.end(), [&](auto a, auto b) { return codes[a] < codes[b]; });
    std::vector<std::size_t> institution_order(n_countries * ipc);
    for (std::size_t i = 0; i < institution_order.size(); ++i) {
        institution_order[i] = i;
    }
    std::sort(institution_order.begin(), institution_order.end(),
              [&](auto a, auto b) { return institution_labels[a] < institution_labels[b]; });

    std::vector<Count> country_counts(n_countries);
    std::vector<Count> institution_counts(n_countries * ipc);

    for (int k = 0; k < config.n_journals; ++k) {
        JournalMeta meta;
        meta.journal_id = synth_issn(k);
        meta.title = "Synthetic Journal " + std::to_string(k + 1);
        const auto home = rng.pick(country_cdf);
        const double locality = rng.uniform(config.locality_min, config.locality_max);
        const double english = rng.uniform(config.english_min, config.english_max);
        const double size = rng.uniform(static_cast<double>(config.docs_min), static_cast<double>(config.docs_max));
        const bool missing_publisher = rng.chance(config.missing_publisher_rate);
        const auto publisher = config.publisher_rule == "home" ? home : rng.pick(country_cdf);
        if (!missing_publisher) {
            meta.publisher_country = codes[publisher];
        }
        const auto n_codes = static_cast<int>(config.narrow_codes.size());
        meta.narrow_disciplines.insert(config.narrow_codes[static_cast<std::size_t>(rng.integer(0, n_codes - 1))]);
        if (rng.chance(config.second_discipline_rate)) {
            meta.narrow_disciplines.insert(config.narrow_codes[static_cast<std::size_t>(rng.integer(0, n_codes - 1))]);
        }
        on_journal(meta);

        auto draw_country = [&] { return rng.chance(locality) ? home : rng.pick(country_cdf); };

        for (int year = config.first_year; year <= config.last_year; ++year) {
            const double jitter = rng.uniform(0.8, 1.2);
            const int docs = std::clamp(static_cast<int>(std::lround(size * jitter)), config.docs_min, config.docs_max);
            std::fill(country_counts.begin(), country_counts.end(), 0);
            std::fill(institution_counts.begin(), institution_counts.end(), 0);
            Count total = 0;
            Count undefined = 0;
            Count english_docs = 0;
            for (int doc = 0; doc < docs; ++doc) {
                if (rng.chance(config.undefined_rate)) {
                    ++undefined;
                    continue;
                }
                ++total;
                const auto first = draw_country();
                ++country_counts[first];
                ++institution_counts[first * ipc + rng.pick(institution_cdf)];
                if (rng.chance(config.multi_country_rate)) {
                    const auto second = draw_country();
                    if (second != first) {
                        ++country_counts[second];
                        ++institution_counts[second * ipc + rng.pick(institution_cdf)];
                    }
                }
                if (rng.chance(english)) {
                    ++english_docs;
                }
            }
            JournalYearRecord record;
            record.journal_id = meta.journal_id;
            record.year = year;
            record.total_docs = total;
            record.undefined_country_docs = undefined;
            for (const auto c : country_order) {
                if (country_counts[c] > 0) {
                    record.country_counts.emplace_back(codes[c], country_counts[c]);
                }
            }
            for (const auto i : institution_order) {
                if (institution_counts[i] > 0) {
                    record.institution_counts.emplace_back(institution_labels[i], institution_counts[i]);
                }
            }
            if (english_docs > 0) {
                record.language_counts.emplace_back("English", english_docs);
            }
            if (total - english_docs > 0) {
                record.language_counts.emplace_back("Other", total - english_docs);
            }
            on_record(record);
        }
    }
}

SynthCorpus generate(const SynthConfig& config) {
    SynthCorpus corpus;
    generate(
        config, [&](const JournalMeta& m) { corpus.journals.push_back(m); },
        [&](const JournalYearRecord& r) { corpus.records.push_back(r); });
    return corpus;
}

std::size_t generate_to_directory(const SynthConfig& config, const std::string& dir) {
    config.validate();
    std::filesystem::create_directories(dir);
    const auto paths = CorpusPaths::in_directory(dir);
    csv::Writer journals(paths.journals);
    csv::Writer totals(paths.totals);
    csv::Writer countries(paths.countries);
    csv::Writer institutions(paths.institutions);
    csv::Writer languages(paths.languages);
    journals.row({"issn", "title", "publisher_country", "narrow_codes"});
    totals.row({"issn", "year", "total_docs", "undefined_docs"});
    countries.row({"issn", "year", "country", "doc_count"});
    institutions.row({"issn", "year", "institution_id", "doc_count"});
    languages.row({"issn", "year", "language", "doc_count"});
    std::size_t facet_rows = 0;
    auto facet = [&](csv::Writer& w, const JournalYearRecord& r, const FacetCounts& counts) {
        for (const auto& [label, n] : counts) {
            w.field(r.journal_id).field(static_cast<std::int64_t>(r.year)).field(label).field(n).end_row();
        }
        facet_rows += counts.size();
    };
    generate(
        config,
        [&](const JournalMeta& m) {
            std::string codes;
            for (const auto& c : m.narrow_disciplines) {
                codes += codes.empty() ? "" : ";";
                codes += c;
            }
            journals.field(m.journal_id).field(m.title).field(m.publisher_country.value_or("")).field(codes).end_row();
        },
        [&](const JournalYearRecord& r) {
            totals.field(r.journal_id)
                .field(static_cast<std::int64_t>(r.year))
                .field(r.total_docs)
                .field(r.undefined_country_docs)
                .end_row();
            facet(countries, r, r.country_counts);
            facet(institutions, r, r.institution_counts);
            facet(languages, r, r.language_counts);
        });
    journals.close();
    totals.close();
    countries.close();
    institutions.close();
    languages.close();
    return facet_rows;
}

}  // namespace globsci
