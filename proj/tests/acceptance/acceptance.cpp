#include "globsci/aggregate.hpp"
#include "globsci/cli.hpp"
#include "globsci/error.hpp"
#include "globsci/harvest.hpp"
#include "globsci/indicators.hpp"
#include "globsci/ingest.hpp"
#include "globsci/report.hpp"
#include "globsci/synth.hpp"
#include "oracle_compare.hpp"
#include "support.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

using namespace globsci;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int precision = 4) {
    std::ostringstream s;
    s.precision(precision);
    s << v;
    return s.str();
}

CorpusIndex build(const SynthConfig& config) {
    const auto s = generate(config);
    return support::corpus(s.journals, s.records);
}

std::vector<ShareEntry> shares(const CorpusIndex& corpus, const std::map<std::string, double>& values) {
    std::vector<ShareEntry> out;
    for (const auto& [code, v] : values) {
        out.push_back({*corpus.country_dict().find(code), v});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return out;
}

std::vector<FacetEntry> counts(std::initializer_list<std::uint32_t> values) {
    std::vector<FacetEntry> out;
    std::uint32_t id = 0;
    for (const auto v : values) {
        out.push_back({id++, v});
    }
    return out;
}

Verdict oracle_equivalence() {
    Verdict v;
    const auto start = Clock::now();
    std::size_t cells = 0;
    for (std::uint64_t seed = 1; seed <= 200 && v.pass; ++seed) {
        std::mt19937_64 rng(seed * 7919);
        auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
        SynthConfig config;
        config.seed = seed;
        config.n_journals = pick(1, 50);
        config.n_countries = pick(1, 10);
        const int years = std::min(pick(1, 5), 200 / config.n_journals);
        config.first_year = 2000;
        config.last_year = 2000 + years - 1;
        config.institutions_per_country = static_cast<std::size_t>(pick(1, 8));
        config.locality_min = pick(0, 5) / 10.0;
        config.locality_max = config.locality_min + pick(0, 5) / 10.0;
        config.multi_country_rate = pick(0, 5) / 10.0;
        config.docs_min = pick(1, 30);
        config.docs_max = config.docs_min + pick(0, 60);
        config.missing_publisher_rate = pick(0, 3) / 10.0;
        config.publisher_rule = pick(0, 1) ? "home" : "random";

        support::TempDir dir;
        generate_to_directory(config, dir.str());
        PipelineConfig pipeline;
        pipeline.levels = {DisciplineLevel::Narrow, DisciplineLevel::Broad, DisciplineLevel::All};
        pipeline.eligibility = {pick(1, 6), pick(1, 40)};
        pipeline.strict_denominator = pick(0, 1) == 1;
        const auto corpus = load_corpus(CorpusPaths::in_directory(dir.str()), DisciplineMap::defaults());
        const auto actual = run_pipeline(corpus, pipeline);
        const auto expected = oracle::run(dir.str(), support::oracle_options(pipeline));
        const auto problems = support::compare_with_oracle(expected, corpus, actual, 1e-12);
        v.require(problems.empty(), "seed " + std::to_string(seed) + ": " + (problems.empty() ? "" : problems.front()));
        cells += expected.cells.size() + expected.journals.size();
    }
    const double elapsed = seconds_since(start);
    v.require(elapsed < 60.0, "took " + fmt(elapsed) + " s");
    if (v.pass) {
        v.detail = "200 corpora, " + std::to_string(cells) + " scores matched within 1e-12 in " + fmt(elapsed, 3) + " s";
    }
    return v;
}

Verdict closed_form() {
    Verdict v;
    constexpr double tol = 1e-12;
    auto near = [&](std::optional<double> got, double want, const std::string& what) {
        v.require(got && std::abs(*got - want) <= tol, what + " = " + (got ? fmt(*got, 17) : "undefined"));
    };
    const auto corpus = support::corpus(
        {support::journal("0000-0001", {"11"}, "DE")},
        {support::record("0000-0001", 2000, 5, {{"A", 1}, {"B", 1}, {"C", 1}, {"DE", 1}, {"FR", 1}})});

    const auto a75 = shares(corpus, {{"A", 0.75}, {"B", 0.25}});
    const auto half = shares(corpus, {{"A", 0.5}, {"B", 0.5}});
    const auto a1 = shares(corpus, {{"A", 1.0}});
    const auto b1 = shares(corpus, {{"B", 1.0}});
    near(euclidean_distance(half, half), 0.0, "euclidean identity");
    near(euclidean_distance(a75, half), std::sqrt(0.125), "euclidean example");
    near(euclidean_distance(a1, b1), std::sqrt(2.0), "euclidean disjoint");
    near(cosine_similarity(half, half), 1.0, "cosine identity");
    near(cosine_similarity(a1, b1), 0.0, "cosine orthogonal");
    near(cosine_similarity(shares(corpus, {{"A", 2.0}, {"B", 2.0}}), half), 1.0, "cosine scale");
    near(gini_simpson(counts({10})), 0.0, "gini single");
    near(gini_simpson(counts({5, 5})), 0.5, "gini pair");
    near(gini_simpson(counts({6, 3, 1})), 0.54, "gini triple");
    near(largest_contributors_surplus(half, half), 0.0, "lcs identity");
    near(largest_contributors_surplus(shares(corpus, {{"A", 0.8}, {"B", 0.2}}),
                                      shares(corpus, {{"A", 0.1}, {"B", 0.3}, {"C", 0.6}})),
         0.6, "lcs example");
    near(largest_contributors_surplus(a1, a1), 0.0, "lcs single");
    near(institutional_diversity(counts({6, 4}), 10), 1.0, "diversity pair");
    near(institutional_diversity(std::vector<FacetEntry>(100, FacetEntry{0, 1}), 100), 0.03, "diversity spread");
    near(institutional_diversity(counts({10, 5, 5, 0, 0}), 20), 1.0, "diversity top three");
    near(english_share(35, 35), 1.0, "english all");
    near(english_share(0, 35), 0.0, "english none");
    near(english_share(9, 10), 0.9, "english nine");
    const auto de = *corpus.country_dict().find("DE");
    const auto fr = *corpus.country_dict().find("FR");
    const std::vector<FacetEntry> de_fr{{de, 15}, {fr, 15}};
    near(local_authors_share(de_fr, 30, de), 0.5, "local example");
    near(local_authors_share(std::vector<FacetEntry>{{fr, 30}}, 30, de), 0.0, "local absent");
    v.require(!local_authors_share(de_fr, 30, std::nullopt), "local without publisher");

    const auto single = support::corpus({support::journal("0000-0002", {"11"}, "DE")},
                                        {support::record("0000-0002", 2000, 4, {{"A", 3}, {"B", 1}})});
    const auto life = *single.discipline_index("LIFE");
    const auto m = build_benchmark(single, life);
    v.require(m.shares == shares(single, {{"A", 0.75}, {"B", 0.25}}), "benchmark example");
    const auto values = score_record(single, single.records().front(), m);
    near(values[static_cast<std::size_t>(IndicatorId::Euclidean)], 0.0, "self benchmark euclidean");

    const auto empty = support::corpus({support::journal("0000-0003", {"11"}, "DE")},
                                       {support::record("0000-0003", 2000, 0, {})}, false);
    const auto undefined = score_record(empty, empty.records().front(), m);
    v.require(std::all_of(undefined.begin(), undefined.end(), [](double x) { return std::isnan(x); }),
              "T=0 gives undefined indicators");

    near(standardize_value(0.4, {IndicatorId::Cosine, 0.1, 0.4, Orientation::Maximizing}), 1.0, "max at g_max");
    near(standardize_value(0.1, {IndicatorId::Euclidean, 0.1, 0.4, Orientation::Minimizing}), 1.0, "min at g_min");
    near(standardize_value(0.2, {IndicatorId::Euclidean, 0.1, 0.4, Orientation::Minimizing}), 2.0 / 3.0,
         "min middle");
    near(powerlaw_normalize(0.3), 0.0, "powerlaw floor");
    if (v.pass) {
        v.detail = "all indicator, benchmark and standardization examples exact within 1e-12";
    }
    return v;
}

Verdict standardization_contract() {
    Verdict v;
    std::size_t checked = 0;
    for (std::uint64_t seed = 1; seed <= 50 && v.pass; ++seed) {
        SynthConfig config;
        config.seed = 1000 + seed;
        config.n_journals = 60;
        config.n_countries = 10;
        config.first_year = 2001;
        config.last_year = 2003;
        config.locality_min = 0.0;
        config.locality_max = 0.9;
        const auto corpus = build(config);
        PipelineConfig pipeline;
        pipeline.eligibility = {4, 20};
        const auto result = run_pipeline(corpus, pipeline);
        for (const auto id : kAllIndicators) {
            std::vector<std::pair<double, double>> pairs;
            for (const auto& c : result.globalization) {
                if (c.indicator == id && c.standardized) {
                    pairs.emplace_back(*c.raw, *c.standardized);
                }
            }
            if (pairs.size() < 2) {
                continue;
            }
            const auto label = "seed " + std::to_string(seed) + " " + std::string(indicator_name(id));
            std::sort(pairs.begin(), pairs.end());
            if (pairs.front().first == pairs.back().first) {
                continue;
            }
            double lo = 2;
            double hi = -1;
            for (const auto& p : pairs) {
                lo = std::min(lo, p.second);
                hi = std::max(hi, p.second);
            }
            v.require(std::abs(lo) <= 1e-12 && std::abs(hi - 1.0) <= 1e-12, label + ": range " + fmt(lo) + ".." + fmt(hi));
            const bool minimizing = indicator_spec(id).orientation == Orientation::Minimizing;
            for (std::size_t i = 1; i < pairs.size(); ++i) {
                const double step = pairs[i].second - pairs[i - 1].second;
                if (pairs[i].first == pairs[i - 1].first) {
                    v.require(step == 0.0, label + ": tied raw values differ");
                } else {
                    v.require(minimizing ? step < 0.0 : step > 0.0, label + ": rank order broken");
                }
            }
            ++checked;
        }
    }
    v.require(checked >= 50, "only " + std::to_string(checked) + " indicator sets had two eligible cells");
    if (v.pass) {
        v.detail = std::to_string(checked) + " seed-indicator sets span [0,1] with matching rank order";
    }
    return v;
}

CorpusIndex boundary_corpus(int journals, int short_journals) {
    std::vector<JournalMeta> metas;
    std::vector<JournalYearRecord> records;
    for (int j = 0; j < journals; ++j) {
        char issn[10];
        std::snprintf(issn, sizeof issn, "1000-%04d", j);
        metas.push_back(support::journal(issn, {"11"}, "AA"));
        const Count total = j < short_journals ? 29 : 30;
        records.push_back(support::record(issn, 2005, total, {{"AA", 10}, {"BB", total - 10 + j % 3}}));
    }
    return support::corpus(metas, records);
}

Verdict eligibility_boundary() {
    Verdict v;
    auto standardized = [](const CorpusIndex& corpus, const std::string& country) {
        const auto result = run_pipeline(corpus, PipelineConfig{});
        bool any = false;
        bool all = true;
        for (const auto& c : result.globalization) {
            if (c.country == country) {
                any = any || c.standardized.has_value();
                all = all && (!c.standardized || c.eligible);
            }
        }
        return std::make_pair(any, all);
    };
    const auto at29 = standardized(boundary_corpus(29, 0), "AA");
    const auto at30 = standardized(boundary_corpus(30, 0), "AA");
    const auto thin = standardized(boundary_corpus(35, 7), "AA");
    v.require(!at29.first, "29 journals produced a standardized score");
    v.require(at30.first, "30 journals produced no standardized score");
    v.require(!thin.first, "35 journals with 28 large enough produced a standardized score");
    v.require(at29.second && at30.second && thin.second, "standardized score on an ineligible cell");
    if (v.pass) {
        v.detail = "29 journals absent, 30 present, 28 of 35 above the document floor absent";
    }
    return v;
}

Verdict counting_invariants() {
    Verdict v;
    std::size_t disciplines = 0;
    std::size_t journal_years = 0;
    for (std::uint64_t seed = 1; seed <= 20 && v.pass; ++seed) {
        SynthConfig config;
        config.seed = 500 + seed;
        config.n_journals = 80;
        config.multi_country_rate = 0.5;
        const auto corpus = build(config);
        for (const auto d : corpus.disciplines_at({DisciplineLevel::Narrow, DisciplineLevel::Broad,
                                                   DisciplineLevel::All})) {
            const auto m = build_benchmark(corpus, d);
            double sum = 0;
            for (const auto& e : m.shares) {
                sum += e.share;
            }
            v.require(std::abs(sum - 1.0) <= 1e-9, "benchmark sum " + fmt(sum, 17) + " for " + m.discipline);
            ++disciplines;
        }
        for (const auto& r : corpus.records()) {
            if (r.total_docs == 0) {
                continue;
            }
            double sum = 0;
            for (const auto& e : journal_shares(corpus.countries(r), r.total_docs)) {
                sum += e.share;
            }
            v.require(sum >= 1.0 - 1e-12, "journal share sum " + fmt(sum, 17));
            ++journal_years;
        }
    }
    bool rejected = false;
    try {
        support::corpus({support::journal("0000-0001", {"11"}, "DE")},
                        {support::record("0000-0001", 2000, 10, {{"DE", 4}, {"FR", 3}})});
    } catch (const DataError&) {
        rejected = true;
    }
    v.require(rejected, "country sum below the total passed the audit");
    support::TempDir dir;
    const auto paths = CorpusPaths::in_directory(dir.str());
    write_journals(paths.journals, {support::journal("0000-0001", {"11"}, "DE")});
    write_records(paths, {support::record("0000-0001", 2000, 10, {{"DE", 4}})});
    rejected = false;
    try {
        load_corpus(paths, DisciplineMap::defaults());
    } catch (const DataError&) {
        rejected = true;
    }
    v.require(rejected, "loading a violating corpus passed the audit");
    if (v.pass) {
        v.detail = std::to_string(disciplines) + " benchmarks sum to 1, " + std::to_string(journal_years) +
                   " journal-years have share sum >= 1, violations rejected";
    }
    return v;
}

Verdict report_checks() {
    Verdict v;
    std::mt19937_64 rng(17);
    for (std::size_t n = 4; n <= 100; ++n) {
        std::vector<JournalValue> journals;
        for (std::size_t i = 0; i < n; ++i) {
            char issn[10];
            std::snprintf(issn, sizeof issn, "2000-%04zu", i);
            journals.push_back({issn, std::uniform_real_distribution<double>(0, 1)(rng), 10});
        }
        std::array<int, 4> sizes{};
        for (const auto& [_, q] : quartile_split(journals)) {
            ++sizes.at(static_cast<std::size_t>(q - 1));
        }
        const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
        v.require(*hi - *lo <= 1, "n=" + std::to_string(n) + " quartile sizes differ by " + std::to_string(*hi - *lo));
    }
    std::size_t breakdowns = 0;
    std::size_t matrices = 0;
    for (std::uint64_t seed = 1; seed <= 10 && v.pass; ++seed) {
        SynthConfig config;
        config.seed = 300 + seed;
        config.n_journals = 60;
        config.n_countries = 10;
        config.locality_min = 0.0;
        config.locality_max = 1.0;
        const auto corpus = build(config);
        PipelineConfig pipeline;
        pipeline.eligibility = {3, 10};
        const auto result = run_pipeline(corpus, pipeline);
        for (const auto& b : quartile_breakdowns(corpus, result.scores, IndicatorId::Euclidean, 1)) {
            if (b.shares) {
                const double sum = (*b.shares)[0] + (*b.shares)[1] + (*b.shares)[2] + (*b.shares)[3];
                v.require(std::abs(sum - 1.0) <= 1e-9, "breakdown sum " + fmt(sum, 17));
                ++breakdowns;
            }
        }
        for (const auto kind : {ScoreKind::Standardized, ScoreKind::Raw}) {
            const auto matrix = correlation_matrix(result.globalization, kind);
            for (std::size_t i = 0; i < kIndicatorCount; ++i) {
                v.require(matrix[i][i] && std::abs(*matrix[i][i] - 1.0) <= 1e-12, "diagonal not 1");
                for (std::size_t j = 0; j < kIndicatorCount; ++j) {
                    v.require(matrix[i][j] == matrix[j][i], "matrix not symmetric");
                }
            }
            ++matrices;
        }
    }
    const double p = powerlaw_normalize(0.6);
    v.require(std::abs(p - std::pow(0.5, 0.6)) <= 1e-12, "powerlaw(0.6) = " + fmt(p, 17));
    if (v.pass) {
        v.detail = "n=4..100 balanced, " + std::to_string(breakdowns) + " breakdowns sum to 1, " +
                   std::to_string(matrices) + " matrices symmetric with unit diagonal, powerlaw exact";
    }
    return v;
}

std::pair<double, double> locality_means(std::uint64_t seed, double locality) {
    SynthConfig config;
    config.seed = seed;
    config.n_journals = 40;
    config.n_countries = 10;
    config.first_year = 2001;
    config.last_year = 2002;
    config.locality_min = config.locality_max = locality;
    const auto corpus = build(config);
    const auto ds = corpus.disciplines_at({DisciplineLevel::All});
    const auto table = score_all(corpus, ds, corpus.years(), build_benchmarks(corpus, ds, 1), 1);
    double euclid = 0;
    double gini = 0;
    std::size_t ne = 0;
    std::size_t ng = 0;
    for (const auto& s : table.expand(corpus)) {
        if (!s.defined) {
            continue;
        }
        if (s.indicator == IndicatorId::Euclidean) {
            euclid += s.value;
            ++ne;
        } else if (s.indicator == IndicatorId::GiniSimpson) {
            gini += s.value;
            ++ng;
        }
    }
    return {euclid / static_cast<double>(ne), gini / static_cast<double>(ng)};
}

double paired_t(const std::vector<double>& d) {
    const double n = static_cast<double>(d.size());
    double mean = 0;
    for (const double x : d) mean += x;
    mean /= n;
    double ss = 0;
    for (const double x : d) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (n - 1));
    return sd == 0 ? std::numeric_limits<double>::infinity() * (mean > 0 ? 1 : -1) : mean / (sd / std::sqrt(n));
}

Verdict locality_monotonicity() {
    Verdict v;
    constexpr double critical = 2.3646;  // one-sided t, alpha 0.01, df 99
    std::vector<double> euclid;
    std::vector<double> gini;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto high = locality_means(seed, 0.9);
        const auto low = locality_means(seed, 0.1);
        euclid.push_back(high.first - low.first);
        gini.push_back(low.second - high.second);
    }
    const double te = paired_t(euclid);
    const double tg = paired_t(gini);
    v.require(te > critical, "euclidean t = " + fmt(te));
    v.require(tg > critical, "gini_simpson t = " + fmt(tg));
    v.detail = "100 seeds, euclidean t = " + fmt(te) + ", gini_simpson t = " + fmt(tg) + " (critical " +
               fmt(critical, 5) + ")";
    return v;
}

int cli(const std::vector<std::string>& args) {
    std::vector<std::string> owned{"globsci", "--log-level", "off"};
    owned.insert(owned.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : owned) {
        argv.push_back(a.data());
    }
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::map<std::string, std::string> snapshot(const std::string& dir) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file()) {
            files[entry.path().filename().string()] = support::slurp(entry.path().string());
        }
    }
    return files;
}

Verdict determinism_performance() {
    Verdict v;
    const int workers = std::max(4u, std::thread::hardware_concurrency());
    {
        support::TempDir work;
        SynthConfig config;
        config.seed = 77;
        config.n_journals = 400;
        config.n_countries = 30;
        generate_to_directory(config, work / "corpus");
        const std::vector<std::string> base{"--min-journals", "5", "--level", "narrow,broad,all", "--input",
                                            work / "corpus", "--out", work / "out"};
        auto with = [&](int w) {
            auto args = base;
            args.insert(args.end(), {"--workers", std::to_string(w), "all"});
            return args;
        };
        v.require(cli(with(1)) == 0, "single worker run failed");
        const auto one = snapshot(work / "out");
        fs::remove_all(work / "out");
        v.require(cli(with(workers)) == 0, "parallel run failed");
        v.require(snapshot(work / "out") == one, "outputs differ between 1 and " + std::to_string(workers) + " workers");
        v.require(one.size() == 9, "expected 9 output files");
    }
    support::TempDir work;
    SynthConfig config;
    config.seed = 2024;
    config.n_journals = 35000;
    config.n_countries = 60;
    config.first_year = 1996;
    config.last_year = 2008;
    config.docs_min = 10;
    config.docs_max = 50;
    config.institutions_per_country = 8;
    config.locality_min = 0.1;
    config.locality_max = 0.9;
    const auto rows = generate_to_directory(config, work / "corpus");
    const auto start = Clock::now();
    v.require(cli({"--workers", std::to_string(workers), "--input", work / "corpus", "--out", work / "out", "all"}) == 0,
              "large run failed");
    const double elapsed = seconds_since(start);
    v.require(elapsed < 300.0, "large run took " + fmt(elapsed) + " s");
    if (v.pass) {
        v.detail = "outputs identical for 1 and " + std::to_string(workers) + " workers; 35000 journals x 13 years, " +
                   std::to_string(rows) + " facet rows in " + fmt(elapsed, 3) + " s";
    }
    return v;
}

Verdict query_and_clean() {
    Verdict v;
    v.require(build_query("0028-0836", 2005) == "ISSN(0028-0836) AND DOCTYPE(AR OR RE OR CP) AND PUBYEAR = 2005",
              "query text " + build_query("0028-0836", 2005));
    v.require(build_query("1234-567X", 1996) == "ISSN(1234-567X) AND DOCTYPE(AR OR RE OR CP) AND PUBYEAR = 1996",
              "query with check digit X");
    bool rejected = false;
    try {
        build_query("12345", 2017);
    } catch (const ValidationError&) {
        rejected = true;
    }
    v.require(rejected, "malformed ISSN accepted");

    Count reported = 0;
    Count cleaned = 0;
    Count undefined = 0;
    for (int i = 0; i < 100; ++i) {
        RawFacetResponse raw;
        raw.journal_id = "3000-0001";
        raw.year = 1996 + i % 13;
        raw.reported_total = 100 + i;
        const Count missing = (raw.reported_total * 5 + 50) / 100;
        raw.country_facet = {{"Germany", raw.reported_total - missing - 10}, {"France", 20}, {"Undefined", missing}};
        raw.language_facet = {{"English", raw.reported_total}};
        const auto record = clean(raw);
        v.require(record.total_docs == raw.reported_total - missing, "total not reduced by the undefined facet");
        v.require(record.undefined_country_docs == missing, "undefined count not kept");
        v.require(record.country_counts == FacetCounts{{"DE", raw.reported_total - missing - 10}, {"FR", 20}},
                  "country facet changed beyond removing undefined");
        reported += raw.reported_total;
        cleaned += record.total_docs;
        undefined += missing;
    }
    v.require(cleaned + undefined == reported, "document totals not conserved");
    const double rate = static_cast<double>(undefined) / static_cast<double>(reported);
    v.require(std::abs(rate - 0.05) < 0.005, "fixture undefined rate " + fmt(rate));
    RawFacetResponse bad;
    bad.journal_id = "3000-0001";
    bad.year = 2000;
    bad.reported_total = 3;
    bad.country_facet = {{"Undefined", 4}};
    rejected = false;
    try {
        clean(bad);
    } catch (const DataError&) {
        rejected = true;
    }
    v.require(rejected, "undefined count above the total accepted");
    if (v.pass) {
        v.detail = "query bit-exact; " + std::to_string(undefined) + " undefined of " + std::to_string(reported) +
                   " documents subtracted exactly";
    }
    return v;
}

}  // namespace

int main() {
    spdlog::set_level(spdlog::level::off);
    const std::vector<std::pair<int, std::function<Verdict()>>> criteria{
        {1, oracle_equivalence},    {2, closed_form},          {3, standardization_contract},
        {4, eligibility_boundary},  {5, counting_invariants},  {6, report_checks},
        {7, locality_monotonicity}, {8, determinism_performance}, {9, query_and_clean}};
    int failures = 0;
    for (const auto& [number, check] : criteria) {
        Verdict verdict;
        try {
            verdict = check();
        } catch (const std::exception& e) {
            verdict = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "criterion " << number << ": " << (verdict.pass ? "PASS" : "FAIL") << " " << verdict.detail
                  << std::endl;
        failures += verdict.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
