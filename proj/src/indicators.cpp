#include "globsci/indicators.hpp"

#include "globsci/csv.hpp"
#include "globsci/error.hpp"
#include "globsci/parallel.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <numeric>

namespace globsci {

ShareVector journal_shares(std::span<const FacetEntry> country_counts, Count total) {
    ShareVector x;
    x.reserve(country_counts.size());
    const auto t = static_cast<double>(total);
    for (const auto& e : country_counts) {
        x.push_back({e.id, static_cast<double>(e.count) / t});
    }
    return x;
}

DisciplineBenchmark build_benchmark(const CorpusIndex& corpus, std::size_t discipline) {
    const auto& d = corpus.disciplines().at(discipline);
    const auto n = corpus.country_dict().size();
    std::vector<Count> pooled(n, 0);
    bool has_documents = false;
    int first = 0;
    int last = 0;
    for (const int year : corpus.years()) {
        const auto& totals = corpus.country_totals(discipline, year);
        bool any = false;
        for (std::size_t c = 0; c < n; ++c) {
            pooled[c] += totals[c];
            any = any || totals[c] > 0;
        }
        if (any) {
            first = has_documents ? first : year;
            last = year;
            has_documents = true;
        }
    }
    const Count grand = std::accumulate(pooled.begin(), pooled.end(), Count{0});
    bool positive_total = false;
    for (const auto j : d.journals) {
        for (const auto& r : corpus.records_of(j)) {
            positive_total = positive_total || r.total_docs > 0;
        }
    }
    if (grand == 0 || !positive_total) {
        throw DataError("discipline " + d.code + " has no documents to build a benchmark from");
    }
    DisciplineBenchmark benchmark;
    benchmark.discipline = d.code;
    benchmark.first_year = first;
    benchmark.last_year = last;
    const auto denominator = static_cast<double>(grand);
    for (std::uint32_t c = 0; c < n; ++c) {
        if (pooled[c] > 0) {
            benchmark.shares.push_back({c, static_cast<double>(pooled[c]) / denominator});
        }
    }
    return benchmark;
}

double euclidean_distance(std::span<const ShareEntry> x, std::span<const ShareEntry> m) {
    double sum = 0.0;
    std::size_t i = 0;
    std::size_t k = 0;
    while (i < x.size() || k < m.size()) {
        double diff;
        if (k == m.size() || (i < x.size() && x[i].id < m[k].id)) {
            diff = x[i++].share;
        } else if (i == x.size() || m[k].id < x[i].id) {
            diff = -m[k++].share;
        } else {
            diff = x[i++].share - m[k++].share;
        }
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

std::optional<double> cosine_similarity(std::span<const ShareEntry> x, std::span<const ShareEntry> m) {
    double dot = 0.0;
    double xx = 0.0;
    double mm = 0.0;
    std::size_t i = 0;
    std::size_t k = 0;
    while (i < x.size() || k < m.size()) {
        if (k == m.size() || (i < x.size() && x[i].id < m[k].id)) {
            xx += x[i].share * x[i].share;
            ++i;
        } else if (i == x.size() || m[k].id < x[i].id) {
            mm += m[k].share * m[k].share;
            ++k;
        } else {
            dot += x[i].share * m[k].share;
            xx += x[i].share * x[i].share;
            mm += m[k].share * m[k].share;
            ++i;
            ++k;
        }
    }
    if (xx <= 0.0 || mm <= 0.0) {
        return std::nullopt;
    }
    return std::min(1.0, dot / std::sqrt(xx * mm));
}

std::optional<double> gini_simpson(std::span<const FacetEntry> country_counts) {
    std::uint64_t sum = 0;
    std::uint64_t squares = 0;
    for (const auto& e : country_counts) {
        sum += e.count;
        squares += static_cast<std::uint64_t>(e.count) * e.count;
    }
    if (sum == 0) {
        return std::nullopt;
    }
    const auto s = static_cast<double>(sum);
    return 1.0 - static_cast<double>(squares) / (s * s);
}

namespace {

double share_of(std::span<const ShareEntry> v, std::uint32_t id) {
    const auto it = std::lower_bound(v.begin(), v.end(), id, [](const ShareEntry& e, std::uint32_t i) { return e.id < i; });
    return it != v.end() && it->id == id ? it->share : 0.0;
}

}  // namespace

std::optional<double> largest_contributors_surplus(std::span<const ShareEntry> x, std::span<const ShareEntry> m) {
    std::vector<ShareEntry> contributors;
    for (const auto& e : x) {
        if (e.share > 0.0) {
            contributors.push_back(e);
        }
    }
    if (contributors.empty()) {
        return std::nullopt;
    }
    const auto top = std::min<std::size_t>(3, contributors.size());
    std::partial_sort(contributors.begin(), contributors.begin() + static_cast<std::ptrdiff_t>(top),
                      contributors.end(), [](const ShareEntry& a, const ShareEntry& b) {
                          return a.share != b.share ? a.share > b.share : a.id < b.id;
                      });
    double surplus = 0.0;
    for (std::size_t i = 0; i < top; ++i) {
        surplus += contributors[i].share - share_of(m, contributors[i].id);
    }
    return surplus;
}

std::optional<double> institutional_diversity(std::span<const FacetEntry> institution_counts, Count total) {
    if (total <= 0 || institution_counts.empty()) {
        return std::nullopt;
    }
    std::vector<FacetEntry> sorted(institution_counts.begin(), institution_counts.end());
    const auto top = std::min<std::size_t>(3, sorted.size());
    std::partial_sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(top), sorted.end(),
                      [](const FacetEntry& a, const FacetEntry& b) {
                          return a.count != b.count ? a.count > b.count : a.id < b.id;
                      });
    Count docs = 0;
    for (std::size_t i = 0; i < top; ++i) {
        docs += sorted[i].count;
    }
    return static_cast<double>(docs) / static_cast<double>(total);
}

std::optional<double> english_share(Count english_docs, Count total) {
    if (total <= 0) {
        return std::nullopt;
    }
    return static_cast<double>(english_docs) / static_cast<double>(total);
}

std::optional<double> local_authors_share(std::span<const FacetEntry> country_counts, Count total,
                                          std::optional<std::uint32_t> publisher_country) {
    if (total <= 0 || !publisher_country) {
        return std::nullopt;
    }
    Count local = 0;
    for (const auto& e : country_counts) {
        if (e.id == *publisher_country) {
            local = e.count;
        }
    }
    return static_cast<double>(local) / static_cast<double>(total);
}

IndicatorValues score_record(const CorpusIndex& corpus, const PackedRecord& record, const DisciplineBenchmark& benchmark) {
    IndicatorValues values;
    values.fill(kUndefined);
    if (record.total_docs <= 0) {
        return values;
    }
    auto set = [&](IndicatorId id, std::optional<double> v) {
        if (v) {
            values[index_of(id)] = *v;
        }
    };
    const auto countries = corpus.countries(record);
    if (!countries.empty()) {
        const auto x = journal_shares(countries, record.total_docs);
        set(IndicatorId::Euclidean, euclidean_distance(x, benchmark.shares));
        set(IndicatorId::Cosine, cosine_similarity(x, benchmark.shares));
        set(IndicatorId::GiniSimpson, gini_simpson(countries));
        set(IndicatorId::LargestContributorsSurplus, largest_contributors_surplus(x, benchmark.shares));
        set(IndicatorId::LocalAuthors,
            local_authors_share(countries, record.total_docs, corpus.publisher_country(record.journal)));
    }
    set(IndicatorId::InstitutionalDiversity, institutional_diversity(corpus.institutions(record), record.total_docs));
    if (!corpus.languages(record).empty()) {
        set(IndicatorId::EnglishDocuments, english_share(corpus.english_docs(record), record.total_docs));
    }
    return values;
}

std::span<const ScoreRow> ScoreTable::rows(std::size_t discipline_pos, std::size_t year_pos) const {
    const auto cell = discipline_pos * years_.size() + year_pos;
    return {rows_.data() + offsets_[cell], offsets_[cell + 1] - offsets_[cell]};
}

std::vector<IndicatorScore> ScoreTable::expand(const CorpusIndex& corpus) const {
    std::vector<IndicatorScore> out;
    out.reserve(rows_.size() * kIndicatorCount);
    for (std::size_t d = 0; d < disciplines_.size(); ++d) {
        const auto& code = corpus.disciplines()[disciplines_[d]].code;
        for (std::size_t y = 0; y < years_.size(); ++y) {
            for (const auto& row : rows(d, y)) {
                const auto& r = corpus.records()[row.record];
                for (const auto id : kAllIndicators) {
                    const double v = row.values[index_of(id)];
                    out.push_back({corpus.journals()[r.journal].journal_id, code, r.year, id,
                                   std::isnan(v) ? 0.0 : v, !std::isnan(v)});
                }
            }
        }
    }
    return out;
}

std::map<std::size_t, DisciplineBenchmark> build_benchmarks(const CorpusIndex& corpus,
                                                            const std::vector<std::size_t>& disciplines, int workers) {
    std::vector<DisciplineBenchmark> built(disciplines.size());
    parallel_for(disciplines.size(), workers, [&](std::size_t i) { built[i] = build_benchmark(corpus, disciplines[i]); });
    std::map<std::size_t, DisciplineBenchmark> out;
    for (std::size_t i = 0; i < disciplines.size(); ++i) {
        out.emplace(disciplines[i], std::move(built[i]));
    }
    return out;
}

ScoreTable score_all(const CorpusIndex& corpus, const std::vector<std::size_t>& disciplines,
                     const std::vector<int>& years, std::map<std::size_t, DisciplineBenchmark> benchmarks,
                     int workers) {
    ScoreTable table;
    table.disciplines_ = disciplines;
    std::sort(table.disciplines_.begin(), table.disciplines_.end());
    table.disciplines_.erase(std::unique(table.disciplines_.begin(), table.disciplines_.end()),
                             table.disciplines_.end());
    table.years_ = years;
    std::sort(table.years_.begin(), table.years_.end());
    table.years_.erase(std::unique(table.years_.begin(), table.years_.end()), table.years_.end());
    for (const auto d : table.disciplines_) {
        if (benchmarks.count(d) == 0) {
            throw DataError("missing benchmark for discipline " + corpus.disciplines().at(d).code);
        }
    }
    table.benchmarks_ = std::move(benchmarks);

    const auto n_years = table.years_.size();
    const auto cells = table.disciplines_.size() * n_years;
    std::vector<std::vector<ScoreRow>> parts(cells);
    parallel_for(cells, workers, [&](std::size_t cell) {
        const auto d = table.disciplines_[cell / n_years];
        const int year = table.years_[cell % n_years];
        const auto& benchmark = table.benchmarks_.at(d);
        auto& out = parts[cell];
        for (const auto j : corpus.disciplines()[d].journals) {
            const auto* record = corpus.find_record(j, year);
            if (record == nullptr) {
                continue;
            }
            const auto index = static_cast<std::uint32_t>(record - corpus.records().data());
            out.push_back({index, score_record(corpus, *record, benchmark)});
        }
    });

    std::size_t total = 0;
    for (const auto& p : parts) {
        total += p.size();
    }
    table.rows_.reserve(total);
    table.offsets_.reserve(cells + 1);
    for (auto& p : parts) {
        table.offsets_.push_back(table.rows_.size());
        table.rows_.insert(table.rows_.end(), p.begin(), p.end());
        std::vector<ScoreRow>().swap(p);
    }
    table.offsets_.push_back(table.rows_.size());

    for (const auto& row : table.rows_) {
        const double v = row.values[index_of(IndicatorId::EnglishDocuments)];
        if (!std::isnan(v) && v > 1.0) {
            table.english_anomalies_.push_back(row.record);
        }
    }
    std::sort(table.english_anomalies_.begin(), table.english_anomalies_.end());
    table.english_anomalies_.erase(std::unique(table.english_anomalies_.begin(), table.english_anomalies_.end()),
                                   table.english_anomalies_.end());
    for (const auto rec : table.english_anomalies_) {
        const auto& r = corpus.records()[rec];
        spdlog::warn("audit: {} {}: English share above 1", corpus.journals()[r.journal].journal_id, r.year);
    }
    return table;
}

void write_journal_scores(const std::string& path, const CorpusIndex& corpus, const ScoreTable& table,
                          const std::vector<IndicatorId>& indicators) {
    struct Ref {
        std::uint32_t journal;
        std::uint32_t discipline_pos;
        int year;
        const ScoreRow* row;
    };
    std::vector<Ref> refs;
    refs.reserve(table.row_count());
    for (std::size_t d = 0; d < table.disciplines().size(); ++d) {
        for (std::size_t y = 0; y < table.years().size(); ++y) {
            for (const auto& row : table.rows(d, y)) {
                const auto& r = corpus.records()[row.record];
                refs.push_back({r.journal, static_cast<std::uint32_t>(d), r.year, &row});
            }
        }
    }
    const auto& journals = corpus.journals();
    std::sort(refs.begin(), refs.end(), [&](const Ref& a, const Ref& b) {
        if (a.journal != b.journal) {
            return journals[a.journal].journal_id < journals[b.journal].journal_id;
        }
        return a.discipline_pos != b.discipline_pos ? a.discipline_pos < b.discipline_pos : a.year < b.year;
    });
    csv::Writer out(path);
    out.row({"issn", "discipline", "year", "indicator", "value", "defined"});
    for (const auto& ref : refs) {
        const auto& issn = journals[ref.journal].journal_id;
        const auto& code = corpus.disciplines()[table.disciplines()[ref.discipline_pos]].code;
        for (const auto id : indicators) {
            const double v = ref.row->values[index_of(id)];
            out.field(issn).field(code).field(static_cast<std::int64_t>(ref.year)).field(indicator_name(id));
            if (std::isnan(v)) {
                out.empty().field("false");
            } else {
                out.field(v).field("true");
            }
            out.end_row();
        }
    }
    out.close();
}

void write_benchmarks(const std::string& path, const CorpusIndex& corpus,
                      const std::map<std::size_t, DisciplineBenchmark>& benchmarks) {
    csv::Writer out(path);
    out.row({"discipline", "country", "share", "first_year", "last_year"});
    for (const auto& [d, benchmark] : benchmarks) {
        for (const auto& e : benchmark.shares) {
            out.field(benchmark.discipline)
                .field(corpus.country_dict().name(e.id))
                .field(e.share)
                .field(static_cast<std::int64_t>(benchmark.first_year))
                .field(static_cast<std::int64_t>(benchmark.last_year))
                .end_row();
        }
    }
    out.close();
}

}  // namespace globsci
