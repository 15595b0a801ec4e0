#include "globsci/aggregate.hpp"

#include "globsci/csv.hpp"
#include "globsci/error.hpp"
#include "globsci/parallel.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>

namespace globsci {

namespace {

std::size_t position_of(const std::vector<std::size_t>& v, std::size_t value) {
    const auto it = std::lower_bound(v.begin(), v.end(), value);
    return it != v.end() && *it == value ? static_cast<std::size_t>(it - v.begin()) : v.size();
}

std::size_t position_of(const std::vector<int>& v, int value) {
    const auto it = std::lower_bound(v.begin(), v.end(), value);
    return it != v.end() && *it == value ? static_cast<std::size_t>(it - v.begin()) : v.size();
}

Count count_in(std::span<const FacetEntry> entries, std::uint32_t id) {
    const auto it = std::lower_bound(entries.begin(), entries.end(), id,
                                     [](const FacetEntry& e, std::uint32_t i) { return e.id < i; });
    return it != entries.end() && it->id == id ? it->count : 0;
}

}  // namespace

std::optional<double> aggregate_raw(const CorpusIndex& corpus, const ScoreTable& scores, std::string_view country,
                                    std::string_view discipline, int year, IndicatorId indicator,
                                    bool strict_denominator) {
    const auto c = corpus.country_dict().find(country);
    const auto d = corpus.discipline_index(discipline);
    if (!c || !d) {
        return std::nullopt;
    }
    const auto dp = position_of(scores.disciplines(), *d);
    const auto yp = position_of(scores.years(), year);
    if (dp == scores.disciplines().size() || yp == scores.years().size()) {
        return std::nullopt;
    }
    const auto rows = scores.rows(dp, yp);
    double weight = 0.0;
    for (const auto& row : rows) {
        const auto n = count_in(corpus.countries(corpus.records()[row.record]), *c);
        if (n > 0 && !std::isnan(row.values[index_of(indicator)])) {
            weight += static_cast<double>(n);
        }
    }
    if (weight == 0.0) {
        return std::nullopt;
    }
    if (strict_denominator) {
        weight = static_cast<double>(corpus.country_totals(*d, year)[*c]);
    }
    double g = 0.0;
    for (const auto& row : rows) {
        const auto n = count_in(corpus.countries(corpus.records()[row.record]), *c);
        const double v = row.values[index_of(indicator)];
        if (n > 0 && !std::isnan(v)) {
            g += static_cast<double>(n) / weight * v;
        }
    }
    return g;
}

bool eligibility(const CorpusIndex& corpus, std::string_view country, std::string_view discipline, int year,
                 const EligibilityRule& rule) {
    const auto c = corpus.country_dict().find(country);
    const auto d = corpus.discipline_index(discipline);
    if (!c || !d) {
        return false;
    }
    int qualifying = 0;
    for (const auto j : corpus.disciplines()[*d].journals) {
        const auto* r = corpus.find_record(j, year);
        if (r != nullptr && r->total_docs >= rule.min_docs && count_in(corpus.countries(*r), *c) >= 1) {
            ++qualifying;
        }
    }
    return qualifying >= rule.min_journals;
}

double standardize_value(double raw, const StandardizationParams& params) {
    if (params.degenerate) {
        return 0.0;
    }
    const double range = params.g_max - params.g_min;
    return params.orientation == Orientation::Maximizing ? (raw - params.g_min) / range
                                                         : (params.g_max - raw) / range;
}

std::vector<StandardizationParams> standardize(std::vector<GlobalizationScore>& cells) {
    std::vector<StandardizationParams> params;
    for (const auto id : kAllIndicators) {
        StandardizationParams p;
        p.indicator = id;
        p.orientation = indicator_spec(id).orientation;
        params.push_back(p);
    }
    // Phase one: global reduction.
    for (const auto& cell : cells) {
        if (!cell.eligible || !cell.raw) {
            continue;
        }
        auto& p = params[index_of(cell.indicator)];
        if (p.cells == 0) {
            p.g_min = p.g_max = *cell.raw;
        } else {
            p.g_min = std::min(p.g_min, *cell.raw);
            p.g_max = std::max(p.g_max, *cell.raw);
        }
        ++p.cells;
    }
    for (auto& p : params) {
        p.degenerate = p.cells > 0 && p.g_max == p.g_min;
        if (p.degenerate) {
            spdlog::warn("indicator {}: degenerate range (all {} eligible cells equal {}); standardized set to 0",
                         indicator_name(p.indicator), p.cells, p.g_min);
        }
    }
    // Phase two: rescale.
    for (auto& cell : cells) {
        cell.standardized.reset();
        if (cell.eligible && cell.raw) {
            cell.standardized = standardize_value(*cell.raw, params[index_of(cell.indicator)]);
        }
    }
    std::vector<StandardizationParams> used;
    for (const auto& p : params) {
        if (p.cells > 0) {
            used.push_back(p);
        }
    }
    return used;
}

std::vector<GlobalizationScore> aggregate_all(const CorpusIndex& corpus, const ScoreTable& scores,
                                              const PipelineConfig& config) {
    const auto& disciplines = scores.disciplines();
    const auto& years = scores.years();
    const auto n_countries = corpus.country_dict().size();
    const auto cells = disciplines.size() * years.size();
    std::vector<std::vector<GlobalizationScore>> parts(cells);

    parallel_for(cells, config.workers, [&](std::size_t cell) {
        const auto dp = cell / years.size();
        const auto yp = cell % years.size();
        const auto d = disciplines[dp];
        const int year = years[yp];
        const auto rows = scores.rows(dp, yp);

        std::vector<int> journals(n_countries, 0);
        std::vector<int> qualifying(n_countries, 0);
        std::vector<double> weight(n_countries * kIndicatorCount, 0.0);
        std::vector<double> sum(n_countries * kIndicatorCount, 0.0);

        for (const auto& row : rows) {
            const auto& r = corpus.records()[row.record];
            for (const auto& e : corpus.countries(r)) {
                if (e.count == 0) {
                    continue;
                }
                ++journals[e.id];
                if (r.total_docs >= config.eligibility.min_docs) {
                    ++qualifying[e.id];
                }
                for (std::size_t i = 0; i < kIndicatorCount; ++i) {
                    if (!std::isnan(row.values[i])) {
                        weight[e.id * kIndicatorCount + i] += static_cast<double>(e.count);
                    }
                }
            }
        }
        std::vector<double> denominator = weight;
        if (config.strict_denominator) {
            const auto& totals = corpus.country_totals(d, year);
            for (std::size_t c = 0; c < n_countries; ++c) {
                for (std::size_t i = 0; i < kIndicatorCount; ++i) {
                    denominator[c * kIndicatorCount + i] = static_cast<double>(totals[c]);
                }
            }
        }
        for (const auto& row : rows) {
            const auto& r = corpus.records()[row.record];
            for (const auto& e : corpus.countries(r)) {
                if (e.count == 0) {
                    continue;
                }
                for (std::size_t i = 0; i < kIndicatorCount; ++i) {
                    const double v = row.values[i];
                    if (!std::isnan(v)) {
                        sum[e.id * kIndicatorCount + i] +=
                            static_cast<double>(e.count) / denominator[e.id * kIndicatorCount + i] * v;
                    }
                }
            }
        }

        auto& out = parts[cell];
        const auto& code = corpus.disciplines()[d].code;
        for (std::uint32_t c = 0; c < n_countries; ++c) {
            if (journals[c] == 0) {
                continue;
            }
            for (const auto id : config.indicators) {
                const auto i = index_of(id);
                GlobalizationScore score;
                score.country = corpus.country_dict().name(c);
                score.discipline = code;
                score.year = year;
                score.indicator = id;
                if (weight[c * kIndicatorCount + i] > 0.0) {
                    score.raw = sum[c * kIndicatorCount + i];
                }
                score.journal_count = journals[c];
                score.qualifying_journal_count = qualifying[c];
                score.eligible = qualifying[c] >= config.eligibility.min_journals;
                out.push_back(std::move(score));
            }
        }
    });

    std::vector<GlobalizationScore> all;
    for (auto& p : parts) {
        std::move(p.begin(), p.end(), std::back_inserter(all));
    }
    std::sort(all.begin(), all.end(), [](const GlobalizationScore& a, const GlobalizationScore& b) {
        if (a.country != b.country) return a.country < b.country;
        if (a.discipline != b.discipline) return a.discipline < b.discipline;
        if (a.year != b.year) return a.year < b.year;
        return a.indicator < b.indicator;
    });
    return all;
}

PipelineResult run_pipeline(const CorpusIndex& corpus, const PipelineConfig& config) {
    if (config.eligibility.min_journals < 1 || config.eligibility.min_docs < 1) {
        throw ValidationError("eligibility thresholds must be at least 1");
    }
    const auto disciplines = corpus.disciplines_at(config.levels);
    const auto years = config.years.empty() ? corpus.years() : config.years;

    // Disciplines without any documents cannot be benchmarked; they yield no cells.
    std::vector<std::size_t> usable;
    for (const auto d : disciplines) {
        bool has_docs = false;
        for (const int y : corpus.years()) {
            for (const auto n : corpus.country_totals(d, y)) {
                has_docs = has_docs || n > 0;
            }
        }
        bool positive_total = false;
        for (const auto j : corpus.disciplines()[d].journals) {
            for (const auto& r : corpus.records_of(j)) {
                positive_total = positive_total || r.total_docs > 0;
            }
        }
        if (has_docs && positive_total) {
            usable.push_back(d);
        } else {
            spdlog::warn("discipline {} has no documents; skipped", corpus.disciplines()[d].code);
        }
    }

    PipelineResult result;
    auto benchmarks = build_benchmarks(corpus, usable, config.workers);
    result.scores = score_all(corpus, usable, years, std::move(benchmarks), config.workers);
    result.globalization = aggregate_all(corpus, result.scores, config);
    result.params = standardize(result.globalization);
    return result;
}

void write_globalization_scores(const std::string& path, const std::vector<GlobalizationScore>& cells) {
    csv::Writer out(path);
    out.row({"country", "discipline", "year", "indicator", "raw", "standardized", "eligible",
             "qualifying_journal_count"});
    for (const auto& cell : cells) {
        out.field(cell.country).field(cell.discipline).field(static_cast<std::int64_t>(cell.year));
        out.field(indicator_name(cell.indicator));
        cell.raw ? out.field(*cell.raw) : out.empty();
        cell.standardized ? out.field(*cell.standardized) : out.empty();
        out.field(cell.eligible ? "true" : "false");
        out.field(static_cast<std::int64_t>(cell.qualifying_journal_count));
        out.end_row();
    }
    out.close();
}

std::vector<GlobalizationScore> read_globalization_scores(const std::string& path) {
    csv::Reader reader(path);
    reader.expect_header({"country", "discipline", "year", "indicator", "raw", "standardized", "eligible",
                          "qualifying_journal_count"});
    std::vector<GlobalizationScore> cells;
    while (reader.next()) {
        GlobalizationScore cell;
        cell.country = std::string(reader.text(0));
        cell.discipline = std::string(reader.text(1));
        cell.year = static_cast<int>(reader.integer(2));
        const auto id = parse_indicator(reader.text(3));
        if (!id) {
            reader.fail(4, "unknown indicator '" + std::string(reader.text(3)) + "'");
        }
        cell.indicator = *id;
        if (!reader.text(4).empty()) {
            cell.raw = reader.real(4);
        }
        if (!reader.text(5).empty()) {
            cell.standardized = reader.real(5);
        }
        const auto eligible = reader.text(6);
        if (eligible != "true" && eligible != "false") {
            reader.fail(7, "expected true or false");
        }
        cell.eligible = eligible == "true";
        cell.qualifying_journal_count = static_cast<int>(reader.count(7));
        cells.push_back(std::move(cell));
    }
    return cells;
}

}  // namespace globsci
