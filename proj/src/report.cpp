#include "globsci/report.hpp"

#include "globsci/csv.hpp"
#include "globsci/error.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <tuple>

namespace globsci {

std::map<std::string, int> quartile_split(std::span<const JournalValue> journals, IndicatorId indicator,
                                          Count min_docs) {
    std::vector<const JournalValue*> ranked;
    for (const auto& j : journals) {
        if (!std::isnan(j.value) && j.total_docs >= min_docs && j.total_docs >= 1) {
            ranked.push_back(&j);
        }
    }
    if (ranked.size() < 4) {
        throw DataError("quartile split needs at least 4 journals, got " + std::to_string(ranked.size()));
    }
    const bool ascending = indicator_spec(indicator).orientation == Orientation::Minimizing;
    std::sort(ranked.begin(), ranked.end(), [ascending](const JournalValue* a, const JournalValue* b) {
        if (a->value != b->value) {
            return ascending ? a->value < b->value : a->value > b->value;
        }
        return a->journal_id < b->journal_id;
    });
    std::map<std::string, int> quartiles;
    const auto n = ranked.size();
    for (std::size_t r = 1; r <= n; ++r) {
        // ceil(4r / n) in integers
        quartiles[ranked[r - 1]->journal_id] = static_cast<int>((4 * r + n - 1) / n);
    }
    return quartiles;
}

std::vector<JournalValue> journal_values(const CorpusIndex& corpus, const ScoreTable& scores, std::size_t discipline_pos,
                                         std::size_t year_pos, IndicatorId indicator) {
    std::vector<JournalValue> out;
    for (const auto& row : scores.rows(discipline_pos, year_pos)) {
        const auto& r = corpus.records()[row.record];
        out.push_back({corpus.journals()[r.journal].journal_id, row.values[index_of(indicator)], r.total_docs});
    }
    return out;
}

QuartileBreakdown document_breakdown(const CorpusIndex& corpus, const std::map<std::string, int>& quartiles,
                                     std::string_view country, std::string_view discipline, int year) {
    QuartileBreakdown out{std::string(country), std::string(discipline), year, std::nullopt};
    const auto c = corpus.country_dict().find(country);
    if (!c) {
        return out;
    }
    std::array<Count, 4> docs{};
    for (const auto& [issn, q] : quartiles) {
        const auto j = corpus.journal_index(issn);
        if (!j) {
            continue;
        }
        const auto* r = corpus.find_record(*j, year);
        if (r == nullptr) {
            continue;
        }
        for (const auto& e : corpus.countries(*r)) {
            if (e.id == *c) {
                docs[static_cast<std::size_t>(q - 1)] += e.count;
            }
        }
    }
    const Count total = docs[0] + docs[1] + docs[2] + docs[3];
    if (total == 0) {
        return out;
    }
    std::array<double, 4> shares{};
    for (std::size_t q = 0; q < 4; ++q) {
        shares[q] = static_cast<double>(docs[q]) / static_cast<double>(total);
    }
    out.shares = shares;
    return out;
}

std::vector<QuartileBreakdown> quartile_breakdowns(const CorpusIndex& corpus, const ScoreTable& scores,
                                                   IndicatorId indicator, Count min_docs) {
    std::vector<QuartileBreakdown> out;
    for (std::size_t dp = 0; dp < scores.disciplines().size(); ++dp) {
        const auto& code = corpus.disciplines()[scores.disciplines()[dp]].code;
        for (std::size_t yp = 0; yp < scores.years().size(); ++yp) {
            const int year = scores.years()[yp];
            const auto values = journal_values(corpus, scores, dp, yp, indicator);
            std::map<std::string, int> quartiles;
            try {
                quartiles = quartile_split(values, indicator, min_docs);
            } catch (const DataError& e) {
                spdlog::debug("quartiles skipped for {} {}: {}", code, year, e.what());
                continue;
            }
            std::vector<std::array<Count, 4>> docs(corpus.country_dict().size(), std::array<Count, 4>{});
            std::vector<bool> seen(corpus.country_dict().size(), false);
            for (const auto& [issn, q] : quartiles) {
                const auto* r = corpus.find_record(*corpus.journal_index(issn), year);
                for (const auto& e : corpus.countries(*r)) {
                    docs[e.id][static_cast<std::size_t>(q - 1)] += e.count;
                    seen[e.id] = seen[e.id] || e.count > 0;
                }
            }
            for (std::uint32_t c = 0; c < docs.size(); ++c) {
                if (!seen[c]) {
                    continue;
                }
                const Count total = docs[c][0] + docs[c][1] + docs[c][2] + docs[c][3];
                std::array<double, 4> shares{};
                for (std::size_t q = 0; q < 4; ++q) {
                    shares[q] = static_cast<double>(docs[c][q]) / static_cast<double>(total);
                }
                out.push_back({corpus.country_dict().name(c), code, year, shares});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const QuartileBreakdown& a, const QuartileBreakdown& b) {
        return std::tie(a.country, a.discipline, a.year) < std::tie(b.country, b.discipline, b.year);
    });
    return out;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    const auto n = std::min(x.size(), y.size());
    if (n < 2) {
        return std::nullopt;
    }
    const auto constant = [n](std::span<const double> v) {
        return std::all_of(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n), [&](double a) { return a == v[0]; });
    };
    if (constant(x) || constant(y)) {
        return std::nullopt;
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        return std::nullopt;
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationMatrix correlation_matrix(std::span<const GlobalizationScore> cells, ScoreKind kind) {
    using Key = std::tuple<std::string, std::string, int>;
    std::map<Key, std::array<std::optional<double>, kIndicatorCount>> matched;
    for (const auto& cell : cells) {
        const auto& v = kind == ScoreKind::Raw ? cell.raw : cell.standardized;
        if (v) {
            matched[{cell.country, cell.discipline, cell.year}][index_of(cell.indicator)] = *v;
        }
    }
    CorrelationMatrix matrix{};
    for (std::size_t a = 0; a < kIndicatorCount; ++a) {
        for (std::size_t b = a; b < kIndicatorCount; ++b) {
            std::vector<double> x;
            std::vector<double> y;
            for (const auto& [_, values] : matched) {
                if (values[a] && values[b]) {
                    x.push_back(*values[a]);
                    y.push_back(*values[b]);
                }
            }
            auto r = pearson(x, y);
            if (a == b && r) {
                r = 1.0;
            }
            matrix[a][b] = r;
            matrix[b][a] = r;
        }
    }
    return matrix;
}

std::vector<GroupTimeSeries> group_series(std::span<const GlobalizationScore> cells, const CountryGroupTable& groups,
                                          IndicatorId indicator, ScoreKind kind) {
    using Key = std::tuple<CountryGroup, std::string, int>;
    std::map<Key, std::vector<double>> buckets;
    for (const auto& cell : cells) {
        if (cell.indicator != indicator) {
            continue;
        }
        const auto& v = kind == ScoreKind::Raw ? cell.raw : cell.standardized;
        if (!v) {
            continue;
        }
        const auto group = groups.classify(cell.country);
        if (!group) {
            continue;
        }
        buckets[{*group, cell.discipline, cell.year}].push_back(*v);
    }
    std::vector<GroupTimeSeries> out;
    for (const auto& [key, values] : buckets) {
        const auto n = values.size();
        double mean = 0.0;
        for (const double v : values) {
            mean += v;
        }
        mean /= static_cast<double>(n);
        double half = 0.0;
        const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        if (*lo == *hi) {
            mean = *lo;
        } else {
            double ss = 0.0;
            for (const double v : values) {
                ss += (v - mean) * (v - mean);
            }
            const double sd = std::sqrt(ss / static_cast<double>(n - 1));
            half = 1.96 * sd / std::sqrt(static_cast<double>(n));
        }
        out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), indicator, mean, mean - half, mean + half, n});
    }
    return out;
}

double powerlaw_normalize(double value, double v_min, double v_max, double gamma) {
    if (gamma <= 0.0) {
        throw ValidationError("power-law gamma must be positive");
    }
    if (!(v_min < v_max)) {
        throw ValidationError("power-law range needs v_min < v_max");
    }
    const double clamped = std::clamp(value, v_min, v_max);
    return std::pow((clamped - v_min) / (v_max - v_min), gamma);
}

std::vector<MapColor> map_colors(std::span<const GlobalizationScore> cells, std::string_view discipline, int year,
                                 IndicatorId indicator) {
    std::vector<MapColor> out;
    for (const auto& cell : cells) {
        if (cell.discipline == discipline && cell.year == year && cell.indicator == indicator && cell.standardized) {
            out.push_back({cell.country, powerlaw_normalize(*cell.standardized)});
        }
    }
    std::sort(out.begin(), out.end(), [](const MapColor& a, const MapColor& b) { return a.country < b.country; });
    return out;
}

void write_quartile_breakdown(const std::string& path, const std::vector<QuartileBreakdown>& rows) {
    csv::Writer out(path);
    out.row({"country", "discipline", "year", "q1", "q2", "q3", "q4"});
    for (const auto& row : rows) {
        out.field(row.country).field(row.discipline).field(static_cast<std::int64_t>(row.year));
        for (std::size_t q = 0; q < 4; ++q) {
            row.shares ? out.field((*row.shares)[q]) : out.empty();
        }
        out.end_row();
    }
    out.close();
}

void write_correlation_matrix(const std::string& path, const CorrelationMatrix& matrix,
                              const std::vector<IndicatorId>& indicators) {
    csv::Writer out(path);
    out.field("indicator");
    for (const auto id : indicators) {
        out.field(indicator_name(id));
    }
    out.end_row();
    for (const auto a : indicators) {
        out.field(indicator_name(a));
        for (const auto b : indicators) {
            const auto& r = matrix[index_of(a)][index_of(b)];
            r ? out.field(*r) : out.empty();
        }
        out.end_row();
    }
    out.close();
}

void write_group_series(const std::string& path, const std::vector<GroupTimeSeries>& rows) {
    csv::Writer out(path);
    out.row({"group", "discipline", "year", "indicator", "mean", "ci_low", "ci_high", "n"});
    for (const auto& row : rows) {
        out.field(group_name(row.group))
            .field(row.discipline)
            .field(static_cast<std::int64_t>(row.year))
            .field(indicator_name(row.indicator))
            .field(row.mean)
            .field(row.ci_low)
            .field(row.ci_high)
            .field(static_cast<std::int64_t>(row.n))
            .end_row();
    }
    out.close();
}

void write_map_colors(const std::string& path, const std::vector<MapColor>& rows) {
    csv::Writer out(path);
    out.row({"country", "normalized_value"});
    for (const auto& row : rows) {
        out.field(row.country).field(row.normalized).end_row();
    }
    out.close();
}

}  // namespace globsci
