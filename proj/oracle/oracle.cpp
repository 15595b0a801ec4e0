#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace oracle {

namespace {

using Counts = std::map<std::string, long long>;

struct Journal {
    std::string publisher;
    std::vector<std::string> narrow;
};

struct Cell {
    long long total = 0;
    long long undefined = 0;
    Counts countries;
    Counts institutions;
    Counts languages;
};

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(field);
            field.clear();
        } else if (ch != '\r') {
            field += ch;
        }
    }
    out.push_back(field);
    return out;
}

std::vector<std::vector<std::string>> read_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (!line.empty()) {
            rows.push_back(split_line(line));
        }
    }
    return rows;
}

double share_in(const std::map<std::string, double>& v, const std::string& key) {
    auto it = v.find(key);
    return it == v.end() ? 0.0 : it->second;
}

std::optional<double> value_or_none(bool ok, double v) {
    if (ok) {
        return v;
    }
    return std::nullopt;
}

}  // namespace

const std::vector<std::string>& indicator_names() {
    static const std::vector<std::string> names{"euclidean",
                                                "cosine",
                                                "gini_simpson",
                                                "largest_contributors_surplus",
                                                "institutional_diversity",
                                                "english_documents",
                                                "local_authors"};
    return names;
}

Result run(const std::string& dir, const Options& options) {
    namespace fs = std::filesystem;
    Result result;
    const std::vector<std::string> files{"journals.csv", "journal_year_totals.csv", "journal_year_countries.csv",
                                         "journal_year_institutions.csv", "journal_year_languages.csv"};
    bool any = false;
    for (const auto& f : files) {
        any = any || fs::exists(fs::path(dir) / f);
    }
    if (!any) {
        return result;
    }

    std::map<std::string, Journal> journals;
    for (const auto& row : read_rows((fs::path(dir) / "journals.csv").string())) {
        Journal j;
        j.publisher = row.at(2);
        std::stringstream codes(row.at(3));
        std::string code;
        while (std::getline(codes, code, ';')) {
            if (!code.empty()) {
                j.narrow.push_back(code);
            }
        }
        journals[row.at(0)] = j;
    }

    std::map<std::pair<std::string, int>, Cell> data;
    for (const auto& row : read_rows((fs::path(dir) / "journal_year_totals.csv").string())) {
        auto& c = data[{row.at(0), std::stoi(row.at(1))}];
        c.total = std::stoll(row.at(2));
        c.undefined = std::stoll(row.at(3));
    }
    if (data.size() > options.max_journal_years) {
        throw std::runtime_error("oracle guard: more than " + std::to_string(options.max_journal_years) +
                                 " journal-years");
    }
    auto facet = [&](const std::string& file, Counts Cell::*member) {
        for (const auto& row : read_rows((fs::path(dir) / file).string())) {
            (data.at({row.at(0), std::stoi(row.at(1))}).*member)[row.at(2)] += std::stoll(row.at(3));
        }
    };
    facet("journal_year_countries.csv", &Cell::countries);
    facet("journal_year_institutions.csv", &Cell::institutions);
    facet("journal_year_languages.csv", &Cell::languages);

    // Discipline membership.
    std::map<std::string, std::set<std::string>> members;
    for (const auto& [issn, j] : journals) {
        if (options.all) {
            members["ALL"].insert(issn);
        }
        for (const auto& code : j.narrow) {
            if (options.narrow) {
                members[code].insert(issn);
            }
            if (options.broad) {
                auto it = options.narrow_to_broad.find(code);
                if (it != options.narrow_to_broad.end()) {
                    for (const auto& b : it->second) {
                        members[b].insert(issn);
                    }
                }
            }
        }
    }
    std::set<int> years;
    for (const auto& [key, _] : data) {
        years.insert(key.second);
    }

    const auto& names = indicator_names();
    // values[discipline][year][issn][indicator]
    std::map<std::string, std::map<int, std::map<std::string, std::vector<std::optional<double>>>>> values;

    for (const auto& [discipline, issns] : members) {
        // Pooled benchmark across every year.
        std::map<std::string, long long> pooled;
        long long grand = 0;
        bool positive_total = false;
        for (const auto& [key, cell] : data) {
            if (issns.count(key.first) == 0) {
                continue;
            }
            positive_total = positive_total || cell.total > 0;
            for (const auto& [country, n] : cell.countries) {
                pooled[country] += n;
                grand += n;
            }
        }
        if (grand == 0 || !positive_total) {
            continue;
        }
        std::map<std::string, double> m;
        for (const auto& [country, n] : pooled) {
            if (n > 0) {
                m[country] = static_cast<double>(n) / static_cast<double>(grand);
            }
        }

        for (const int year : years) {
            for (const auto& issn : issns) {
                auto it = data.find({issn, year});
                if (it == data.end()) {
                    continue;
                }
                const Cell& cell = it->second;
                std::vector<std::optional<double>> v(names.size());
                const double t = static_cast<double>(cell.total);
                if (cell.total > 0) {
                    std::map<std::string, double> x;
                    for (const auto& [country, n] : cell.countries) {
                        x[country] = static_cast<double>(n) / t;
                    }
                    if (!cell.countries.empty()) {
                        std::set<std::string> keys;
                        for (const auto& [k, _] : x) keys.insert(k);
                        for (const auto& [k, _] : m) keys.insert(k);
                        double sq = 0, dot = 0, xx = 0, mm = 0;
                        for (const auto& k : keys) {
                            const double a = share_in(x, k);
                            const double b = share_in(m, k);
                            sq += (a - b) * (a - b);
                            dot += a * b;
                            xx += a * a;
                            mm += b * b;
                        }
                        v[0] = std::sqrt(sq);
                        v[1] = value_or_none(xx > 0 && mm > 0, std::min(1.0, dot / std::sqrt(xx * mm)));

                        long long s = 0, s2 = 0;
                        for (const auto& [k, n] : cell.countries) {
                            s += n;
                            s2 += n * n;
                        }
                        v[2] = value_or_none(s > 0, 1.0 - static_cast<double>(s2) / (static_cast<double>(s) * static_cast<double>(s)));

                        std::vector<std::pair<double, std::string>> ranked;
                        for (const auto& [k, share] : x) {
                            if (share > 0) ranked.push_back({-share, k});
                        }
                        std::sort(ranked.begin(), ranked.end());
                        if (!ranked.empty()) {
                            double lcs = 0;
                            for (std::size_t i = 0; i < ranked.size() && i < 3; ++i) {
                                lcs += -ranked[i].first - share_in(m, ranked[i].second);
                            }
                            v[3] = lcs;
                        }

                        const auto& publisher = journals.count(issn) ? journals.at(issn).publisher : std::string();
                        if (!publisher.empty()) {
                            auto pit = cell.countries.find(publisher);
                            v[6] = (pit == cell.countries.end() ? 0.0 : static_cast<double>(pit->second)) / t;
                        }
                    }
                    if (!cell.institutions.empty()) {
                        std::vector<long long> counts;
                        for (const auto& [k, n] : cell.institutions) counts.push_back(n);
                        std::sort(counts.rbegin(), counts.rend());
                        long long top = 0;
                        for (std::size_t i = 0; i < counts.size() && i < 3; ++i) top += counts[i];
                        v[4] = static_cast<double>(top) / t;
                    }
                    if (!cell.languages.empty()) {
                        auto eit = cell.languages.find("English");
                        v[5] = (eit == cell.languages.end() ? 0.0 : static_cast<double>(eit->second)) / t;
                    }
                }
                values[discipline][year][issn] = v;
                for (std::size_t i = 0; i < names.size(); ++i) {
                    result.journals.push_back({issn, discipline, year, names[i], v[i]});
                }
            }
        }
    }
    std::stable_sort(result.journals.begin(), result.journals.end(), [](const JournalScore& a, const JournalScore& b) {
        if (a.issn != b.issn) return a.issn < b.issn;
        if (a.discipline != b.discipline) return a.discipline < b.discipline;
        return a.year < b.year;
    });

    // Country aggregation by direct summation.
    for (const auto& [discipline, by_year] : values) {
        for (const auto& [year, by_journal] : by_year) {
            std::set<std::string> countries;
            for (const auto& [issn, _] : by_journal) {
                for (const auto& [country, n] : data.at({issn, year}).countries) {
                    if (n > 0) countries.insert(country);
                }
            }
            for (const auto& country : countries) {
                int qualifying = 0;
                long long n_cdy = 0;
                for (const auto& [issn, _] : by_journal) {
                    const auto& cell = data.at({issn, year});
                    auto it = cell.countries.find(country);
                    if (it != cell.countries.end() && it->second >= 1) {
                        n_cdy += it->second;
                        if (cell.total >= options.min_docs) ++qualifying;
                    }
                }
                for (std::size_t i = 0; i < names.size(); ++i) {
                    double w = 0;
                    for (const auto& [issn, v] : by_journal) {
                        auto it = data.at({issn, year}).countries.find(country);
                        if (it != data.at({issn, year}).countries.end() && it->second > 0 && v[i]) {
                            w += static_cast<double>(it->second);
                        }
                    }
                    CellScore cs{country, discipline, year, names[i], std::nullopt, std::nullopt,
                                 qualifying >= options.min_journals, qualifying};
                    if (w > 0) {
                        const double denom = options.strict_denominator ? static_cast<double>(n_cdy) : w;
                        double g = 0;
                        for (const auto& [issn, v] : by_journal) {
                            auto it = data.at({issn, year}).countries.find(country);
                            if (it != data.at({issn, year}).countries.end() && it->second > 0 && v[i]) {
                                g += static_cast<double>(it->second) / denom * *v[i];
                            }
                        }
                        cs.raw = g;
                    }
                    result.cells.push_back(cs);
                }
            }
        }
    }
    std::stable_sort(result.cells.begin(), result.cells.end(), [](const CellScore& a, const CellScore& b) {
        if (a.country != b.country) return a.country < b.country;
        if (a.discipline != b.discipline) return a.discipline < b.discipline;
        return a.year < b.year;
    });

    // Min-max rescaling over eligible cells.
    for (std::size_t i = 0; i < names.size(); ++i) {
        const bool minimizing = i == 0 || i == 3 || i == 4 || i == 6;
        std::vector<double> eligible;
        for (const auto& c : result.cells) {
            if (c.indicator == names[i] && c.eligible && c.raw) eligible.push_back(*c.raw);
        }
        if (eligible.empty()) continue;
        const double lo = *std::min_element(eligible.begin(), eligible.end());
        const double hi = *std::max_element(eligible.begin(), eligible.end());
        for (auto& c : result.cells) {
            if (c.indicator != names[i] || !c.eligible || !c.raw) continue;
            if (hi == lo) {
                c.standardized = 0.0;
            } else {
                c.standardized = minimizing ? (hi - *c.raw) / (hi - lo) : (*c.raw - lo) / (hi - lo);
            }
        }
    }
    return result;
}

}  // namespace oracle
