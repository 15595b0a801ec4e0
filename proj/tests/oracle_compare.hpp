#pragma once

#include "globsci/aggregate.hpp"
#include "globsci/disciplines.hpp"
#include "oracle.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace support {

inline oracle::Options oracle_options(const globsci::PipelineConfig& config,
                                      const globsci::DisciplineMap& map = globsci::DisciplineMap::defaults()) {
    oracle::Options o;
    for (const auto& [narrow, broad] : map.table()) {
        o.narrow_to_broad[narrow] = std::vector<std::string>(broad.begin(), broad.end());
    }
    o.narrow = config.levels.count(globsci::DisciplineLevel::Narrow) > 0;
    o.broad = config.levels.count(globsci::DisciplineLevel::Broad) > 0;
    o.all = config.levels.count(globsci::DisciplineLevel::All) > 0;
    o.min_journals = config.eligibility.min_journals;
    o.min_docs = config.eligibility.min_docs;
    o.strict_denominator = config.strict_denominator;
    return o;
}

inline bool close(const std::optional<double>& a, const std::optional<double>& b, double tolerance) {
    if (a.has_value() != b.has_value()) {
        return false;
    }
    return !a || std::abs(*a - *b) <= tolerance;
}

// Returns a description of every disagreement (empty when equivalent).
inline std::vector<std::string> compare_with_oracle(const oracle::Result& expected, const globsci::CorpusIndex& corpus,
                                                    const globsci::PipelineResult& actual, double tolerance) {
    std::vector<std::string> problems;
    auto show = [](const std::optional<double>& v) {
        std::ostringstream s;
        s.precision(17);
        if (v) s << *v; else s << "undefined";
        return s.str();
    };

    using JKey = std::tuple<std::string, std::string, int, std::string>;
    std::map<JKey, std::optional<double>> journal_values;
    for (const auto& s : actual.scores.expand(corpus)) {
        journal_values[{s.journal_id, s.discipline, s.year, std::string(globsci::indicator_name(s.indicator))}] =
            s.defined ? std::optional<double>(s.value) : std::nullopt;
    }
    if (journal_values.size() != expected.journals.size()) {
        problems.push_back("journal score count " + std::to_string(journal_values.size()) + " vs oracle " +
                           std::to_string(expected.journals.size()));
    }
    for (const auto& e : expected.journals) {
        const auto it = journal_values.find({e.issn, e.discipline, e.year, e.indicator});
        if (it == journal_values.end()) {
            problems.push_back("missing journal score " + e.issn + " " + e.discipline + " " + std::to_string(e.year) +
                               " " + e.indicator);
        } else if (!close(it->second, e.value, tolerance)) {
            problems.push_back("journal score " + e.issn + " " + e.discipline + " " + std::to_string(e.year) + " " +
                               e.indicator + ": " + show(it->second) + " vs oracle " + show(e.value));
        }
    }

    using CKey = std::tuple<std::string, std::string, int, std::string>;
    std::map<CKey, const globsci::GlobalizationScore*> cells;
    for (const auto& c : actual.globalization) {
        cells[{c.country, c.discipline, c.year, std::string(globsci::indicator_name(c.indicator))}] = &c;
    }
    if (cells.size() != expected.cells.size()) {
        problems.push_back("cell count " + std::to_string(cells.size()) + " vs oracle " +
                           std::to_string(expected.cells.size()));
    }
    for (const auto& e : expected.cells) {
        const auto it = cells.find({e.country, e.discipline, e.year, e.indicator});
        const auto label = e.country + " " + e.discipline + " " + std::to_string(e.year) + " " + e.indicator;
        if (it == cells.end()) {
            problems.push_back("missing cell " + label);
            continue;
        }
        const auto& c = *it->second;
        if (!close(c.raw, e.raw, tolerance)) {
            problems.push_back("raw " + label + ": " + show(c.raw) + " vs oracle " + show(e.raw));
        }
        if (!close(c.standardized, e.standardized, tolerance)) {
            problems.push_back("standardized " + label + ": " + show(c.standardized) + " vs oracle " +
                               show(e.standardized));
        }
        if (c.eligible != e.eligible || c.qualifying_journal_count != e.qualifying_journals) {
            problems.push_back("eligibility " + label);
        }
    }
    return problems;
}

}  // namespace support
