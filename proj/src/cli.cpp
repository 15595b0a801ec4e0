#include "globsci/cli.hpp"

#include "globsci/countries.hpp"
#include "globsci/csv.hpp"
#include "globsci/error.hpp"
#include "globsci/harvest.hpp"
#include "globsci/indicators.hpp"
#include "globsci/ingest.hpp"
#include "globsci/report.hpp"
#include "globsci/synth.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace globsci {

namespace fs = std::filesystem;

namespace {

std::vector<IndicatorId> parse_indicator_list(const std::string& text) {
    std::vector<IndicatorId> out;
    for (const auto& name : csv::split(text, ',')) {
        if (name.empty()) {
            continue;
        }
        const auto id = parse_indicator(name);
        if (!id) {
            throw ValidationError("unknown indicator '" + name + "'");
        }
        if (std::find(out.begin(), out.end(), *id) == out.end()) {
            out.push_back(*id);
        }
    }
    if (out.empty()) {
        throw ValidationError("indicator list is empty");
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string join_levels(const std::set<DisciplineLevel>& levels) {
    std::string out;
    for (const auto level : levels) {
        out += out.empty() ? "" : ",";
        out += level_name(level);
    }
    return out;
}

std::string join_indicators(const std::vector<IndicatorId>& ids) {
    std::string out;
    for (const auto id : ids) {
        out += out.empty() ? "" : ",";
        out += indicator_name(id);
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::size_t data_rows(const std::string& path) {
    const auto text = read_file(path);
    std::size_t lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
    if (!text.empty() && text.back() != '\n') {
        ++lines;
    }
    return lines == 0 ? 0 : lines - 1;
}

std::set<std::string> load_territories(const std::string& path) {
    csv::Reader reader(path);
    reader.expect_header({"country_code"});
    std::set<std::string> out;
    while (reader.next()) {
        const auto code = normalize_country(reader.text(0));
        if (!code) {
            reader.fail(1, "unknown country '" + std::string(reader.text(0)) + "'");
        }
        out.insert(*code);
    }
    return out;
}

std::vector<JournalMeta> read_journal_metadata(const std::string& path, const DisciplineMap& map) {
    csv::Reader reader(path);
    reader.expect_header({"issn", "title", "publisher_country", "narrow_codes"});
    std::vector<JournalMeta> out;
    while (reader.next()) {
        try {
            out.push_back(parse_journal_row(reader.text(0), reader.text(1), reader.text(2), reader.text(3)));
        } catch (const ValidationError& e) {
            reader.fail(1, e.what());
        }
        out.back().broad_disciplines = map.broad_of(out.back().narrow_disciplines);
    }
    return out;
}

class Run {
public:
    Run(std::string command, RunConfig config) : command_(std::move(command)), config_(std::move(config)) {}

    void execute();

private:
    DisciplineMap discipline_map() const {
        return config_.discipline_map.empty() ? DisciplineMap::defaults() : DisciplineMap::load(config_.discipline_map);
    }
    CountryGroupTable country_groups() const {
        return config_.country_groups.empty() ? CountryGroupTable::defaults()
                                              : CountryGroupTable::load(config_.country_groups);
    }
    std::string out(const std::string& name) const { return (fs::path(config_.out) / name).string(); }
    void input(const std::string& path) { inputs_.push_back(path); }
    void output(const std::string& path) { outputs_.push_back(path); }

    CorpusIndex load(const std::string& dir);
    void do_harvest();
    void do_ingest();
    void do_synth();
    void do_pipeline(int stage);
    void write_manifest() const;

    std::string command_;
    RunConfig config_;
    std::vector<std::string> inputs_;
    std::vector<std::string> outputs_;
};

CorpusIndex Run::load(const std::string& dir) {
    if (!fs::is_directory(dir)) {
        throw DataError("input directory not found: " + dir);
    }
    const auto paths = CorpusPaths::in_directory(dir);
    for (const auto& p : paths.all()) {
        if (fs::exists(p)) {
            input(p);
        }
    }
    LoadOptions options;
    options.build.strict_audit = config_.strict_audit;
    return load_corpus(paths, discipline_map(), options);
}

void Run::do_harvest() {
    if (config_.journals.empty()) {
        throw ValidationError("harvest needs a journal list (--journals)");
    }
    const auto map = discipline_map();
    input(config_.journals);
    std::vector<std::string> issns;
    for (const auto& meta : read_journal_metadata(config_.journals, map)) {
        issns.push_back(meta.journal_id);
    }
    HarvestOptions options;
    options.out_dir = config_.raw.empty() ? out("raw") : config_.raw;
    options.rate_limit = config_.rate_limit;
    options.max_retries = config_.max_retries;
    options.workers = config_.workers;
    HarvestSummary summary;
    if (!config_.fixtures.empty()) {
        FixtureTransport transport;
        transport.load_directory(config_.fixtures);
        summary = harvest(issns, config_.first_year, config_.last_year, transport, options);
    } else {
        auto transport = CurlTransport::from_environment();
        summary = harvest(issns, config_.first_year, config_.last_year, transport, options);
    }
    spdlog::info("harvest: {} fetched, {} already complete, {} failed", summary.fetched, summary.skipped,
                 summary.failures.size());
    if (!summary.failures.empty()) {
        throw DataError(std::to_string(summary.failures.size()) + " queries failed; see " +
                        (fs::path(options.out_dir) / kFailuresFile).string());
    }
}

void Run::do_ingest() {
    if (config_.raw.empty() || config_.journals.empty()) {
        throw ValidationError("ingest needs --raw and --journals");
    }
    if (!fs::is_directory(config_.raw)) {
        throw DataError("raw response directory not found: " + config_.raw);
    }
    const auto map = discipline_map();
    input(config_.journals);
    auto journals = read_journal_metadata(config_.journals, map);
    CleanOptions options = default_clean_options();
    if (!config_.territories.empty()) {
        input(config_.territories);
        options.dropped_territories = load_territories(config_.territories);
    }
    std::vector<JournalYearRecord> records;
    const auto dir = out("corpus");
    fs::create_directories(dir);
    csv::Writer audit(out("ingest_audit.csv"));
    audit.row({"issn", "year", "action", "label"});
    for (const auto& raw : read_raw_directory(config_.raw)) {
        CleanAudit trail;
        records.push_back(clean(raw, options, &trail));
        for (const auto& code : trail.dropped) {
            audit.field(raw.journal_id).field(static_cast<std::int64_t>(raw.year)).field("dropped").field(code).end_row();
        }
        for (const auto& label : trail.unresolved) {
            audit.field(raw.journal_id)
                .field(static_cast<std::int64_t>(raw.year))
                .field("unresolved")
                .field(label)
                .end_row();
        }
    }
    audit.close();
    output(out("ingest_audit.csv"));
    const auto paths = CorpusPaths::in_directory(dir);
    write_journals(paths.journals, journals);
    write_records(paths, std::move(records));
    for (const auto& p : paths.all()) {
        output(p);
    }
    LoadOptions load_options;
    load_options.build.strict_audit = config_.strict_audit;
    const auto corpus = load_corpus(paths, map, load_options);
    spdlog::info("ingest: {} journals, {} journal-years, {} facet rows", corpus.journals().size(),
                 corpus.records().size(), corpus.facet_row_count());
    config_.input = dir;
}

void Run::do_synth() {
    SynthConfig synth = synth_config_from_json(config_.synth);
    if (config_.seed) {
        synth.seed = *config_.seed;
    }
    const auto dir = out("corpus");
    const auto rows = generate_to_directory(synth, dir);
    for (const auto& p : CorpusPaths::in_directory(dir).all()) {
        output(p);
    }
    spdlog::info("synth: {} journals x {} years, {} facet rows", synth.n_journals,
                 synth.last_year - synth.first_year + 1, rows);
}

// Stages: 1 benchmark, 2 score, 3 aggregate, 4 report.
void Run::do_pipeline(int stage) {
    const auto corpus = load(config_.input);
    spdlog::info("corpus: {} journals, {} journal-years, {} facet rows", corpus.journals().size(),
                 corpus.records().size(), corpus.facet_row_count());
    const auto pipeline = config_.pipeline();
    fs::create_directories(config_.out);

    if (stage == 1) {
        std::vector<std::size_t> usable;
        for (const auto d : corpus.disciplines_at(pipeline.levels)) {
            try {
                build_benchmark(corpus, d);
                usable.push_back(d);
            } catch (const DataError& e) {
                spdlog::warn("{}", e.what());
            }
        }
        write_benchmarks(out("benchmarks.csv"), corpus, build_benchmarks(corpus, usable, pipeline.workers));
        output(out("benchmarks.csv"));
        return;
    }

    auto result = run_pipeline(corpus, pipeline);
    write_benchmarks(out("benchmarks.csv"), corpus, result.scores.benchmarks());
    output(out("benchmarks.csv"));
    write_journal_scores(out("journal_scores.csv"), corpus, result.scores, pipeline.indicators);
    output(out("journal_scores.csv"));
    spdlog::info("scored {} journal-discipline-years", result.scores.row_count());
    if (stage == 2) {
        return;
    }

    write_globalization_scores(out("globalization_scores.csv"), result.globalization);
    output(out("globalization_scores.csv"));
    {
        csv::Writer params(out("standardization.csv"));
        params.row({"indicator", "g_min", "g_max", "orientation", "degenerate", "cells"});
        for (const auto& p : result.params) {
            params.field(indicator_name(p.indicator)).field(p.g_min).field(p.g_max);
            params.field(p.orientation == Orientation::Maximizing ? "maximizing" : "minimizing");
            params.field(p.degenerate ? "true" : "false").field(static_cast<std::int64_t>(p.cells)).end_row();
        }
        params.close();
        output(out("standardization.csv"));
    }
    std::size_t eligible = 0;
    for (const auto& cell : result.globalization) {
        eligible += cell.standardized ? 1 : 0;
    }
    spdlog::info("aggregated {} cells, {} standardized", result.globalization.size(), eligible);
    if (stage == 3) {
        return;
    }

    write_quartile_breakdown(out("quartile_breakdown.csv"),
                             quartile_breakdowns(corpus, result.scores, config_.quartile_indicator,
                                                 config_.quartile_min_docs));
    output(out("quartile_breakdown.csv"));
    write_correlation_matrix(out("correlation_matrix.csv"), correlation_matrix(result.globalization),
                             pipeline.indicators);
    output(out("correlation_matrix.csv"));
    const auto groups = country_groups();
    std::vector<GroupTimeSeries> series;
    for (const auto id : pipeline.indicators) {
        auto part = group_series(result.globalization, groups, id);
        series.insert(series.end(), part.begin(), part.end());
    }
    write_group_series(out("group_series.csv"), series);
    output(out("group_series.csv"));
    const int year = config_.map_year ? *config_.map_year
                                      : (result.scores.years().empty() ? 0 : result.scores.years().back());
    write_map_colors(out("map_colors.csv"), map_colors(result.globalization, config_.map_discipline, year));
    output(out("map_colors.csv"));
}

void Run::write_manifest() const {
    nlohmann::json manifest;
    manifest["command"] = command_;
    manifest["config"] = config_.canonical();
    manifest["config_hash"] = sha256_hex(config_.canonical().dump());
    auto files = [](const std::vector<std::string>& paths) {
        nlohmann::json list = nlohmann::json::array();
        for (const auto& p : paths) {
            nlohmann::json entry{{"path", p}, {"sha256", sha256_file(p)}};
            if (fs::path(p).extension() == ".csv") {
                entry["rows"] = data_rows(p);
            }
            list.push_back(entry);
        }
        return list;
    };
    manifest["inputs"] = files(inputs_);
    manifest["outputs"] = files(outputs_);
    fs::create_directories(config_.out);
    std::ofstream o(out("run_manifest.json"), std::ios::binary);
    o << manifest.dump(2) << '\n';
    if (!o) {
        throw DataError("cannot write " + out("run_manifest.json"));
    }
}

void Run::execute() {
    config_.validate();
    if (command_ == "harvest") {
        do_harvest();
    } else if (command_ == "ingest") {
        do_ingest();
    } else if (command_ == "synth") {
        do_synth();
    } else if (command_ == "benchmark") {
        do_pipeline(1);
    } else if (command_ == "score") {
        do_pipeline(2);
    } else if (command_ == "aggregate") {
        do_pipeline(3);
    } else if (command_ == "report") {
        do_pipeline(4);
    } else if (command_ == "all") {
        if (!config_.raw.empty() && !config_.journals.empty()) {
            do_ingest();
        }
        do_pipeline(4);
    }
    write_manifest();
}

}  // namespace

void RunConfig::validate() const {
    if (min_journals < 1 || min_docs < 1 || quartile_min_docs < 1) {
        throw ValidationError("thresholds must be at least 1");
    }
    if (workers < 1) {
        throw ValidationError("workers must be at least 1");
    }
    if (levels.empty() || indicators.empty()) {
        throw ValidationError("level and indicator lists must not be empty");
    }
    if (first_year > last_year) {
        throw ValidationError("first_year must not exceed last_year");
    }
    if (max_retries < 0) {
        throw ValidationError("max_retries must be non-negative");
    }
    for (const auto* path : {&discipline_map, &country_groups, &territories, &journals}) {
        if (!path->empty() && !fs::exists(*path)) {
            throw DataError("input file not found: " + *path);
        }
    }
}

PipelineConfig RunConfig::pipeline() const {
    PipelineConfig p;
    p.levels = levels;
    p.years = years;
    p.eligibility.min_journals = min_journals;
    p.eligibility.min_docs = min_docs;
    p.strict_denominator = strict_denominator;
    p.indicators = indicators;
    p.workers = workers;
    return p;
}

nlohmann::json RunConfig::canonical() const {
    nlohmann::json j{{"input", input},
                     {"out", out},
                     {"raw", raw},
                     {"journals", journals},
                     {"fixtures", fixtures},
                     {"discipline_map", discipline_map},
                     {"country_groups", country_groups},
                     {"territories", territories},
                     {"level", join_levels(levels)},
                     {"min_journals", min_journals},
                     {"min_docs", min_docs},
                     {"quartile_min_docs", quartile_min_docs},
                     {"quartile_indicator", indicator_name(quartile_indicator)},
                     {"indicators", join_indicators(indicators)},
                     {"years", years},
                     {"strict_denominator", strict_denominator},
                     {"strict_audit", strict_audit},
                     {"first_year", first_year},
                     {"last_year", last_year},
                     {"rate_limit", rate_limit},
                     {"max_retries", max_retries},
                     {"map_discipline", map_discipline},
                     {"synth", synth}};
    j["map_year"] = map_year ? nlohmann::json(*map_year) : nlohmann::json();
    j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json();
    return j;
}

void apply_json(RunConfig& c, const nlohmann::json& j) {
    if (!j.is_object()) {
        throw ValidationError("config must be a JSON object");
    }
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "input") c.input = value.get<std::string>();
            else if (key == "out") c.out = value.get<std::string>();
            else if (key == "raw") c.raw = value.get<std::string>();
            else if (key == "journals") c.journals = value.get<std::string>();
            else if (key == "fixtures") c.fixtures = value.get<std::string>();
            else if (key == "discipline_map") c.discipline_map = value.get<std::string>();
            else if (key == "country_groups") c.country_groups = value.get<std::string>();
            else if (key == "territories") c.territories = value.get<std::string>();
            else if (key == "level") c.levels = parse_levels(value.get<std::string>());
            else if (key == "min_journals") c.min_journals = value.get<int>();
            else if (key == "min_docs") c.min_docs = value.get<Count>();
            else if (key == "quartile_min_docs") c.quartile_min_docs = value.get<Count>();
            else if (key == "quartile_indicator") {
                const auto id = parse_indicator(value.get<std::string>());
                if (!id) throw ValidationError("unknown quartile_indicator");
                c.quartile_indicator = *id;
            }
            else if (key == "indicators") {
                if (value.is_array()) {
                    std::string joined;
                    for (const auto& v : value) joined += v.get<std::string>() + ",";
                    c.indicators = parse_indicator_list(joined);
                } else {
                    c.indicators = parse_indicator_list(value.get<std::string>());
                }
            }
            else if (key == "years") c.years = value.get<std::vector<int>>();
            else if (key == "strict_denominator") c.strict_denominator = value.get<bool>();
            else if (key == "strict_audit") c.strict_audit = value.get<bool>();
            else if (key == "workers") c.workers = value.get<int>();
            else if (key == "first_year") c.first_year = value.get<int>();
            else if (key == "last_year") c.last_year = value.get<int>();
            else if (key == "rate_limit") c.rate_limit = value.get<double>();
            else if (key == "max_retries") c.max_retries = value.get<int>();
            else if (key == "map_discipline") c.map_discipline = value.get<std::string>();
            else if (key == "map_year") c.map_year = value.get<int>();
            else if (key == "seed") c.seed = value.get<std::uint64_t>();
            else if (key == "synth") c.synth = value;
            else throw ValidationError("unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad config value: ") + e.what());
    }
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 failed");
    }
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < length; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

std::string sha256_file(const std::string& path) { return sha256_hex(read_file(path)); }

int run_cli(int argc, char** argv) {
    CLI::App app{"Journal internationalization and country globalization scores"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string log_level = "info";
    std::optional<int> min_journals;
    std::optional<Count> min_docs;
    std::optional<Count> quartile_min_docs;
    std::optional<std::string> level;
    std::optional<std::string> indicators;
    bool strict_denominator = false;
    std::optional<int> workers;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> input;
    std::optional<std::string> raw;
    std::optional<std::string> journals;
    std::optional<std::string> fixtures;
    std::optional<int> first_year;
    std::optional<int> last_year;

    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off");
    app.add_option("--min-journals", min_journals, "eligibility: minimum qualifying journals");
    app.add_option("--min-docs", min_docs, "eligibility: minimum documents per journal-year");
    app.add_option("--quartile-min-docs", quartile_min_docs, "minimum documents for quartile ranking");
    app.add_option("--level", level, "comma list of narrow, broad, all");
    app.add_option("--indicators", indicators, "comma list of indicator names");
    app.add_flag("--strict-denominator", strict_denominator, "divide by all of a country's documents");
    app.add_option("--workers", workers, "worker threads");
    app.add_option("--seed", seed, "synth seed");
    app.add_option("--out", out, "output directory");
    app.add_option("--input", input, "corpus CSV directory");
    app.add_option("--raw", raw, "raw response directory");
    app.add_option("--journals", journals, "journal metadata CSV");
    app.add_option("--fixtures", fixtures, "saved search responses for harvest");
    app.add_option("--first-year", first_year, "first harvest year");
    app.add_option("--last-year", last_year, "last harvest year");

    const std::vector<std::pair<std::string, std::string>> commands{
        {"harvest", "query facet counts for every journal-year"},
        {"ingest", "clean raw responses into corpus CSVs"},
        {"benchmark", "discipline benchmark distributions"},
        {"score", "journal indicator values"},
        {"aggregate", "country globalization scores"},
        {"report", "quartiles, correlations, group series and map values"},
        {"synth", "generate a synthetic corpus"},
        {"all", "ingest (when configured) and every pipeline stage"}};
    for (const auto& [name, description] : commands) {
        app.add_subcommand(name, description);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        const auto rest = app.remaining();
        if (!rest.empty() && rest.front().rfind("-", 0) != 0) {
            std::cerr << "unknown subcommand '" << rest.front() << "'\n\n" << app.help();
        } else {
            std::cerr << e.what() << "\n\n" << app.help();
        }
        return kExitValidation;
    }

    auto logger = spdlog::get("globsci");
    if (!logger) {
        logger = spdlog::stderr_color_mt("globsci");
    }
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::from_str(log_level));

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        RunConfig config;
        if (!config_path.empty()) {
            const auto text = read_file(config_path);
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(text);
            } catch (const nlohmann::json::exception& e) {
                throw DataError(config_path, 1, 1, std::string("invalid JSON: ") + e.what());
            }
            apply_json(config, j);
        }
        if (min_journals) config.min_journals = *min_journals;
        if (min_docs) config.min_docs = *min_docs;
        if (quartile_min_docs) config.quartile_min_docs = *quartile_min_docs;
        if (level) config.levels = parse_levels(*level);
        if (indicators) config.indicators = parse_indicator_list(*indicators);
        if (strict_denominator) config.strict_denominator = true;
        if (workers) config.workers = *workers;
        if (seed) config.seed = *seed;
        if (out) config.out = *out;
        if (input) config.input = *input;
        if (raw) config.raw = *raw;
        if (journals) config.journals = *journals;
        if (fixtures) config.fixtures = *fixtures;
        if (first_year) config.first_year = *first_year;
        if (last_year) config.last_year = *last_year;

        Run(command, std::move(config)).execute();
        return kExitOk;
    } catch (const ValidationError& e) {
        spdlog::error("{}", e.what());
        return kExitValidation;
    } catch (const DataError& e) {
        spdlog::error("{}", e.what());
        return kExitData;
    } catch (const std::exception& e) {
        spdlog::error("internal error: {}", e.what());
        return kExitInternal;
    }
}

}  // namespace globsci
