#include "globsci/error.hpp"
#include "globsci/harvest.hpp"
#include "globsci/ingest.hpp"
#include "support.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <atomic>
#include <filesystem>

using namespace globsci;
namespace fs = std::filesystem;

namespace {

std::string search_body(Count total, const FacetCounts& countries, const FacetCounts& institutions = {},
                        const FacetCounts& languages = {}) {
    auto facet = [](const char* name, const FacetCounts& counts) {
        nlohmann::json cats = nlohmann::json::array();
        for (const auto& [label, n] : counts) {
            cats.push_back({{"label", label}, {"hitCount", std::to_string(n)}});
        }
        return nlohmann::json{{"name", name}, {"category", cats}};
    };
    nlohmann::json body;
    body["search-results"]["opensearch:totalResults"] = std::to_string(total);
    body["search-results"]["facet"] = nlohmann::json::array(
        {facet("country", countries), facet("af-id", institutions), facet("language", languages)});
    return body.dump();
}

void add_fixture(FixtureTransport& t, const std::string& issn, int year, Count total) {
    t.add(build_query(issn, year), search_body(total, {{"Germany", total}, {"Undefined", 1}}, {{"60000001", 2}},
                                               {{"English", total}}));
}

class KillingTransport : public Transport {
public:
    KillingTransport(Transport& inner, int kill_at) : inner_(inner), kill_at_(kill_at) {}
    TransportResponse fetch(const std::string& query) override {
        if (++calls_ == kill_at_) {
            throw std::runtime_error("process killed");
        }
        return inner_.fetch(query);
    }

private:
    Transport& inner_;
    int kill_at_;
    std::atomic<int> calls_{0};
};

HarvestOptions fast_options(const std::string& dir, int workers = 1) {
    HarvestOptions o;
    o.out_dir = dir;
    o.rate_limit = 0;
    o.backoff_base = std::chrono::milliseconds(1);
    o.workers = workers;
    return o;
}

}  // namespace

TEST_CASE("query template") {
    CHECK(build_query("0393-2729", 2017) == "ISSN(0393-2729) AND DOCTYPE(AR OR RE OR CP) AND PUBYEAR = 2017");
    CHECK(build_query("0044-3506", 2017) == "ISSN(0044-3506) AND DOCTYPE(AR OR RE OR CP) AND PUBYEAR = 2017");
    CHECK(build_query("1234-567X", 2005) == "ISSN(1234-567X) AND DOCTYPE(AR OR RE OR CP) AND PUBYEAR = 2005");
    CHECK_THROWS_AS(build_query("12345", 2017), ValidationError);
    try {
        build_query("12345", 2017);
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("12345") != std::string::npos);
    }
    CHECK_THROWS_AS(build_query("1234-5678", 817), ValidationError);
    CHECK_THROWS_AS(build_query("1234-567x", 2017), ValidationError);
    CHECK(is_valid_issn("0000-0000"));
    CHECK_FALSE(is_valid_issn("0000 0000"));
}

TEST_CASE("parse search response") {
    const auto raw = parse_search_response(
        search_body(40, {{"Germany", 30}, {"France", 12}}, {{"60001", 5}}, {{"English", 38}, {"German", 2}}),
        "0393-2729", 2017);
    CHECK(raw.journal_id == "0393-2729");
    CHECK(raw.year == 2017);
    CHECK(raw.reported_total == 40);
    CHECK(raw.doc_type_filter == "DOCTYPE(AR OR RE OR CP)");
    CHECK(raw.country_facet == FacetCounts{{"Germany", 30}, {"France", 12}});
    CHECK(raw.institution_facet == FacetCounts{{"60001", 5}});
    CHECK(raw.language_facet.size() == 2);

    CHECK_THROWS_AS(parse_search_response("not json", "0393-2729", 2017), DataError);
    CHECK_THROWS_AS(parse_search_response("{}", "0393-2729", 2017), DataError);
    const auto bare = parse_search_response(R"({"search-results":{"opensearch:totalResults":7}})", "0000-0000", 2001);
    CHECK(bare.reported_total == 7);
    CHECK(bare.country_facet.empty());
}

TEST_CASE("raw response JSON round-trip") {
    RawFacetResponse raw;
    raw.journal_id = "0000-0001";
    raw.year = 2010;
    raw.reported_total = 12;
    raw.country_facet = {{"Germany", 10}, {"Undefined", 2}};
    raw.institution_facet = {{"I1", 3}};
    raw.language_facet = {{"English", 12}};
    CHECK(raw_from_json(to_json(raw)) == raw);
}

TEST_CASE("clean subtracts the undefined facet from the total") {
    RawFacetResponse raw;
    raw.journal_id = "0000-0001";
    raw.year = 2010;
    raw.reported_total = 100;
    raw.country_facet = {{"Germany", 80}, {"France", 30}, {"Undefined", 5}};
    const auto r = clean(raw);
    CHECK(r.total_docs == 95);
    CHECK(r.undefined_country_docs == 5);
    CHECK(r.total_docs + r.undefined_country_docs == raw.reported_total);
    CHECK(r.country_counts == FacetCounts{{"DE", 80}, {"FR", 30}});
}

TEST_CASE("clean keeps Hong Kong and drops other territories without touching the total") {
    RawFacetResponse raw;
    raw.journal_id = "0000-0001";
    raw.year = 2010;
    raw.reported_total = 20;
    raw.country_facet = {{"Hong Kong", 4}, {"Puerto Rico", 3}, {"United States", 18}};
    CleanAudit audit;
    auto options = default_clean_options();
    options.dropped_territories.insert("HK");
    const auto r = clean(raw, options, &audit);
    CHECK(r.total_docs == 20);
    CHECK(r.country_counts == FacetCounts{{"HK", 4}, {"US", 18}});
    CHECK(audit.dropped == std::vector<std::string>{"PR"});
}

TEST_CASE("clean rejects undefined counts above the total") {
    RawFacetResponse raw;
    raw.journal_id = "0000-0001";
    raw.year = 2010;
    raw.reported_total = 3;
    raw.country_facet = {{"Undefined", 4}};
    CHECK_THROWS_AS(clean(raw), DataError);
}

TEST_CASE("clean merges aliases and keeps unresolved labels") {
    RawFacetResponse raw;
    raw.journal_id = "0000-0001";
    raw.year = 2010;
    raw.reported_total = 10;
    raw.country_facet = {{"Russian Federation", 3}, {"Russia", 2}, {"Atlantis", 1}, {"Germany", 6}};
    raw.language_facet = {{"English", 9}, {"Russian", 2}};
    CleanAudit audit;
    const auto r = clean(raw, default_clean_options(), &audit);
    CHECK(r.country_counts == FacetCounts{{"Atlantis", 1}, {"DE", 6}, {"RU", 5}});
    CHECK(audit.unresolved == std::vector<std::string>{"Atlantis"});
    CHECK(r.language_counts == FacetCounts{{"English", 9}, {"Russian", 2}});
}

TEST_CASE("clean is idempotent") {
    RawFacetResponse raw;
    raw.journal_id = "0000-0001";
    raw.year = 2010;
    raw.reported_total = 50;
    raw.country_facet = {{"Germany", 30}, {"Macao", 2}, {"Undefined", 3}, {"Brazil", 20}};
    raw.institution_facet = {{"B", 4}, {"A", 7}};
    raw.language_facet = {{"English", 40}};
    const auto once = clean(raw);
    auto twice = clean(to_raw(once));
    CHECK(twice.undefined_country_docs == 0);
    twice.undefined_country_docs = once.undefined_country_docs;
    CHECK(twice == once);
}

TEST_CASE("load corpus from CSV files") {
    support::TempDir dir;
    const auto paths = CorpusPaths::in_directory(dir.str());
    support::spit(paths.journals,
                  "issn,title,publisher_country,narrow_codes\n0000-0001,A,DE,11\n0000-0002,\"B, the journal\",,11;33\n"
                  "0000-0003,C,FR,27\n");
    support::spit(paths.totals, "issn,year,total_docs,undefined_docs\n0000-0001,2010,3,0\n0000-0002,2010,4,1\n"
                                "0000-0003,2010,2,0\n");
    support::spit(paths.countries, "issn,year,country,doc_count\n0000-0001,2010,DE,3\n0000-0002,2010,FR,4\n"
                                   "0000-0003,2010,US,2\n");
    support::spit(paths.institutions, "issn,year,institution_id,doc_count\n0000-0001,2010,I1,2\n");
    support::spit(paths.languages, "issn,year,language,doc_count\r\n0000-0001,2010,English,3\r\n");
    const auto corpus = load_corpus(paths, DisciplineMap::defaults());
    CHECK(corpus.journals().size() == 3);
    CHECK(corpus.records().size() == 3);
    const auto j2 = *corpus.journal_index("0000-0002");
    CHECK(corpus.journals()[j2].title == "B, the journal");
    CHECK(corpus.journals()[j2].broad_disciplines == std::set<std::string>{"LIFE", "SOC"});
    for (const auto* code : {"LIFE", "SOC", "ALL"}) {
        const auto& js = corpus.disciplines()[*corpus.discipline_index(code)].journals;
        CHECK(std::find(js.begin(), js.end(), j2) != js.end());
    }
    CHECK(corpus.english_docs(*corpus.find_record(*corpus.journal_index("0000-0001"), 2010)) == 3);
}

TEST_CASE("empty file set loads an empty corpus") {
    support::TempDir dir;
    const auto corpus = load_corpus(CorpusPaths::in_directory(dir.str()), DisciplineMap::defaults());
    CHECK(corpus.journals().empty());
    CHECK(corpus.records().empty());
}

TEST_CASE("load errors name file, line and column") {
    support::TempDir dir;
    const auto paths = CorpusPaths::in_directory(dir.str());
    support::spit(paths.journals, "issn,title,publisher_country,narrow_codes\n0000-0001,A,DE,11\n");
    support::spit(paths.totals, "issn,year,total_docs,undefined_docs\n0000-0001,2010,3,0\n0000-0001,2010,3,0\n");
    support::spit(paths.countries, "issn,year,country,doc_count\n0000-0001,2010,DE,3\n");
    support::spit(paths.institutions, "issn,year,institution_id,doc_count\n");
    support::spit(paths.languages, "issn,year,language,doc_count\n");
    try {
        load_corpus(paths, DisciplineMap::defaults());
        FAIL("duplicate journal-year accepted");
    } catch (const DataError& e) {
        CHECK(e.file() == paths.totals);
        CHECK(e.line() == 3);
    }

    support::spit(paths.totals, "issn,year,total_docs,undefined_docs\n0000-0001,2010,three,0\n");
    try {
        load_corpus(paths, DisciplineMap::defaults());
        FAIL("bad integer accepted");
    } catch (const DataError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
    }

    support::spit(paths.totals, "issn,year,total,undefined_docs\n");
    CHECK_THROWS_AS(load_corpus(paths, DisciplineMap::defaults()), DataError);

    fs::remove(paths.languages);
    support::spit(paths.totals, "issn,year,total_docs,undefined_docs\n0000-0001,2010,3,0\n");
    try {
        load_corpus(paths, DisciplineMap::defaults());
        FAIL("missing file accepted");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find(paths.languages) != std::string::npos);
    }
}

TEST_CASE("written records load back unchanged") {
    support::TempDir dir;
    const auto paths = CorpusPaths::in_directory(dir.str());
    std::vector<JournalMeta> journals{support::journal("0000-0002", {"33"}), support::journal("0000-0001", {"11"}, "DE")};
    std::vector<JournalYearRecord> records{
        support::record("0000-0002", 2011, 4, {{"FR", 4}}, {{"I2", 1}}, {}, 2),
        support::record("0000-0001", 2010, 3, {{"DE", 2}, {"US", 2}}, {{"I1", 3}}, {{"English", 3}})};
    write_journals(paths.journals, journals);
    write_records(paths, records);
    const auto corpus = load_corpus(paths, DisciplineMap::defaults());
    for (const auto& r : records) {
        const auto* packed = corpus.find_record(*corpus.journal_index(r.journal_id), r.year);
        REQUIRE(packed != nullptr);
        CHECK(corpus.unpack(*packed) == r);
    }
}

TEST_CASE("harvest persists one file per journal-year") {
    support::TempDir dir;
    FixtureTransport transport;
    for (const auto* issn : {"0000-0001", "0000-0002"}) {
        for (const int year : {2010, 2011}) {
            add_fixture(transport, issn, year, 10);
        }
    }
    const auto summary = harvest({"0000-0001", "0000-0002"}, 2010, 2011, transport, fast_options(dir.str()));
    CHECK(summary.fetched == 4);
    CHECK(summary.failures.empty());
    int files = 0;
    for (const auto& entry : fs::directory_iterator(dir.str())) {
        files += entry.path().filename().string().rfind("0000-", 0) == 0 ? 1 : 0;
    }
    CHECK(files == 4);
    const auto raws = read_raw_directory(dir.str());
    REQUIRE(raws.size() == 4);
    CHECK(raws.front().journal_id == "0000-0001");
    CHECK(raws.front().reported_total == 10);
}

TEST_CASE("harvest retries a flaky transport") {
    support::TempDir dir;
    FixtureTransport transport;
    add_fixture(transport, "0000-0001", 2010, 5);
    transport.fail_next(build_query("0000-0001", 2010), 1);
    const auto summary = harvest({"0000-0001"}, 2010, 2010, transport, fast_options(dir.str()));
    CHECK(summary.fetched == 1);
    CHECK(summary.failures.empty());
    const auto checkpoint = HarvestCheckpoint::load(dir / kCheckpointFile);
    CHECK(checkpoint.retries.at("0000-0001_2010") == 1);
    CHECK(fs::exists(dir / raw_file_name("0000-0001", 2010)));
}

TEST_CASE("harvest records permanent failures without aborting") {
    support::TempDir dir;
    FixtureTransport transport;
    add_fixture(transport, "0000-0001", 2010, 5);
    add_fixture(transport, "0000-0002", 2010, 5);
    transport.fail_next(build_query("0000-0001", 2010), 100);
    auto options = fast_options(dir.str());
    options.max_retries = 2;
    const auto summary = harvest({"0000-0001", "0000-0002"}, 2010, 2010, transport, options);
    CHECK(summary.fetched == 1);
    REQUIRE(summary.failures.size() == 1);
    CHECK(summary.failures.front().attempts == 3);
    CHECK(fs::exists(dir / kFailuresFile));
    const auto manifest = nlohmann::json::parse(support::slurp(dir / kFailuresFile));
    CHECK(manifest.size() == 1);
}

TEST_CASE("harvest resumes without refetching completed pairs") {
    support::TempDir dir;
    FixtureTransport transport;
    const std::vector<std::string> issns{"0000-0001", "0000-0002", "0000-0003"};
    for (const auto& issn : issns) {
        for (const int year : {2010, 2011}) {
            add_fixture(transport, issn, year, 7);
        }
    }
    KillingTransport killer(transport, 4);
    CHECK_THROWS(harvest(issns, 2010, 2011, killer, fast_options(dir.str())));
    const auto before = transport.requests();
    CHECK(before.size() == 3);

    const auto summary = harvest(issns, 2010, 2011, transport, fast_options(dir.str()));
    CHECK(summary.skipped == 3);
    CHECK(summary.fetched == 3);
    const auto log = transport.requests();
    std::set<std::string> unique(log.begin(), log.end());
    CHECK(unique.size() == log.size());
    CHECK(log.size() == 6);
}

TEST_CASE("harvest output is identical across worker counts") {
    support::TempDir a;
    support::TempDir b;
    FixtureTransport transport;
    std::vector<std::string> issns;
    for (int j = 0; j < 6; ++j) {
        issns.push_back("0000-000" + std::to_string(j));
        for (int year = 2010; year <= 2012; ++year) {
            add_fixture(transport, issns.back(), year, 3 + j + year % 7);
        }
    }
    harvest(issns, 2010, 2012, transport, fast_options(a.str(), 1));
    harvest(issns, 2010, 2012, transport, fast_options(b.str(), 4));
    for (const auto& issn : issns) {
        for (int year = 2010; year <= 2012; ++year) {
            const auto name = raw_file_name(issn, year);
            CHECK(support::slurp(a / name) == support::slurp(b / name));
        }
    }
}

TEST_CASE("harvest validates its inputs") {
    support::TempDir dir;
    FixtureTransport transport;
    CHECK_THROWS_AS(harvest({"bad"}, 2010, 2010, transport, fast_options(dir.str())), ValidationError);
    CHECK_THROWS_AS(harvest({"0000-0001"}, 2011, 2010, transport, fast_options(dir.str())), ValidationError);
    // Unknown queries answer 404 and end up in the failures manifest.
    auto options = fast_options(dir.str());
    options.max_retries = 0;
    const auto summary = harvest({"0000-0001"}, 2010, 2010, transport, options);
    CHECK(summary.failures.size() == 1);
}

TEST_CASE("fixture transport loads saved responses") {
    support::TempDir dir;
    support::spit(dir / "0000-0001_2010.json", search_body(9, {{"Chile", 9}}));
    FixtureTransport transport;
    transport.load_directory(dir.str());
    const auto response = transport.fetch(build_query("0000-0001", 2010));
    CHECK(response.status == 200);
    CHECK(parse_search_response(response.body, "0000-0001", 2010).reported_total == 9);
    CHECK(transport.fetch(build_query("0000-0001", 2011)).status == 404);
}
