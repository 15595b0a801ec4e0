#pragma once

#include "globsci/ingest.hpp"

#include <chrono>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace globsci {

struct TransportResponse {
    int status = 0;
    std::string body;
};

// Recoverable request failure; the harvester retries these.
class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Issues one search request. Implementations must be safe to call from
// several threads.
class Transport {
public:
    virtual ~Transport() = default;
    virtual TransportResponse fetch(const std::string& query) = 0;
};

// Canned responses keyed by query, with scripted failures and a request log.
class FixtureTransport : public Transport {
public:
    void add(const std::string& query, std::string body, int status = 200);
    // The next `times` requests for `query` fail with a TransportError.
    void fail_next(const std::string& query, int times);
    // Loads `<issn>_<year>.json` search-response files from a directory.
    void load_directory(const std::string& dir);

    TransportResponse fetch(const std::string& query) override;
    std::vector<std::string> requests() const;

private:
    mutable std::mutex mutex_;
    std::map<std::string, TransportResponse> responses_;
    std::map<std::string, int> failures_;
    std::vector<std::string> log_;
};

// Live search API over libcurl. The key is read from the environment.
class CurlTransport : public Transport {
public:
    static constexpr const char* kApiKeyVariable = "SCOPUS_API_KEY";
    static constexpr const char* kDefaultEndpoint = "https://api.elsevier.com/content/search/scopus";

    explicit CurlTransport(std::string api_key, std::string endpoint = kDefaultEndpoint);
    static CurlTransport from_environment();

    TransportResponse fetch(const std::string& query) override;

private:
    std::string api_key_;
    std::string endpoint_;
};

// Spaces requests at least 1/rate seconds apart across all threads.
class RateLimiter {
public:
    explicit RateLimiter(double requests_per_second);
    void acquire();

private:
    std::mutex mutex_;
    std::chrono::steady_clock::duration interval_{};
    std::chrono::steady_clock::time_point next_{};
};

struct HarvestCheckpoint {
    std::set<std::pair<std::string, int>> completed;
    std::optional<std::pair<std::string, int>> last_completed;
    std::map<std::string, int> retries;  // "<issn>_<year>" -> retries used
    std::string started_at;
    std::string updated_at;

    static HarvestCheckpoint load(const std::string& path);  // empty when absent
    void save(const std::string& path) const;
};

struct HarvestFailure {
    std::string journal_id;
    int year = 0;
    int attempts = 0;
    std::string error;
};

struct HarvestOptions {
    std::string out_dir;
    double rate_limit = 5.0;  // requests per second; <= 0 disables limiting
    int max_retries = 3;
    std::chrono::milliseconds backoff_base{500};
    int workers = 1;
};

struct HarvestSummary {
    std::size_t fetched = 0;
    std::size_t skipped = 0;
    std::vector<HarvestFailure> failures;
};

inline constexpr const char* kCheckpointFile = "harvest_checkpoint.json";
inline constexpr const char* kFailuresFile = "harvest_failures.json";

std::string raw_file_name(std::string_view issn, int year);

// Fetches every (journal, year) pair not yet in the checkpoint, persisting
// `<issn>_<year>.json` per success. Transport failures are retried with
// exponential backoff and then recorded in the failures manifest; any other
// exception aborts the run with the checkpoint intact.
HarvestSummary harvest(const std::vector<std::string>& issns, int first_year, int last_year, Transport& transport,
                       const HarvestOptions& options);

// Reads every persisted raw response in a directory, ordered by file name.
std::vector<RawFacetResponse> read_raw_directory(const std::string& dir);

}  // namespace globsci
