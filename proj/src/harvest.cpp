#include "globsci/harvest.hpp"

#include "globsci/error.hpp"

#include <curl/curl.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace globsci {

namespace fs = std::filesystem;

void FixtureTransport::add(const std::string& query, std::string body, int status) {
    std::lock_guard lock(mutex_);
    responses_[query] = {status, std::move(body)};
}

void FixtureTransport::fail_next(const std::string& query, int times) {
    std::lock_guard lock(mutex_);
    failures_[query] += times;
}

void FixtureTransport::load_directory(const std::string& dir) {
    if (!fs::is_directory(dir)) {
        throw DataError("fixture directory not found: " + dir);
    }
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto stem = entry.path().stem().string();
        const auto sep = stem.rfind('_');
        if (entry.path().extension() != ".json" || sep == std::string::npos) {
            continue;
        }
        std::ifstream in(entry.path(), std::ios::binary);
        std::stringstream body;
        body << in.rdbuf();
        const auto issn = stem.substr(0, sep);
        const int year = std::stoi(stem.substr(sep + 1));
        add(build_query(issn, year), body.str());
    }
}

TransportResponse FixtureTransport::fetch(const std::string& query) {
    std::lock_guard lock(mutex_);
    log_.push_back(query);
    auto fit = failures_.find(query);
    if (fit != failures_.end() && fit->second > 0) {
        --fit->second;
        throw TransportError("scripted failure for " + query);
    }
    const auto it = responses_.find(query);
    if (it == responses_.end()) {
        return {404, R"({"service-error":{"status":{"statusText":"not found"}}})"};
    }
    return it->second;
}

std::vector<std::string> FixtureTransport::requests() const {
    std::lock_guard lock(mutex_);
    return log_;
}

CurlTransport::CurlTransport(std::string api_key, std::string endpoint)
    : api_key_(std::move(api_key)), endpoint_(std::move(endpoint)) {
    static const bool initialized = [] {
        curl_global_init(CURL_GLOBAL_DEFAULT);
        return true;
    }();
    (void)initialized;
}

CurlTransport CurlTransport::from_environment() {
    const char* key = std::getenv(kApiKeyVariable);
    if (key == nullptr || *key == '\0') {
        throw ValidationError(std::string("environment variable ") + kApiKeyVariable + " is not set");
    }
    return CurlTransport(key);
}

namespace {

std::size_t append_body(char* data, std::size_t size, std::size_t n, void* user) {
    static_cast<std::string*>(user)->append(data, size * n);
    return size * n;
}

std::string now_iso8601() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_atomically(const std::string& path, const std::string& content) {
    const auto tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw DataError("cannot write " + tmp);
        }
        out << content;
    }
    fs::rename(tmp, path);
}

}  // namespace

TransportResponse CurlTransport::fetch(const std::string& query) {
    std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> curl(curl_easy_init(), curl_easy_cleanup);
    if (!curl) {
        throw TransportError("curl_easy_init failed");
    }
    char* escaped = curl_easy_escape(curl.get(), query.c_str(), static_cast<int>(query.size()));
    const std::string url = endpoint_ + "?query=" + escaped +
                            "&count=1&facets=country(count=300);af-id(count=300);language(count=50)";
    curl_free(escaped);

    std::string body;
    curl_slist* headers = nullptr;
    headers = curl_slist_append(headers, ("X-ELS-APIKey: " + api_key_).c_str());
    headers = curl_slist_append(headers, "Accept: application/json");
    curl_easy_setopt(curl.get(), CURLOPT_URL, url.c_str());
    curl_easy_setopt(curl.get(), CURLOPT_HTTPHEADER, headers);
    curl_easy_setopt(curl.get(), CURLOPT_WRITEFUNCTION, append_body);
    curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, &body);
    curl_easy_setopt(curl.get(), CURLOPT_TIMEOUT, 60L);
    const auto rc = curl_easy_perform(curl.get());
    curl_slist_free_all(headers);
    if (rc != CURLE_OK) {
        throw TransportError(std::string("request failed: ") + curl_easy_strerror(rc));
    }
    long status = 0;
    curl_easy_getinfo(curl.get(), CURLINFO_RESPONSE_CODE, &status);
    return {static_cast<int>(status), std::move(body)};
}

RateLimiter::RateLimiter(double requests_per_second) {
    if (requests_per_second > 0) {
        interval_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
            std::chrono::duration<double>(1.0 / requests_per_second));
    }
}

void RateLimiter::acquire() {
    if (interval_.count() == 0) {
        return;
    }
    std::chrono::steady_clock::time_point slot;
    {
        std::lock_guard lock(mutex_);
        const auto now = std::chrono::steady_clock::now();
        slot = std::max(now, next_);
        next_ = slot + interval_;
    }
    std::this_thread::sleep_until(slot);
}

HarvestCheckpoint HarvestCheckpoint::load(const std::string& path) {
    HarvestCheckpoint cp;
    if (!fs::exists(path)) {
        return cp;
    }
    try {
        std::ifstream in(path);
        const auto j = nlohmann::json::parse(in);
        for (const auto& pair : j.at("completed")) {
            cp.completed.emplace(pair.at(0).get<std::string>(), pair.at(1).get<int>());
        }
        if (j.contains("last_completed") && !j["last_completed"].is_null()) {
            cp.last_completed.emplace(j["last_completed"].at(0).get<std::string>(),
                                      j["last_completed"].at(1).get<int>());
        }
        cp.retries = j.value("retries", std::map<std::string, int>{});
        cp.started_at = j.value("started_at", std::string{});
        cp.updated_at = j.value("updated_at", std::string{});
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path, 1, 1, std::string("malformed checkpoint: ") + e.what());
    }
    return cp;
}

void HarvestCheckpoint::save(const std::string& path) const {
    nlohmann::json j;
    j["completed"] = nlohmann::json::array();
    for (const auto& [issn, year] : completed) {
        j["completed"].push_back(nlohmann::json::array({issn, year}));
    }
    j["last_completed"] =
        last_completed ? nlohmann::json::array({last_completed->first, last_completed->second}) : nlohmann::json();
    j["retries"] = retries;
    j["started_at"] = started_at;
    j["updated_at"] = updated_at;
    write_atomically(path, j.dump(2) + "\n");
}

std::string raw_file_name(std::string_view issn, int year) {
    return std::string(issn) + "_" + std::to_string(year) + ".json";
}

HarvestSummary harvest(const std::vector<std::string>& issns, int first_year, int last_year, Transport& transport,
                       const HarvestOptions& options) {
    if (options.out_dir.empty()) {
        throw ValidationError("harvest output directory not set");
    }
    if (first_year > last_year) {
        throw ValidationError("empty year range");
    }
    for (const auto& issn : issns) {
        if (!is_valid_issn(issn)) {
            throw ValidationError("malformed ISSN '" + issn + "'");
        }
    }
    fs::create_directories(options.out_dir);
    const auto checkpoint_path = (fs::path(options.out_dir) / kCheckpointFile).string();
    auto checkpoint = HarvestCheckpoint::load(checkpoint_path);
    if (checkpoint.started_at.empty()) {
        checkpoint.started_at = now_iso8601();
    }

    std::vector<std::pair<std::string, int>> pending;
    HarvestSummary summary;
    for (const auto& issn : issns) {
        for (int year = first_year; year <= last_year; ++year) {
            if (checkpoint.completed.count({issn, year}) > 0) {
                ++summary.skipped;
            } else {
                pending.emplace_back(issn, year);
            }
        }
    }

    RateLimiter limiter(options.rate_limit);
    std::mutex state_mutex;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    std::exception_ptr fatal;

    auto work = [&] {
        while (!abort.load()) {
            const auto i = next.fetch_add(1);
            if (i >= pending.size()) {
                return;
            }
            const auto& [issn, year] = pending[i];
            const auto query = build_query(issn, year);
            int attempt = 0;
            std::string last_error;
            std::optional<RawFacetResponse> raw;
            try {
                while (true) {
                    limiter.acquire();
                    try {
                        auto response = transport.fetch(query);
                        if (response.status != 200) {
                            throw TransportError("HTTP status " + std::to_string(response.status));
                        }
                        raw = parse_search_response(response.body, issn, year);
                        break;
                    } catch (const TransportError& e) {
                        last_error = e.what();
                    } catch (const DataError& e) {
                        last_error = e.what();
                    }
                    if (attempt >= options.max_retries) {
                        break;
                    }
                    ++attempt;
                    const auto delay = options.backoff_base * (1 << std::min(attempt - 1, 16));
                    spdlog::warn("{} {}: {} (retry {}/{} in {} ms)", issn, year, last_error, attempt,
                                 options.max_retries, delay.count());
                    std::this_thread::sleep_for(delay);
                }
                std::lock_guard lock(state_mutex);
                const auto key = issn + "_" + std::to_string(year);
                if (attempt > 0) {
                    checkpoint.retries[key] = attempt;
                }
                if (raw) {
                    write_atomically((fs::path(options.out_dir) / raw_file_name(issn, year)).string(),
                                     to_json(*raw).dump(2) + "\n");
                    checkpoint.completed.emplace(issn, year);
                    checkpoint.last_completed.emplace(issn, year);
                    ++summary.fetched;
                } else {
                    summary.failures.push_back({issn, year, attempt + 1, last_error});
                    spdlog::error("{} {}: giving up after {} attempts: {}", issn, year, attempt + 1, last_error);
                }
                checkpoint.updated_at = now_iso8601();
                checkpoint.save(checkpoint_path);
            } catch (...) {
                std::lock_guard lock(state_mutex);
                if (!fatal) {
                    fatal = std::current_exception();
                }
                abort = true;
                return;
            }
        }
    };

    const int workers = std::max(1, options.workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> threads;
        for (int w = 0; w < workers; ++w) {
            threads.emplace_back(work);
        }
    }

    std::sort(summary.failures.begin(), summary.failures.end(), [](const auto& a, const auto& b) {
        return a.journal_id != b.journal_id ? a.journal_id < b.journal_id : a.year < b.year;
    });
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : summary.failures) {
        failures.push_back({{"issn", f.journal_id}, {"year", f.year}, {"attempts", f.attempts}, {"error", f.error}});
    }
    write_atomically((fs::path(options.out_dir) / kFailuresFile).string(), failures.dump(2) + "\n");

    if (fatal) {
        std::rethrow_exception(fatal);
    }
    return summary;
}

std::vector<RawFacetResponse> read_raw_directory(const std::string& dir) {
    if (!fs::is_directory(dir)) {
        throw DataError("raw response directory not found: " + dir);
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (entry.path().extension() == ".json" && name != kCheckpointFile && name != kFailuresFile) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<RawFacetResponse> out;
    for (const auto& path : files) {
        std::ifstream in(path, std::ios::binary);
        try {
            out.push_back(raw_from_json(nlohmann::json::parse(in)));
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path.string(), 1, 1, e.what());
        } catch (const DataError& e) {
            throw DataError(path.string(), 1, 1, e.what());
        }
    }
    return out;
}

}  // namespace globsci
