#include "toxaug/remote_scorer.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "toxaug/errors.hpp"

namespace toxaug {

namespace {

using nlohmann::json;

bool transient_status(int status) {
    return status == 408 || status == 429 || (status >= 500 && status < 600);
}

} // namespace

int RetryPolicy::backoff_ms(int attempt) const {
    double delay = static_cast<double>(initial_backoff_ms) * std::pow(multiplier, attempt - 1);
    delay = std::min(delay, static_cast<double>(max_backoff_ms));
    return static_cast<int>(delay);
}

TokenBucket::TokenBucket(double rate_per_sec, double burst)
    : rate_(rate_per_sec), burst_(std::max(burst, 1.0)), tokens_(burst_),
      last_(std::chrono::steady_clock::now()) {
    if (rate_per_sec <= 0.0) {
        throw ConfigError("rate_per_sec must be > 0");
    }
}

void TokenBucket::acquire() {
    while (true) {
        double wait_seconds = 0.0;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            const auto now = std::chrono::steady_clock::now();
            const double elapsed = std::chrono::duration<double>(now - last_).count();
            last_ = now;
            tokens_ = std::min(burst_, tokens_ + elapsed * rate_);
            if (tokens_ >= 1.0) {
                tokens_ -= 1.0;
                return;
            }
            wait_seconds = (1.0 - tokens_) / rate_;
        }
        std::this_thread::sleep_for(std::chrono::duration<double>(wait_seconds));
    }
}

void split_endpoint(const std::string& endpoint, std::string& host_base, std::string& path) {
    const std::size_t scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("endpoint must include a scheme: \"" + endpoint + "\"");
    }
    const std::size_t path_start = endpoint.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        host_base = endpoint;
        path = "/";
    } else {
        host_base = endpoint.substr(0, path_start);
        path = endpoint.substr(path_start);
    }
    if (host_base.size() == scheme_end + 3) {
        throw ConfigError("endpoint has no host: \"" + endpoint + "\"");
    }
}

RemoteScorer::RemoteScorer(RemoteScorerOptions options, std::string scorer_id)
    : options_(std::move(options)), scorer_id_(std::move(scorer_id)),
      bucket_(options_.rps, options_.burst) {
    split_endpoint(options_.endpoint, host_base_, path_);
}

double RemoteScorer::score(std::string_view text) {
    if (options_.max_request_bytes > 0 && text.size() > options_.max_request_bytes) {
        throw OversizeError("text is " + std::to_string(text.size()) + " bytes, over the " +
                            std::to_string(options_.max_request_bytes) + "-byte request cap");
    }

    const std::string body = json{{"text", std::string(text)}}.dump();

    std::string last_error;
    for (int attempt = 0; attempt <= options_.retry.max_retries; ++attempt) {
        if (attempt > 0) {
            retries_.fetch_add(1, std::memory_order_relaxed);
            std::this_thread::sleep_for(std::chrono::milliseconds(options_.retry.backoff_ms(attempt)));
        }
        bucket_.acquire();

        // One client per request keeps score() safe to call from any worker.
        httplib::Client client(host_base_);
        client.set_connection_timeout(options_.timeout_ms / 1000, (options_.timeout_ms % 1000) * 1000);
        client.set_read_timeout(options_.timeout_ms / 1000, (options_.timeout_ms % 1000) * 1000);
        httplib::Headers headers;
        if (!options_.api_key.empty()) {
            headers.emplace("x-api-key", options_.api_key);
        }

        requests_sent_.fetch_add(1, std::memory_order_relaxed);
        httplib::Result response = client.Post(path_, headers, body, "application/json");

        if (!response) {
            last_error = "connection error: " + httplib::to_string(response.error());
            continue; // transient
        }
        if (transient_status(response->status)) {
            last_error = "transient HTTP " + std::to_string(response->status);
            continue;
        }
        if (response->status != 200) {
            throw BackendError("HTTP " + std::to_string(response->status) + " from " + options_.endpoint);
        }

        json parsed = json::parse(response->body, nullptr, false);
        if (parsed.is_discarded() || !parsed.is_object() || !parsed.contains("score") ||
            !parsed["score"].is_number()) {
            throw ProtocolError("response is not {\"score\": number}");
        }
        const double value = parsed["score"].get<double>();
        if (value < 0.0 || value > 1.0) {
            throw ProtocolError("score outside [0,1]: " + std::to_string(value));
        }
        return value;
    }
    throw BackendError("retries exhausted: " + last_error);
}

} // namespace toxaug
