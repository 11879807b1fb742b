#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <string>

#include "toxaug/scorer.hpp"

namespace toxaug {

struct RetryPolicy {
    int max_retries = 5;
    int initial_backoff_ms = 100;
    double multiplier = 2.0;
    int max_backoff_ms = 5000;

    // Backoff before retry attempt n (n = 1 is the first retry).
    int backoff_ms(int attempt) const;
};

// Blocking token bucket: acquire() sleeps until the request rate stays at or
// below rate_per_sec, with up to burst tokens of slack.
class TokenBucket {
  public:
    TokenBucket(double rate_per_sec, double burst);

    void acquire();

  private:
    double rate_;
    double burst_;
    double tokens_;
    std::chrono::steady_clock::time_point last_;
    std::mutex mutex_;
};

struct RemoteScorerOptions {
    std::string endpoint;   // e.g. http://127.0.0.1:8080/score
    std::string api_key;    // sent as x-api-key header when non-empty
    std::size_t max_request_bytes = 20480;
    double rps = 10.0;
    double burst = 10.0;
    RetryPolicy retry;
    int timeout_ms = 10000;
};

// HTTP classifier client. Wire contract: POST {"text": ...} returns 200 with
// {"score": ...}, score in [0,1]. Transient failures (connect errors, 408,
// 429, 5xx) are retried with exponential backoff; anything else fails the
// sample. Oversize texts are rejected before any request goes out.
class RemoteScorer final : public ScorerBackend {
  public:
    explicit RemoteScorer(RemoteScorerOptions options, std::string scorer_id = "remote");

    const std::string& scorer_id() const override { return scorer_id_; }
    double score(std::string_view text) override;
    std::size_t max_text_bytes() const override { return options_.max_request_bytes; }

    std::uint64_t requests_sent() const { return requests_sent_.load(); }
    std::uint64_t retries() const { return retries_.load(); }

  private:
    RemoteScorerOptions options_;
    std::string scorer_id_;
    std::string host_base_; // scheme://host:port
    std::string path_;
    TokenBucket bucket_;
    std::atomic<std::uint64_t> requests_sent_{0};
    std::atomic<std::uint64_t> retries_{0};
};

// Splits an endpoint URL into its scheme://host[:port] base and path.
void split_endpoint(const std::string& endpoint, std::string& host_base, std::string& path);

} // namespace toxaug
