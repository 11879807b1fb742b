#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>

#include "toxaug/remote_scorer.hpp"
#include "toxaug/tokenizer.hpp"
#include "toxaug/types.hpp"

namespace toxaug {

// Full run configuration: strategy parameters plus pipeline wiring. Loaded
// from a key = value config file; CLI flags override, and the API key can
// come from the TOXAUG_API_KEY environment variable.
struct RunConfig {
    StrategyConfig strategy;

    std::string input;
    std::string output;
    std::string report;
    std::string svg;
    std::string cache_path;
    std::string pool_path;
    std::string doc_scores_path;

    std::string tokenizer_id = "whitespace";

    std::string backend = "lexicon"; // lexicon | remote
    std::string lexicon_path;
    std::string endpoint;
    std::string api_key;
    double rps = 10.0;
    double burst = 10.0;
    RetryPolicy retry;
    std::size_t max_request_bytes = 20480;
    double failure_ceiling = 0.0;

    int workers = 1;
    bool pad_mode = false;
    std::string pad_token = "<|pad|>";
    bool lenient = false;

    double toxic_threshold = 0.5;
    std::size_t generations_per_prompt = 25;
    std::map<std::string, double> metric_weights;

    RemoteScorerOptions remote_options() const;
};

// key = value lines; supports strings, numbers, booleans, arrays of strings,
// #-comments, and dotted keys for metric_weights.
RunConfig parse_config(std::istream& in);
RunConfig load_config_file(const std::string& path);

// TOXAUG_API_KEY overrides api_key; secrets stay out of config files.
void apply_env_overrides(RunConfig& config);

// Rejects every bound violation with an error naming the offending field,
// including control templates that exceed the token budget.
void validate_config(const RunConfig& config, const Tokenizer& tokenizer);

} // namespace toxaug
