#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "test_util.hpp"
#include "toxaug/config.hpp"
#include "toxaug/errors.hpp"

using namespace toxaug;

namespace {

RunConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

} // namespace

TEST_CASE("config parsing covers the full key set") {
    const RunConfig config = parse(
        "# pipeline\n"
        "strategy = \"INST\"\n"
        "high_thresh = 0.5\n"
        "low_thresh = 0.1\n"
        "prm_tox = 0.9\n"
        "prm_nont = 0.5   # MEDA-style\n"
        "seed = 1234\n"
        "input = \"in.jsonl\"\n"
        "output = \"out.jsonl\"\n"
        "workers = 4\n"
        "pad = true\n"
        "pad_token = \"<|pad|>\"\n"
        "toxic_instructions = [\"one\", \"two\"]\n"
        "meda_low_tag = \"toxicity: 0.1\"\n"
        "backend = \"remote\"\n"
        "endpoint = \"http://127.0.0.1:9/score\"\n"
        "rps = 25.5\n"
        "max_retries = 2\n"
        "metric_weights.EMT = 2.0\n"
        "metric_weights.TP = 0.5\n");

    CHECK(config.strategy.strategy == Strategy::Inst);
    CHECK(config.strategy.prm_nont == 0.5);
    CHECK(config.strategy.seed == 1234);
    CHECK(config.input == "in.jsonl");
    CHECK(config.workers == 4);
    CHECK(config.pad_mode);
    CHECK(config.strategy.toxic_instructions == std::vector<std::string>{"one", "two"});
    CHECK(config.backend == "remote");
    CHECK(config.rps == 25.5);
    CHECK(config.retry.max_retries == 2);
    CHECK(config.metric_weights.at("EMT") == 2.0);
    CHECK(config.metric_weights.at("TP") == 0.5);
}

TEST_CASE("config parse errors") {
    CHECK_THROWS_AS(parse("strategy = \"NOPE\"\n"), ConfigError);
    CHECK_THROWS_AS(parse("mystery_key = 1\n"), ParseError);
    CHECK_THROWS_AS(parse("workers 4\n"), ParseError);
    CHECK_THROWS_AS(parse("workers = \"four\"\nworkers = 4\n"), Error);
    CHECK_THROWS_AS(parse("seed = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse("seed = 1\nseed = 2\n"), ParseError);
    CHECK_THROWS_AS(parse("pad = maybe\n"), ParseError);
    CHECK_THROWS_AS(parse("toxic_instructions = [\"unterminated\n"), ParseError);
}

TEST_CASE("defaults carry the shipped control variables") {
    const RunConfig config = parse("");
    CHECK(config.strategy.high_thresh == 0.5);
    CHECK(config.strategy.low_thresh == 0.1);
    CHECK(config.strategy.prm_tox == 0.9);
    CHECK(config.strategy.control_token_budget == 48);
    CHECK(config.strategy.max_sample_tokens == 2000);
    CHECK(config.strategy.meda_low_tag == "toxicity: 0.1");
    CHECK(config.strategy.meda_high_tag == "toxicity: 0.5");
    CHECK(config.strategy.nontoxic_instructions.size() == 3);
    CHECK(config.strategy.toxic_instructions.size() == 3);
    CHECK(config.pad_token == "<|pad|>");
    CHECK(config.max_request_bytes == 20480);
}

TEST_CASE("validation rejects each bound violation by name") {
    WhitespaceTokenizer tokenizer;

    auto expect_rejection = [&](const std::string& snippet, const std::string& field) {
        RunConfig config = parse(snippet);
        CHECK_THROWS_WITH_AS(validate_config(config, tokenizer), doctest::Contains(field.c_str()),
                             ConfigError);
    };

    expect_rejection("low_thresh = 0.0\n", "low_thresh");
    expect_rejection("low_thresh = 1.0\n", "low_thresh");
    expect_rejection("high_thresh = 0.0\n", "high_thresh");
    expect_rejection("high_thresh = 1.0\n", "high_thresh");
    expect_rejection("low_thresh = 0.6\nhigh_thresh = 0.5\n", "low_thresh");
    expect_rejection("prm_tox = 1.5\n", "prm_tox");
    expect_rejection("prm_nont = 1.0001\n", "prm_nont");
    expect_rejection("workers = 0\n", "workers");
    expect_rejection("failure_ceiling = 1.5\n", "failure_ceiling");
    expect_rejection("rps = 0\n", "rps");
    expect_rejection("toxic_threshold = 1.0\n", "toxic_threshold");
    expect_rejection("backend = \"oracle\"\n", "backend");
    expect_rejection("input = \"same\"\noutput = \"same\"\n", "distinct");
}

TEST_CASE("boundary probability values are accepted") {
    WhitespaceTokenizer tokenizer;
    RunConfig config = parse("prm_tox = 0\nprm_nont = 1\n");
    CHECK_NOTHROW(validate_config(config, tokenizer));
}

TEST_CASE("templates over the token budget fail validation up front") {
    WhitespaceTokenizer tokenizer;
    RunConfig config = parse("");
    config.strategy.nontoxic_instructions.push_back(test_util::words(49));
    CHECK_THROWS_WITH_AS(validate_config(config, tokenizer),
                         doctest::Contains("nontoxic_instructions"), ConfigError);

    RunConfig tags = parse("");
    tags.strategy.meda_high_tag = test_util::words(60);
    CHECK_THROWS_WITH_AS(validate_config(tags, tokenizer), doctest::Contains("meda_high_tag"),
                         ConfigError);

    // Shipped defaults fit the budget.
    RunConfig defaults = parse("");
    CHECK_NOTHROW(validate_config(defaults, tokenizer));
}

TEST_CASE("the api key comes from the environment only") {
    RunConfig config = parse("api_key = \"from-file\"\n");
    CHECK(config.api_key == "from-file");

    setenv("TOXAUG_API_KEY", "from-env", 1);
    apply_env_overrides(config);
    CHECK(config.api_key == "from-env");
    unsetenv("TOXAUG_API_KEY");

    apply_env_overrides(config);
    CHECK(config.api_key == "from-env"); // unset leaves the last value alone
}
