#include "toxaug/config.hpp"

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <set>

#include "toxaug/errors.hpp"

namespace toxaug {

namespace {

struct ConfigValue {
    enum class Kind { String, Number, Boolean, StringArray } kind;
    std::string text;
    double number = 0.0;
    bool boolean = false;
    std::vector<std::string> array;
};

void skip_spaces(const std::string& s, std::size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
        ++i;
    }
}

std::string parse_quoted(const std::string& s, std::size_t& i, std::size_t line_number) {
    if (i >= s.size() || s[i] != '"') {
        throw ParseError("expected a quoted string", line_number);
    }
    ++i;
    std::string out;
    while (i < s.size()) {
        char c = s[i++];
        if (c == '"') {
            return out;
        }
        if (c == '\\') {
            if (i >= s.size()) {
                throw ParseError("dangling escape in string", line_number);
            }
            char esc = s[i++];
            switch (esc) {
            case '"': out.push_back('"'); break;
            case '\\': out.push_back('\\'); break;
            case 'n': out.push_back('\n'); break;
            case 't': out.push_back('\t'); break;
            case 'r': out.push_back('\r'); break;
            default:
                throw ParseError(std::string("unsupported escape \\") + esc, line_number);
            }
        } else {
            out.push_back(c);
        }
    }
    throw ParseError("unterminated string", line_number);
}

ConfigValue parse_value(const std::string& s, std::size_t i, std::size_t line_number) {
    skip_spaces(s, i);
    if (i >= s.size()) {
        throw ParseError("missing value", line_number);
    }
    ConfigValue value{};
    if (s[i] == '"') {
        value.kind = ConfigValue::Kind::String;
        value.text = parse_quoted(s, i, line_number);
        skip_spaces(s, i);
        if (i < s.size() && s[i] != '#') {
            throw ParseError("trailing characters after string value", line_number);
        }
        return value;
    }
    if (s[i] == '[') {
        ++i;
        value.kind = ConfigValue::Kind::StringArray;
        while (true) {
            skip_spaces(s, i);
            if (i < s.size() && s[i] == ']') {
                ++i;
                break;
            }
            value.array.push_back(parse_quoted(s, i, line_number));
            skip_spaces(s, i);
            if (i < s.size() && s[i] == ',') {
                ++i;
                continue;
            }
            if (i < s.size() && s[i] == ']') {
                ++i;
                break;
            }
            throw ParseError("expected ',' or ']' in array", line_number);
        }
        return value;
    }
    std::string token;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '#') {
        token.push_back(s[i++]);
    }
    if (token == "true" || token == "false") {
        value.kind = ConfigValue::Kind::Boolean;
        value.boolean = token == "true";
        return value;
    }
    try {
        std::size_t pos = 0;
        value.number = std::stod(token, &pos);
        if (pos != token.size()) {
            throw std::invalid_argument(token);
        }
    } catch (const std::exception&) {
        throw ParseError("cannot parse value \"" + token + "\"", line_number);
    }
    value.kind = ConfigValue::Kind::Number;
    value.text = token;
    return value;
}

std::string expect_string(const ConfigValue& value, const std::string& key) {
    if (value.kind != ConfigValue::Kind::String) {
        throw ConfigError("field " + key + " must be a string");
    }
    return value.text;
}

double expect_number(const ConfigValue& value, const std::string& key) {
    if (value.kind != ConfigValue::Kind::Number) {
        throw ConfigError("field " + key + " must be a number");
    }
    return value.number;
}

bool expect_boolean(const ConfigValue& value, const std::string& key) {
    if (value.kind != ConfigValue::Kind::Boolean) {
        throw ConfigError("field " + key + " must be true or false");
    }
    return value.boolean;
}

std::vector<std::string> expect_array(const ConfigValue& value, const std::string& key) {
    if (value.kind != ConfigValue::Kind::StringArray) {
        throw ConfigError("field " + key + " must be an array of strings");
    }
    return value.array;
}

std::uint64_t expect_uint(const ConfigValue& value, const std::string& key) {
    const double number = expect_number(value, key);
    if (number < 0.0 || number != static_cast<double>(static_cast<std::uint64_t>(number))) {
        throw ConfigError("field " + key + " must be a nonnegative integer");
    }
    return static_cast<std::uint64_t>(number);
}

} // namespace

RemoteScorerOptions RunConfig::remote_options() const {
    RemoteScorerOptions options;
    options.endpoint = endpoint;
    options.api_key = api_key;
    options.max_request_bytes = max_request_bytes;
    options.rps = rps;
    options.burst = burst;
    options.retry = retry;
    return options;
}

RunConfig parse_config(std::istream& in) {
    RunConfig config;
    std::string line;
    std::size_t line_number = 0;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        ++line_number;
        std::size_t i = 0;
        skip_spaces(line, i);
        if (i >= line.size() || line[i] == '#') {
            continue;
        }
        std::string key;
        while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_' ||
                                   line[i] == '.')) {
            key.push_back(line[i++]);
        }
        skip_spaces(line, i);
        if (key.empty() || i >= line.size() || line[i] != '=') {
            throw ParseError("expected key = value", line_number);
        }
        ++i;
        const ConfigValue value = parse_value(line, i, line_number);
        if (!seen.insert(key).second) {
            throw ParseError("duplicate key \"" + key + "\"", line_number);
        }

        if (key.rfind("metric_weights.", 0) == 0) {
            config.metric_weights[key.substr(15)] = expect_number(value, key);
        } else if (key == "strategy") {
            config.strategy.strategy = strategy_from_string(expect_string(value, key));
        } else if (key == "high_thresh") {
            config.strategy.high_thresh = expect_number(value, key);
        } else if (key == "low_thresh") {
            config.strategy.low_thresh = expect_number(value, key);
        } else if (key == "prm_tox") {
            config.strategy.prm_tox = expect_number(value, key);
        } else if (key == "prm_nont") {
            config.strategy.prm_nont = expect_number(value, key);
        } else if (key == "seed") {
            config.strategy.seed = expect_uint(value, key);
        } else if (key == "toxic_instructions") {
            config.strategy.toxic_instructions = expect_array(value, key);
        } else if (key == "nontoxic_instructions") {
            config.strategy.nontoxic_instructions = expect_array(value, key);
        } else if (key == "meda_low_tag") {
            config.strategy.meda_low_tag = expect_string(value, key);
        } else if (key == "meda_high_tag") {
            config.strategy.meda_high_tag = expect_string(value, key);
        } else if (key == "control_token_budget") {
            config.strategy.control_token_budget = static_cast<std::size_t>(expect_uint(value, key));
        } else if (key == "max_sample_tokens") {
            config.strategy.max_sample_tokens = static_cast<std::size_t>(expect_uint(value, key));
        } else if (key == "input") {
            config.input = expect_string(value, key);
        } else if (key == "output") {
            config.output = expect_string(value, key);
        } else if (key == "report") {
            config.report = expect_string(value, key);
        } else if (key == "svg") {
            config.svg = expect_string(value, key);
        } else if (key == "cache") {
            config.cache_path = expect_string(value, key);
        } else if (key == "pool") {
            config.pool_path = expect_string(value, key);
        } else if (key == "doc_scores") {
            config.doc_scores_path = expect_string(value, key);
        } else if (key == "tokenizer") {
            config.tokenizer_id = expect_string(value, key);
        } else if (key == "backend") {
            config.backend = expect_string(value, key);
        } else if (key == "lexicon") {
            config.lexicon_path = expect_string(value, key);
        } else if (key == "endpoint") {
            config.endpoint = expect_string(value, key);
        } else if (key == "api_key") {
            config.api_key = expect_string(value, key);
        } else if (key == "rps") {
            config.rps = expect_number(value, key);
        } else if (key == "burst") {
            config.burst = expect_number(value, key);
        } else if (key == "max_retries") {
            config.retry.max_retries = static_cast<int>(expect_uint(value, key));
        } else if (key == "backoff_ms") {
            config.retry.initial_backoff_ms = static_cast<int>(expect_uint(value, key));
        } else if (key == "backoff_multiplier") {
            config.retry.multiplier = expect_number(value, key);
        } else if (key == "max_backoff_ms") {
            config.retry.max_backoff_ms = static_cast<int>(expect_uint(value, key));
        } else if (key == "max_request_bytes") {
            config.max_request_bytes = static_cast<std::size_t>(expect_uint(value, key));
        } else if (key == "failure_ceiling") {
            config.failure_ceiling = expect_number(value, key);
        } else if (key == "workers") {
            config.workers = static_cast<int>(expect_uint(value, key));
        } else if (key == "pad") {
            config.pad_mode = expect_boolean(value, key);
        } else if (key == "pad_token") {
            config.pad_token = expect_string(value, key);
        } else if (key == "lenient") {
            config.lenient = expect_boolean(value, key);
        } else if (key == "toxic_threshold") {
            config.toxic_threshold = expect_number(value, key);
        } else if (key == "generations_per_prompt") {
            config.generations_per_prompt = static_cast<std::size_t>(expect_uint(value, key));
        } else {
            throw ParseError("unknown key \"" + key + "\"", line_number);
        }
    }
    return config;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open config file: " + path);
    }
    try {
        return parse_config(in);
    } catch (const ParseError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void apply_env_overrides(RunConfig& config) {
    if (const char* key = std::getenv("TOXAUG_API_KEY")) {
        config.api_key = key;
    }
}

void validate_config(const RunConfig& config, const Tokenizer& tokenizer) {
    const StrategyConfig& strategy = config.strategy;
    if (!(strategy.low_thresh > 0.0 && strategy.low_thresh < 1.0)) {
        throw ConfigError("low_thresh must satisfy 0 < low_thresh < 1");
    }
    if (!(strategy.high_thresh > 0.0 && strategy.high_thresh < 1.0)) {
        throw ConfigError("high_thresh must satisfy 0 < high_thresh < 1");
    }
    if (strategy.low_thresh > strategy.high_thresh) {
        throw ConfigError("low_thresh must not exceed high_thresh");
    }
    if (!(strategy.prm_tox >= 0.0 && strategy.prm_tox <= 1.0)) {
        throw ConfigError("prm_tox must satisfy 0 <= prm_tox <= 1");
    }
    if (!(strategy.prm_nont >= 0.0 && strategy.prm_nont <= 1.0)) {
        throw ConfigError("prm_nont must satisfy 0 <= prm_nont <= 1");
    }
    if (strategy.max_sample_tokens < 1) {
        throw ConfigError("max_sample_tokens must be >= 1");
    }

    auto check_template = [&](const std::string& text, const std::string& field) {
        const std::size_t tokens = tokenizer.count_tokens(text);
        if (tokens > strategy.control_token_budget) {
            throw ConfigError(field + " entry tokenizes to " + std::to_string(tokens) +
                              " tokens, over the control_token_budget of " +
                              std::to_string(strategy.control_token_budget) + ": \"" + text + "\"");
        }
    };
    for (const std::string& text : strategy.toxic_instructions) {
        check_template(text, "toxic_instructions");
    }
    for (const std::string& text : strategy.nontoxic_instructions) {
        check_template(text, "nontoxic_instructions");
    }
    check_template(strategy.meda_low_tag, "meda_low_tag");
    check_template(strategy.meda_high_tag, "meda_high_tag");

    if (config.workers < 1) {
        throw ConfigError("workers must be >= 1");
    }
    if (!(config.failure_ceiling >= 0.0 && config.failure_ceiling <= 1.0)) {
        throw ConfigError("failure_ceiling must be in [0,1]");
    }
    if (config.rps <= 0.0) {
        throw ConfigError("rps must be > 0");
    }
    if (config.burst < 1.0) {
        throw ConfigError("burst must be >= 1");
    }
    if (config.retry.max_retries < 0) {
        throw ConfigError("max_retries must be >= 0");
    }
    if (config.retry.multiplier < 1.0) {
        throw ConfigError("backoff_multiplier must be >= 1");
    }
    if (!(config.toxic_threshold > 0.0 && config.toxic_threshold < 1.0)) {
        throw ConfigError("toxic_threshold must be in (0,1)");
    }
    if (config.backend != "lexicon" && config.backend != "remote") {
        throw ConfigError("backend must be \"lexicon\" or \"remote\"");
    }
    if (config.pad_mode && tokenizer.count_tokens(config.pad_token) == 0) {
        throw ConfigError("pad_token tokenizes to zero tokens");
    }

    std::set<std::string> paths;
    for (const std::string& path : {config.input, config.output, config.report, config.svg}) {
        if (path.empty()) {
            continue;
        }
        if (!paths.insert(path).second) {
            throw ConfigError("paths must be distinct: \"" + path + "\" is used twice");
        }
    }
}

} // namespace toxaug
