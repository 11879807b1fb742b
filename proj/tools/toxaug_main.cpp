#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "toxaug/augmenter.hpp"
#include "toxaug/chunker.hpp"
#include "toxaug/config.hpp"
#include "toxaug/corpus_io.hpp"
#include "toxaug/errors.hpp"
#include "toxaug/eval_metrics.hpp"
#include "toxaug/remote_scorer.hpp"
#include "toxaug/scorer.hpp"
#include "toxaug/stats.hpp"
#include "toxaug/tokenizer.hpp"

namespace {

using nlohmann::json;
using namespace toxaug;

std::ifstream open_input(const std::string& path) {
    if (path.empty()) {
        throw ConfigError("no input path given (flag --input or config key input)");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open input: " + path);
    }
    return in;
}

template <typename Record, typename Parse>
std::vector<Record> read_jsonl(const std::string& path, Parse parse) {
    std::ifstream in = open_input(path);
    std::vector<Record> records;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) {
            continue;
        }
        records.push_back(parse(line, line_number));
    }
    if (in.bad()) {
        throw IoError("read failure on " + path);
    }
    return records;
}

std::vector<Sample> read_samples_file(const std::string& path) {
    return read_jsonl<Sample>(path, sample_from_line);
}

std::vector<ScoredSample> read_scored_file(const std::string& path) {
    return read_jsonl<ScoredSample>(path, scored_sample_from_line);
}

void write_json_report(const std::string& path, const json& report) {
    if (path.empty()) {
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open report for write: " + path);
    }
    out << report.dump(2) << '\n';
    out.flush();
    if (!out) {
        throw IoError("write failure on report: " + path);
    }
}

std::unique_ptr<ScorerBackend> make_backend(const RunConfig& config) {
    if (config.backend == "lexicon") {
        if (config.lexicon_path.empty()) {
            throw ConfigError("lexicon backend needs a lexicon file (config key lexicon)");
        }
        std::ifstream in = open_input(config.lexicon_path);
        return std::make_unique<LexiconScorer>(load_lexicon(in));
    }
    if (config.endpoint.empty()) {
        throw ConfigError("remote backend needs an endpoint");
    }
    return std::make_unique<RemoteScorer>(config.remote_options());
}

json coverage_to_json(const CoverageReport& coverage, const StrategyConfig& strategy) {
    return json{{"strategy", to_string(strategy.strategy)},
                {"seed", strategy.seed},
                {"total", coverage.total},
                {"ctox", coverage.ctox},
                {"cnont", coverage.cnont},
                {"unmodified", coverage.unmodified},
                {"fraction_ctox", coverage.fraction_ctox()},
                {"fraction_cnont", coverage.fraction_cnont()},
                {"fraction_unmodified", coverage.fraction_unmodified()}};
}

json filter_to_json(const FilterReport& report) {
    return json{{"input_count", report.input_count},
                {"removed", report.removed},
                {"inserted", report.inserted},
                {"removed_fraction", report.removed_fraction},
                {"threshold", report.threshold}};
}

// ---- subcommands ----

int cmd_chunk(const RunConfig& config) {
    const auto tokenizer = make_tokenizer(config.tokenizer_id);
    validate_config(config, *tokenizer);

    std::ifstream in = open_input(config.input);
    CorpusReader reader(in, config.lenient);
    JsonlWriter writer(config.output.empty() ? throw ConfigError("chunk needs an output path")
                                             : config.output);

    std::size_t documents = 0;
    std::size_t samples = 0;
    while (auto doc = reader.next()) {
        ++documents;
        for (const Sample& sample : chunk_document(*doc, *tokenizer, config.strategy.max_sample_tokens)) {
            writer.write_line(sample_to_line(sample));
            ++samples;
        }
    }
    writer.finish();

    for (const std::string& error : reader.record_errors()) {
        std::cerr << "skipped record: " << error << '\n';
    }
    std::cout << json{{"documents", documents},
                      {"samples", samples},
                      {"skipped_records", reader.record_errors().size()}}
                     .dump()
              << '\n';
    return 0;
}

int cmd_score(const RunConfig& config, bool docs_mode) {
    const auto tokenizer = make_tokenizer(config.tokenizer_id);
    validate_config(config, *tokenizer);

    std::vector<Sample> samples;
    if (docs_mode) {
        std::ifstream in = open_input(config.input);
        CorpusReader reader(in, config.lenient);
        while (auto doc = reader.next()) {
            Sample pseudo;
            pseudo.sample_id = doc->doc_id;
            pseudo.dataset = doc->dataset;
            pseudo.text = doc->text;
            samples.push_back(std::move(pseudo));
        }
    } else {
        samples = read_samples_file(config.input);
    }

    const auto backend = make_backend(config);
    ScoreCache cache =
        config.cache_path.empty() ? ScoreCache{} : ScoreCache::load_file(config.cache_path);

    ScoreRunOptions options;
    options.workers = config.workers;
    options.failure_ceiling = config.failure_ceiling;
    const ScoreRunResult result = score_corpus(samples, *backend, cache, options);

    if (!config.cache_path.empty()) {
        cache.save_file(config.cache_path);
    }

    if (!config.output.empty()) {
        JsonlWriter writer(config.output);
        for (const ScoredSample& scored : result.scored) {
            if (docs_mode) {
                writer.write_line(json{{"doc_id", scored.sample.sample_id},
                                       {"dataset", scored.sample.dataset},
                                       {"tox_score", scored.tox_score},
                                       {"scorer_id", scored.scorer_id}}
                                      .dump());
            } else {
                writer.write_line(scored_sample_to_line(scored));
            }
        }
        writer.finish();
    }

    for (const ScoreFailure& failure : result.failures) {
        std::cerr << "scoring failed for " << failure.sample_id << ": " << failure.error << '\n';
    }
    std::cout << json{{"scored", result.scored.size()},
                      {"failures", result.failures.size()},
                      {"cache_hits", result.cache_hits},
                      {"backend_calls", result.backend_calls}}
                     .dump()
              << '\n';
    return 0;
}

int cmd_augment(const RunConfig& config) {
    const auto tokenizer = make_tokenizer(config.tokenizer_id);
    validate_config(config, *tokenizer);

    if (config.strategy.strategy == Strategy::FiltDoc) {
        if (config.doc_scores_path.empty()) {
            throw ConfigError("FILT_DOC needs a doc_scores file");
        }
        std::ifstream in = open_input(config.input);
        const std::vector<Document> documents = read_corpus(in, config.lenient);
        std::unordered_map<std::string, double> doc_scores;
        for (const json& record : read_jsonl<json>(config.doc_scores_path, [](const std::string& line,
                                                                              std::size_t line_number) {
                 json parsed = json::parse(line, nullptr, false);
                 if (parsed.is_discarded() || !parsed.is_object() || !parsed.contains("doc_id") ||
                     !parsed.contains("tox_score")) {
                     throw ParseError("expected {\"doc_id\", \"tox_score\"}", line_number);
                 }
                 return parsed;
             })) {
            doc_scores[record["doc_id"].get<std::string>()] = record["tox_score"].get<double>();
        }

        FilterReport report;
        const std::vector<Document> kept =
            filter_documents(documents, doc_scores, config.strategy.high_thresh, &report);
        if (!config.output.empty()) {
            JsonlWriter writer(config.output);
            write_documents(writer, kept);
            writer.finish();
        }
        const json summary = filter_to_json(report);
        write_json_report(config.report, summary);
        std::cout << summary.dump() << '\n';
        return 0;
    }

    const std::vector<ScoredSample> corpus = read_scored_file(config.input);
    std::vector<ScoredSample> pool;
    const bool needs_pool = config.strategy.strategy == Strategy::Filt;
    if (needs_pool) {
        if (config.pool_path.empty()) {
            throw ConfigError("FILT needs a replenishment pool (config key pool)");
        }
        pool = read_scored_file(config.pool_path);
        for (const ScoredSample& scored : pool) {
            if (scored.tox_score >= config.strategy.low_thresh) {
                throw ConfigError("pool sample \"" + scored.sample.sample_id +
                                  "\" is not non-toxic (tox_score >= low_thresh)");
            }
        }
    }

    const AugmentResult result =
        apply_strategy(corpus, config.strategy, config.workers, needs_pool ? &pool : nullptr);

    if (!config.output.empty()) {
        JsonlWriter writer(config.output);
        PadOptions pad;
        pad.enabled = config.pad_mode;
        pad.pad_token = config.pad_token;
        pad.target_tokens = config.strategy.max_sample_tokens + config.strategy.control_token_budget;
        write_samples(writer, result.samples, *tokenizer, pad);
        writer.finish();
    }

    json summary = coverage_to_json(result.coverage, config.strategy);
    if (result.filter) {
        summary["filter"] = filter_to_json(*result.filter);
    }
    write_json_report(config.report, summary);
    std::cout << summary.dump() << '\n';
    return 0;
}

int cmd_doc_vs_chunk(const RunConfig& config, const std::string& docs_path,
                     const std::string& chunk_chars_csv) {
    std::vector<std::size_t> sizes;
    std::stringstream csv(chunk_chars_csv);
    std::string field;
    while (std::getline(csv, field, ',')) {
        sizes.push_back(static_cast<std::size_t>(std::stoull(field)));
    }
    if (sizes.empty()) {
        throw ConfigError("--chunk-chars needs at least one size");
    }

    const auto backend = make_backend(config);
    std::ifstream in = open_input(docs_path);
    CorpusReader reader(in, config.lenient);

    json rows = json::array();
    while (auto doc = reader.next()) {
        const DocVsChunkReport report = doc_vs_chunk_report(*doc, *backend, sizes);
        json averages = json::array();
        for (const DocChunkAverage& row : report.averages) {
            averages.push_back(json{{"chunk_chars", row.chunk_chars},
                                    {"chunk_count", row.chunk_count},
                                    {"weighted_average", row.weighted_average}});
        }
        rows.push_back(json{{"doc_id", report.doc_id},
                            {"char_count", report.char_count},
                            {"doc_score", report.doc_score ? json(*report.doc_score) : json(nullptr)},
                            {"averages", averages}});
    }
    const json out{{"rows", rows}};
    write_json_report(config.report, out);
    std::cout << out.dump() << '\n';
    return 0;
}

int cmd_stats(const RunConfig& config) {
    const auto tokenizer = make_tokenizer(config.tokenizer_id);
    validate_config(config, *tokenizer);

    const std::vector<ScoredSample> corpus = read_scored_file(config.input);
    if (corpus.empty()) {
        throw ContractError("stats needs a non-empty scored corpus");
    }

    std::vector<double> scores;
    scores.reserve(corpus.size());
    std::size_t toxic = 0;
    std::size_t nontoxic = 0;
    for (const ScoredSample& scored : corpus) {
        scores.push_back(scored.tox_score);
        if (scored.tox_score >= config.strategy.high_thresh) {
            ++toxic;
        } else if (scored.tox_score < config.strategy.low_thresh) {
            ++nontoxic;
        }
    }

    const Histogram histogram = score_histogram(scores, default_bin_edges());
    const auto per_dataset = per_dataset_toxic_fraction(corpus, config.toxic_threshold);
    const double p_toxic = static_cast<double>(toxic) / static_cast<double>(corpus.size());
    const double p_nontoxic = static_cast<double>(nontoxic) / static_cast<double>(corpus.size());
    const ExpectedCoverage coverage =
        expected_coverage(p_toxic, p_nontoxic, config.strategy.prm_tox, config.strategy.prm_nont);

    json report{{"histogram",
                 {{"bin_edges", histogram.bin_edges},
                  {"counts", histogram.counts},
                  {"fractions", histogram.fractions}}},
                {"per_dataset", per_dataset},
                {"expected_coverage",
                 {{"p_toxic", p_toxic},
                  {"p_nontoxic", p_nontoxic},
                  {"prm_tox", config.strategy.prm_tox},
                  {"prm_nont", config.strategy.prm_nont},
                  {"e_ctox", coverage.e_ctox},
                  {"e_cnont", coverage.e_cnont},
                  {"e_unmodified", coverage.e_unmodified}}}};
    write_json_report(config.report, report);

    if (!config.svg.empty()) {
        std::ofstream out(config.svg, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open svg for write: " + config.svg);
        }
        out << histogram_svg(histogram);
    }

    std::cerr << histogram_ascii(histogram);
    std::cout << report.dump() << '\n';
    return 0;
}

int cmd_eval(const RunConfig& config, const std::string& generations_path,
             const std::string& prompts_path, const std::string& control_text,
             const std::string& prefixed_out) {
    const auto tokenizer = make_tokenizer(config.tokenizer_id);
    validate_config(config, *tokenizer);

    if (!prompts_path.empty()) {
        if (tokenizer->count_tokens(control_text) > config.strategy.control_token_budget) {
            throw ConfigError("control text exceeds the control_token_budget");
        }
        std::vector<std::string> ids;
        std::vector<std::string> prompts;
        for (const json& record :
             read_jsonl<json>(prompts_path, [](const std::string& line, std::size_t line_number) {
                 json parsed = json::parse(line, nullptr, false);
                 if (parsed.is_discarded() || !parsed.is_object() || !parsed.contains("prompt_id") ||
                     !parsed.contains("text")) {
                     throw ParseError("expected {\"prompt_id\", \"text\"}", line_number);
                 }
                 return parsed;
             })) {
            ids.push_back(record["prompt_id"].get<std::string>());
            prompts.push_back(record["text"].get<std::string>());
        }
        const std::vector<std::string> prefixed =
            prefix_prompts(prompts, control_text, std::string(1, kControlSeparator));
        JsonlWriter writer(prefixed_out.empty()
                               ? throw ConfigError("prompt prefixing needs --prefixed-out")
                               : prefixed_out);
        for (std::size_t i = 0; i < prefixed.size(); ++i) {
            writer.write_line(json{{"prompt_id", ids[i]}, {"text", prefixed[i]}}.dump());
        }
        writer.finish();
        std::cout << json{{"prompts", prefixed.size()}}.dump() << '\n';
        return 0;
    }

    if (generations_path.empty()) {
        throw ConfigError("eval needs --generations (or --prompts for prefixing)");
    }
    std::ifstream in = open_input(generations_path);
    std::size_t deviations = 0;
    const std::vector<PromptGenerations> records =
        read_prompt_generations(in, config.generations_per_prompt, &deviations);
    if (deviations > 0) {
        std::cerr << "warning: " << deviations << " prompts deviate from "
                  << config.generations_per_prompt << " generations\n";
    }

    const double emt = expected_max_toxicity(records);
    const double tp = toxicity_probability(records, config.toxic_threshold);
    const json report{{"metrics",
                       json::array({json{{"name", "EMT"}, {"value", emt}, {"lower_is_better", true}},
                                    json{{"name", "TP"}, {"value", tp}, {"lower_is_better", true}}})},
                      {"prompts", records.size()},
                      {"toxic_threshold", config.toxic_threshold},
                      {"generation_deviations", deviations}};
    write_json_report(config.report, report);
    std::cout << report.dump() << '\n';
    return 0;
}

std::vector<MetricValue> load_metric_report(const std::string& path) {
    std::ifstream in = open_input(path);
    json parsed;
    try {
        parsed = json::parse(in);
    } catch (const json::parse_error& e) {
        throw IoError("cannot parse metric report " + path + ": " + e.what());
    }
    if (!parsed.is_object() || !parsed.contains("metrics") || !parsed["metrics"].is_array()) {
        throw IoError("metric report " + path + " must contain a \"metrics\" array");
    }
    std::vector<MetricValue> metrics;
    for (const json& entry : parsed["metrics"]) {
        if (!entry.is_object() || !entry.contains("name") || !entry.contains("value")) {
            throw IoError("metric entries need \"name\" and \"value\": " + path);
        }
        MetricValue metric;
        metric.name = entry["name"].get<std::string>();
        metric.value = entry["value"].get<double>();
        metric.lower_is_better = entry.contains("lower_is_better")
                                     ? entry["lower_is_better"].get<bool>()
                                     : default_lower_is_better(metric.name);
        metrics.push_back(std::move(metric));
    }
    return metrics;
}

int cmd_compare(const RunConfig& config, const std::string& baseline_path,
                const std::string& candidate_path) {
    const std::vector<MetricValue> baseline = load_metric_report(baseline_path);
    const std::vector<MetricValue> candidate = load_metric_report(candidate_path);
    const CompareReport report = compare_metrics(baseline, candidate, config.metric_weights);

    json rows = json::array();
    for (const GainRow& row : report.rows) {
        rows.push_back(json{{"metric", row.metric},
                            {"baseline", row.baseline},
                            {"value", row.value},
                            {"gain_percent", row.gain_percent},
                            {"lower_is_better", row.lower_is_better}});
    }
    const json out{{"rows", rows}, {"aggregate_gain_percent", report.aggregate_gain_percent}};
    write_json_report(config.report, out);
    std::cout << out.dump() << '\n';
    return 0;
}

int run_guarded(const std::function<int()>& command) {
    try {
        return command();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::config);
    } catch (const CeilingError& e) {
        std::cerr << "backend failure ceiling: " << e.what() << '\n';
        return static_cast<int>(ExitCode::backend_ceiling);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::io);
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::io);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::failure);
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::failure);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Corpus chunking, toxicity scoring, augmentation and evaluation"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "Config file (key = value lines)")->expected(1);

    // Flag storage shared by the subcommands; only flags the user passed
    // override the config file.
    std::string input, output, report, svg, cache, pool, doc_scores, strategy_name, backend,
        lexicon, endpoint, tokenizer_id, pad_token;
    std::uint64_t seed = 0;
    int workers = 0;
    double rps = 0.0, failure_ceiling = -1.0, threshold = 0.0;
    bool pad_flag = false, lenient_flag = false, docs_flag = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->fallthrough(); // let the parent-level --config appear after the subcommand
        cmd->add_option("--input,-i", input, "Input file");
        cmd->add_option("--output,-o", output, "Output file");
        cmd->add_option("--report", report, "JSON report path");
        cmd->add_option("--seed", seed, "Augmentation seed");
        cmd->add_option("--strategy", strategy_name, "BASE, FILT, FILT_DOC, MEDA, MEDA_R or INST");
        cmd->add_option("--workers", workers, "Worker threads");
        cmd->add_option("--cache", cache, "Score cache path");
        cmd->add_option("--tokenizer", tokenizer_id, "whitespace or byte");
        cmd->add_flag("--pad", pad_flag, "Pad outputs to max_sample_tokens + control_token_budget");
        cmd->add_option("--pad-token", pad_token, "Pad token literal");
        cmd->add_flag("--lenient", lenient_flag, "Skip malformed records instead of aborting");
        return cmd;
    };

    CLI::App* chunk = add_common(app.add_subcommand("chunk", "Split documents into token-budget samples"));

    CLI::App* score = add_common(app.add_subcommand("score", "Score samples with a toxicity backend"));
    score->add_option("--backend", backend, "lexicon or remote");
    score->add_option("--lexicon", lexicon, "Lexicon file for the lexicon backend");
    score->add_option("--endpoint", endpoint, "Remote scorer endpoint URL");
    score->add_option("--rps", rps, "Requests-per-second ceiling");
    score->add_option("--failure-ceiling", failure_ceiling, "Abort when failure fraction exceeds this");
    score->add_flag("--docs", docs_flag, "Score whole documents instead of samples");

    CLI::App* augment = add_common(app.add_subcommand("augment", "Apply an augmentation strategy"));
    augment->add_option("--pool", pool, "Replenishment pool (scored samples) for FILT");
    augment->add_option("--doc-scores", doc_scores, "Document scores for FILT_DOC");

    CLI::App* stats = add_common(app.add_subcommand("stats", "Corpus toxicity statistics"));
    stats->add_option("--svg", svg, "Write the histogram as an SVG file");
    stats->add_option("--threshold", threshold, "Toxic threshold for per-dataset fractions");
    std::string doc_vs_chunk, chunk_chars = "2000,5000";
    stats->add_option("--doc-vs-chunk", doc_vs_chunk,
                      "Documents file: compare whole-document scores against chunked averages");
    stats->add_option("--chunk-chars", chunk_chars, "Comma-separated chunk sizes in characters");

    CLI::App* eval = app.add_subcommand("eval", "Toxicity metrics over prompt generations");
    eval->fallthrough();
    std::string generations, prompts, control_text, prefixed_out;
    eval->add_option("--generations", generations, "JSONL of {prompt_id, scores}");
    eval->add_option("--report", report, "JSON report path");
    eval->add_option("--toxic-threshold", threshold, "Generation score counted as toxic at or above");
    eval->add_option("--prompts", prompts, "JSONL of {prompt_id, text} to prefix");
    eval->add_option("--control-text", control_text, "Control variable to prefix prompts with");
    eval->add_option("--prefixed-out", prefixed_out, "Output for prefixed prompts");

    CLI::App* compare = app.add_subcommand("compare", "Relative gains of a candidate metric report");
    compare->fallthrough();
    std::string baseline_path, candidate_path;
    compare->add_option("--baseline", baseline_path, "Baseline metric report (JSON)")->required();
    compare->add_option("--candidate", candidate_path, "Candidate metric report (JSON)")->required();
    compare->add_option("--report", report, "JSON report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::config);
    }

    return run_guarded([&]() -> int {
        RunConfig config;
        if (!config_path.empty()) {
            config = load_config_file(config_path);
        }
        apply_env_overrides(config);

        CLI::App* active = app.get_subcommands().front();
        auto passed = [&](const std::string& flag) {
            const CLI::Option* option = active->get_option_no_throw(flag);
            return option != nullptr && option->count() > 0;
        };

        if (passed("--input")) config.input = input;
        if (passed("--output")) config.output = output;
        if (active != eval && active != compare && passed("--report")) config.report = report;
        if (passed("--seed")) config.strategy.seed = seed;
        if (passed("--strategy")) config.strategy.strategy = strategy_from_string(strategy_name);
        if (passed("--workers")) config.workers = workers;
        if (passed("--cache")) config.cache_path = cache;
        if (passed("--tokenizer")) config.tokenizer_id = tokenizer_id;
        if (passed("--pad")) config.pad_mode = true;
        if (passed("--pad-token")) config.pad_token = pad_token;
        if (passed("--lenient")) config.lenient = true;

        if (active == chunk) {
            return cmd_chunk(config);
        }
        if (active == score) {
            if (passed("--backend")) config.backend = backend;
            if (passed("--lexicon")) config.lexicon_path = lexicon;
            if (passed("--endpoint")) config.endpoint = endpoint;
            if (passed("--rps")) config.rps = rps;
            if (passed("--failure-ceiling")) config.failure_ceiling = failure_ceiling;
            return cmd_score(config, docs_flag);
        }
        if (active == augment) {
            if (passed("--pool")) config.pool_path = pool;
            if (passed("--doc-scores")) config.doc_scores_path = doc_scores;
            return cmd_augment(config);
        }
        if (active == stats) {
            if (passed("--svg")) config.svg = svg;
            if (passed("--threshold")) config.toxic_threshold = threshold;
            if (!doc_vs_chunk.empty()) {
                return cmd_doc_vs_chunk(config, doc_vs_chunk, chunk_chars);
            }
            return cmd_stats(config);
        }
        if (active == eval) {
            if (eval->count("--report") > 0) config.report = report;
            if (eval->count("--toxic-threshold") > 0) config.toxic_threshold = threshold;
            return cmd_eval(config, generations, prompts, control_text, prefixed_out);
        }
        if (active == compare) {
            if (compare->count("--report") > 0) config.report = report;
            return cmd_compare(config, baseline_path, candidate_path);
        }
        throw Error("no subcommand dispatched");
    });
}
