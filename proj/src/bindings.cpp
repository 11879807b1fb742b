#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "toxaug/augmenter.hpp"
#include "toxaug/chunker.hpp"
#include "toxaug/eval_metrics.hpp"
#include "toxaug/scorer.hpp"
#include "toxaug/stats.hpp"
#include "toxaug/tokenizer.hpp"
#include "toxaug/types.hpp"

namespace py = pybind11;
using namespace toxaug;

namespace {

std::unordered_set<std::string> to_lexicon(const std::vector<std::string>& words) {
    std::unordered_set<std::string> lexicon;
    for (const std::string& word : words) {
        lexicon.insert(word);
    }
    return lexicon;
}

} // namespace

PYBIND11_MODULE(_toxaug, m) {
    m.doc() = "Corpus chunking, toxicity scoring, augmentation and evaluation metrics";

    py::class_<Document>(m, "Document")
        .def(py::init([](std::string doc_id, std::string dataset, std::string text) {
                 Document doc{std::move(doc_id), std::move(dataset), std::move(text), 0};
                 doc.char_count = doc.text.size();
                 return doc;
             }),
             py::arg("doc_id"), py::arg("dataset"), py::arg("text"))
        .def_readonly("doc_id", &Document::doc_id)
        .def_readonly("dataset", &Document::dataset)
        .def_readonly("text", &Document::text)
        .def_readonly("char_count", &Document::char_count);

    py::class_<Sample>(m, "Sample")
        .def_readonly("sample_id", &Sample::sample_id)
        .def_readonly("dataset", &Sample::dataset)
        .def_readonly("text", &Sample::text)
        .def_readonly("token_count", &Sample::token_count)
        .def_readonly("chunk_index", &Sample::chunk_index);

    py::class_<ScoredSample>(m, "ScoredSample")
        .def(py::init([](std::string sample_id, std::string text, double tox_score,
                         std::string scorer_id) {
                 ScoredSample scored;
                 scored.sample.sample_id = std::move(sample_id);
                 scored.sample.text = std::move(text);
                 scored.tox_score = tox_score;
                 scored.scorer_id = std::move(scorer_id);
                 return scored;
             }),
             py::arg("sample_id"), py::arg("text"), py::arg("tox_score"),
             py::arg("scorer_id") = "py")
        .def_property_readonly("sample_id",
                               [](const ScoredSample& s) { return s.sample.sample_id; })
        .def_property_readonly("text", [](const ScoredSample& s) { return s.sample.text; })
        .def_readonly("tox_score", &ScoredSample::tox_score)
        .def_readonly("scorer_id", &ScoredSample::scorer_id);

    py::class_<AugmentedSample>(m, "AugmentedSample")
        .def_readonly("sample_id", &AugmentedSample::sample_id)
        .def_readonly("text", &AugmentedSample::text)
        .def_property_readonly("control",
                               [](const AugmentedSample& s) { return to_string(s.control); })
        .def_readonly("control_text", &AugmentedSample::control_text)
        .def_property_readonly("strategy",
                               [](const AugmentedSample& s) { return to_string(s.strategy); });

    py::class_<StrategyConfig>(m, "StrategyConfig")
        .def(py::init<>())
        .def_property(
            "strategy", [](const StrategyConfig& c) { return to_string(c.strategy); },
            [](StrategyConfig& c, const std::string& s) { c.strategy = strategy_from_string(s); })
        .def_readwrite("high_thresh", &StrategyConfig::high_thresh)
        .def_readwrite("low_thresh", &StrategyConfig::low_thresh)
        .def_readwrite("prm_tox", &StrategyConfig::prm_tox)
        .def_readwrite("prm_nont", &StrategyConfig::prm_nont)
        .def_readwrite("seed", &StrategyConfig::seed)
        .def_readwrite("toxic_instructions", &StrategyConfig::toxic_instructions)
        .def_readwrite("nontoxic_instructions", &StrategyConfig::nontoxic_instructions)
        .def_readwrite("meda_low_tag", &StrategyConfig::meda_low_tag)
        .def_readwrite("meda_high_tag", &StrategyConfig::meda_high_tag)
        .def_readwrite("control_token_budget", &StrategyConfig::control_token_budget)
        .def_readwrite("max_sample_tokens", &StrategyConfig::max_sample_tokens);

    py::class_<CoverageReport>(m, "CoverageReport")
        .def_readonly("total", &CoverageReport::total)
        .def_readonly("ctox", &CoverageReport::ctox)
        .def_readonly("cnont", &CoverageReport::cnont)
        .def_readonly("unmodified", &CoverageReport::unmodified)
        .def("fraction_ctox", &CoverageReport::fraction_ctox)
        .def("fraction_cnont", &CoverageReport::fraction_cnont)
        .def("fraction_unmodified", &CoverageReport::fraction_unmodified);

    m.def(
        "count_tokens",
        [](const std::string& text, const std::string& tokenizer_id) {
            return make_tokenizer(tokenizer_id)->count_tokens(text);
        },
        py::arg("text"), py::arg("tokenizer") = "whitespace");

    m.def(
        "chunk_document",
        [](const Document& doc, std::size_t max_sample_tokens, const std::string& tokenizer_id) {
            return chunk_document(doc, *make_tokenizer(tokenizer_id), max_sample_tokens);
        },
        py::arg("doc"), py::arg("max_sample_tokens") = 2000, py::arg("tokenizer") = "whitespace");

    m.def(
        "lexicon_score",
        [](const std::string& text, const std::vector<std::string>& lexicon) {
            return lexicon_score(text, to_lexicon(lexicon));
        },
        py::arg("text"), py::arg("lexicon"));

    m.def(
        "classify_region",
        [](double tox_score, const StrategyConfig& config) {
            return to_string(classify_region(tox_score, config));
        },
        py::arg("tox_score"), py::arg("config"));

    m.def(
        "meda_tag",
        [](double tox_score, const StrategyConfig& config, bool raw_mode) {
            return meda_tag(tox_score, config, raw_mode);
        },
        py::arg("tox_score"), py::arg("config"), py::arg("raw_mode") = false);

    m.def(
        "apply_strategy",
        [](const std::vector<ScoredSample>& corpus, const StrategyConfig& config, int workers) {
            AugmentResult result = apply_strategy(corpus, config, workers);
            return py::make_tuple(result.samples, result.coverage);
        },
        py::arg("corpus"), py::arg("config"), py::arg("workers") = 1);

    m.def(
        "expected_max_toxicity",
        [](const std::vector<std::pair<std::string, std::vector<double>>>& records) {
            std::vector<PromptGenerations> converted;
            for (const auto& [prompt_id, scores] : records) {
                converted.push_back({prompt_id, scores});
            }
            return expected_max_toxicity(converted);
        },
        py::arg("records"));

    m.def(
        "toxicity_probability",
        [](const std::vector<std::pair<std::string, std::vector<double>>>& records,
           double toxic_threshold) {
            std::vector<PromptGenerations> converted;
            for (const auto& [prompt_id, scores] : records) {
                converted.push_back({prompt_id, scores});
            }
            return toxicity_probability(converted, toxic_threshold);
        },
        py::arg("records"), py::arg("toxic_threshold") = 0.5);

    m.def("prefix_prompts", &prefix_prompts, py::arg("prompts"), py::arg("control_text"),
          py::arg("separator") = "\n");

    m.def("relative_gain", &relative_gain, py::arg("baseline"), py::arg("value"),
          py::arg("lower_is_better"));

    m.def(
        "aggregate_gains",
        [](const std::map<std::string, double>& gains) { return aggregate_gains(gains); },
        py::arg("gains"));

    m.def(
        "expected_coverage",
        [](double p_toxic, double p_nontoxic, double prm_tox, double prm_nont) {
            const ExpectedCoverage coverage = expected_coverage(p_toxic, p_nontoxic, prm_tox, prm_nont);
            return py::make_tuple(coverage.e_ctox, coverage.e_cnont, coverage.e_unmodified);
        },
        py::arg("p_toxic"), py::arg("p_nontoxic"), py::arg("prm_tox"), py::arg("prm_nont"));

    m.def(
        "score_histogram",
        [](const std::vector<double>& scores, const std::vector<double>& bin_edges) {
            const Histogram histogram =
                score_histogram(scores, bin_edges.empty() ? default_bin_edges() : bin_edges);
            py::dict out;
            out["bin_edges"] = histogram.bin_edges;
            out["counts"] = histogram.counts;
            out["fractions"] = histogram.fractions;
            return out;
        },
        py::arg("scores"), py::arg("bin_edges") = std::vector<double>{});

    m.attr("__version__") = "0.1.0";
}
