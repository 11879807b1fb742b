#include "toxaug/augmenter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>
#include <unordered_set>

#include "toxaug/errors.hpp"

namespace toxaug {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ull;
    for (char c : bytes) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ull;
    }
    return hash;
}

void require_unit_interval(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw ContractError(std::string(name) + " outside [0,1]");
    }
}

std::string prefixed_text(const std::string& control_text, const std::string& body) {
    std::string text;
    text.reserve(control_text.size() + 1 + body.size());
    text += control_text;
    text += kControlSeparator;
    text += body;
    return text;
}

} // namespace

SampleRng::SampleRng(std::uint64_t seed, std::string_view sample_id)
    : state_(mix64(seed + kGolden) ^ fnv1a64(sample_id)) {}

double SampleRng::next_unit() {
    state_ += kGolden;
    return static_cast<double>(mix64(state_) >> 11) * 0x1.0p-53;
}

std::uint64_t SampleRng::next_index(std::uint64_t n) {
    if (n == 0) {
        throw ContractError("next_index requires n >= 1");
    }
    const std::uint64_t bound = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    while (true) {
        state_ += kGolden;
        const std::uint64_t draw = mix64(state_);
        if (draw < bound) {
            return draw % n;
        }
    }
}

Region classify_region(double tox_score, const StrategyConfig& config) {
    require_unit_interval(tox_score, "tox_score");
    if (tox_score >= config.high_thresh) {
        return Region::Toxic;
    }
    if (tox_score < config.low_thresh) {
        return Region::NonToxic;
    }
    return Region::Neutral;
}

std::string meda_tag(double tox_score, const StrategyConfig& config, bool raw_mode) {
    const Region region = classify_region(tox_score, config);
    if (region == Region::Neutral) {
        throw ContractError("meda_tag called for a neutral sample");
    }
    if (!raw_mode) {
        return region == Region::Toxic ? config.meda_high_tag : config.meda_low_tag;
    }
    const double rounded = std::round(tox_score * 100.0) / 100.0;
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "toxicity: %.2f", rounded);
    return buffer;
}

const std::string& select_instruction(Region region, const StrategyConfig& config, SampleRng& rng) {
    if (region == Region::Neutral) {
        throw ContractError("select_instruction called for a neutral sample");
    }
    const std::vector<std::string>& templates =
        region == Region::Toxic ? config.toxic_instructions : config.nontoxic_instructions;
    if (templates.empty()) {
        throw ConfigError(region == Region::Toxic ? "toxic_instructions is empty"
                                                  : "nontoxic_instructions is empty");
    }
    return templates[rng.next_index(templates.size())];
}

AugmentedSample augment_sample(const ScoredSample& scored, const StrategyConfig& config, SampleRng& rng) {
    if (config.strategy != Strategy::Meda && config.strategy != Strategy::MedaR &&
        config.strategy != Strategy::Inst) {
        throw ContractError("augment_sample handles MEDA, MEDA_R and INST only");
    }

    AugmentedSample out;
    out.sample_id = scored.sample.sample_id;
    out.strategy = config.strategy;

    const Region region = classify_region(scored.tox_score, config);
    if (region == Region::Neutral) {
        out.text = scored.sample.text;
        return out;
    }

    const double gate = region == Region::Toxic ? config.prm_tox : config.prm_nont;
    const double r = rng.next_unit();
    if (!(r < gate)) {
        out.text = scored.sample.text;
        return out;
    }

    out.control = region == Region::Toxic ? Control::CTox : Control::CNonT;
    if (config.strategy == Strategy::Inst) {
        out.control_text = select_instruction(region, config, rng);
    } else {
        out.control_text = meda_tag(scored.tox_score, config, config.strategy == Strategy::MedaR);
    }
    out.text = prefixed_text(out.control_text, scored.sample.text);
    return out;
}

double CoverageReport::fraction_ctox() const {
    return total == 0 ? 0.0 : static_cast<double>(ctox) / static_cast<double>(total);
}

double CoverageReport::fraction_cnont() const {
    return total == 0 ? 0.0 : static_cast<double>(cnont) / static_cast<double>(total);
}

double CoverageReport::fraction_unmodified() const {
    return total == 0 ? 0.0 : static_cast<double>(unmodified) / static_cast<double>(total);
}

namespace {

void require_single_scorer(const std::vector<ScoredSample>& corpus) {
    for (const ScoredSample& scored : corpus) {
        if (scored.scorer_id != corpus.front().scorer_id) {
            throw ContractError("mixed scorer_ids in corpus: \"" + corpus.front().scorer_id +
                                "\" vs \"" + scored.scorer_id + "\"");
        }
    }
}

AugmentResult apply_base(const std::vector<ScoredSample>& corpus) {
    AugmentResult result;
    result.samples.reserve(corpus.size());
    for (const ScoredSample& scored : corpus) {
        AugmentedSample sample;
        sample.sample_id = scored.sample.sample_id;
        sample.text = scored.sample.text;
        sample.strategy = Strategy::Base;
        result.samples.push_back(std::move(sample));
    }
    result.coverage.total = corpus.size();
    result.coverage.unmodified = corpus.size();
    return result;
}

AugmentResult apply_filter(const std::vector<ScoredSample>& corpus, const StrategyConfig& config,
                           const std::vector<ScoredSample>* pool) {
    if (pool == nullptr) {
        throw ConfigError("FILT needs a replenishment pool");
    }
    SampleRng rng(config.seed, "replenish-pool");
    FilterResult filtered = filter_and_replenish(corpus, config.high_thresh, *pool, rng);

    AugmentResult result;
    result.samples.reserve(filtered.corpus.size());
    for (const ScoredSample& scored : filtered.corpus) {
        AugmentedSample sample;
        sample.sample_id = scored.sample.sample_id;
        sample.text = scored.sample.text;
        sample.strategy = Strategy::Filt;
        result.samples.push_back(std::move(sample));
    }
    result.coverage.total = filtered.corpus.size();
    result.coverage.unmodified = filtered.corpus.size();
    result.filter = filtered.report;
    return result;
}

} // namespace

AugmentResult apply_strategy(const std::vector<ScoredSample>& corpus, const StrategyConfig& config,
                             int workers, const std::vector<ScoredSample>* pool) {
    if (workers < 1) {
        throw ConfigError("workers must be >= 1");
    }
    if (!corpus.empty()) {
        require_single_scorer(corpus);
    }

    switch (config.strategy) {
    case Strategy::Base:
        return apply_base(corpus);
    case Strategy::Filt:
        return apply_filter(corpus, config, pool);
    case Strategy::FiltDoc:
        throw ConfigError("FILT_DOC operates on documents; use filter_documents");
    case Strategy::Meda:
    case Strategy::MedaR:
    case Strategy::Inst:
        break;
    }

    AugmentResult result;
    result.samples.resize(corpus.size());
    result.coverage.total = corpus.size();

    auto augment_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            SampleRng rng(config.seed, corpus[i].sample.sample_id);
            result.samples[i] = augment_sample(corpus[i], config, rng);
        }
    };

    const std::size_t n = corpus.size();
    const std::size_t pool_size = std::min<std::size_t>(workers, std::max<std::size_t>(n, 1));
    if (pool_size <= 1 || n < 2) {
        augment_range(0, n);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(pool_size);
        const std::size_t stride = (n + pool_size - 1) / pool_size;
        for (std::size_t w = 0; w < pool_size; ++w) {
            const std::size_t begin = w * stride;
            const std::size_t end = std::min(begin + stride, n);
            if (begin >= end) {
                break;
            }
            threads.emplace_back(augment_range, begin, end);
        }
        for (std::thread& t : threads) {
            t.join();
        }
    }

    for (const AugmentedSample& sample : result.samples) {
        switch (sample.control) {
        case Control::CTox: ++result.coverage.ctox; break;
        case Control::CNonT: ++result.coverage.cnont; break;
        case Control::None: ++result.coverage.unmodified; break;
        }
    }
    return result;
}

FilterResult filter_and_replenish(const std::vector<ScoredSample>& corpus, double threshold,
                                  const std::vector<ScoredSample>& pool, SampleRng& rng) {
    if (!corpus.empty()) {
        require_single_scorer(corpus);
    }

    std::unordered_set<std::string> corpus_ids;
    corpus_ids.reserve(corpus.size());
    for (const ScoredSample& scored : corpus) {
        corpus_ids.insert(scored.sample.sample_id);
    }
    for (const ScoredSample& scored : pool) {
        if (scored.tox_score >= threshold) {
            throw ContractError("pool sample \"" + scored.sample.sample_id +
                                "\" scores at or above the filter threshold");
        }
        if (corpus_ids.count(scored.sample.sample_id) > 0) {
            throw ContractError("pool sample \"" + scored.sample.sample_id +
                                "\" duplicates a corpus sample");
        }
    }

    std::vector<std::size_t> removed_positions;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (corpus[i].tox_score >= threshold) {
            removed_positions.push_back(i);
        }
    }
    if (removed_positions.size() > pool.size()) {
        throw ContractError("replenishment pool too small: need " +
                            std::to_string(removed_positions.size()) + ", have " +
                            std::to_string(pool.size()) + " (deficit " +
                            std::to_string(removed_positions.size() - pool.size()) + ")");
    }

    // Partial Fisher-Yates over pool indices: a uniform draw without
    // replacement, single-threaded for reproducibility.
    std::vector<std::size_t> pool_indices(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        pool_indices[i] = i;
    }
    for (std::size_t i = 0; i < removed_positions.size(); ++i) {
        const std::size_t j = i + rng.next_index(pool.size() - i);
        std::swap(pool_indices[i], pool_indices[j]);
    }

    FilterResult result;
    result.corpus = corpus;
    for (std::size_t i = 0; i < removed_positions.size(); ++i) {
        result.corpus[removed_positions[i]] = pool[pool_indices[i]];
    }
    result.report.input_count = corpus.size();
    result.report.removed = removed_positions.size();
    result.report.inserted = removed_positions.size();
    result.report.removed_fraction =
        corpus.empty() ? 0.0
                       : static_cast<double>(removed_positions.size()) / static_cast<double>(corpus.size());
    result.report.threshold = threshold;
    return result;
}

std::vector<Document> filter_documents(const std::vector<Document>& documents,
                                       const std::unordered_map<std::string, double>& doc_scores,
                                       double threshold, FilterReport* report) {
    std::vector<Document> kept;
    kept.reserve(documents.size());
    std::size_t removed = 0;
    for (const Document& doc : documents) {
        auto it = doc_scores.find(doc.doc_id);
        if (it == doc_scores.end()) {
            throw ContractError("missing document score for \"" + doc.doc_id + "\"");
        }
        if (it->second >= threshold) {
            ++removed;
        } else {
            kept.push_back(doc);
        }
    }
    if (report != nullptr) {
        report->input_count = documents.size();
        report->removed = removed;
        report->inserted = 0;
        report->removed_fraction =
            documents.empty() ? 0.0 : static_cast<double>(removed) / static_cast<double>(documents.size());
        report->threshold = threshold;
    }
    return kept;
}

} // namespace toxaug
