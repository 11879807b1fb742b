#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "toxaug/types.hpp"

namespace toxaug {

// Counter-based generator derived from (seed, sample_id). Identical inputs
// give identical draws, independent of processing order, so augmentation is
// parallel-safe and reproducible across worker counts.
class SampleRng {
  public:
    SampleRng(std::uint64_t seed, std::string_view sample_id);

    // Uniform in [0,1).
    double next_unit();
    // Uniform in [0,n); rejection-sampled, unbiased.
    std::uint64_t next_index(std::uint64_t n);

  private:
    std::uint64_t state_;
};

// Toxic iff tox_score >= high_thresh; NonToxic iff tox_score < low_thresh.
Region classify_region(double tox_score, const StrategyConfig& config);

// raw_mode off: the fixed tag for the region ("toxicity: 0.5" / "toxicity:
// 0.1"). raw_mode on: "toxicity: " + score rounded half-away-from-zero to
// two decimals. Neutral region is a contract violation.
std::string meda_tag(double tox_score, const StrategyConfig& config, bool raw_mode);

// Uniform choice over the region's instruction templates.
const std::string& select_instruction(Region region, const StrategyConfig& config, SampleRng& rng);

// One pass of the augmentation rule for MEDA / MEDA_R / INST: Toxic samples
// get C_tox with probability prm_tox, NonToxic samples get C_nont with
// probability prm_nont, Neutral samples pass through untouched.
AugmentedSample augment_sample(const ScoredSample& scored, const StrategyConfig& config, SampleRng& rng);

struct CoverageReport {
    std::size_t total = 0;
    std::size_t ctox = 0;
    std::size_t cnont = 0;
    std::size_t unmodified = 0;

    double fraction_ctox() const;
    double fraction_cnont() const;
    double fraction_unmodified() const;
};

struct FilterReport {
    std::size_t input_count = 0;
    std::size_t removed = 0;
    std::size_t inserted = 0;
    double removed_fraction = 0.0;
    double threshold = 0.0;
};

struct AugmentResult {
    std::vector<AugmentedSample> samples;
    CoverageReport coverage;
    std::optional<FilterReport> filter; // set for FILT
};

// Applies the configured strategy over a scored corpus. BASE passes bodies
// through unchanged; MEDA/MEDA_R/INST run augment_sample (data-parallel over
// `workers` threads with deterministic reassembly); FILT dispatches to
// filter_and_replenish and needs `pool`. All samples must carry the same
// scorer_id.
AugmentResult apply_strategy(const std::vector<ScoredSample>& corpus, const StrategyConfig& config,
                             int workers = 1, const std::vector<ScoredSample>* pool = nullptr);

struct FilterResult {
    std::vector<ScoredSample> corpus;
    FilterReport report;
};

// Removes every sample with tox_score >= threshold and replaces each removed
// sample in place with a draw (uniform, without replacement) from the
// replenishment pool. Pool samples must not duplicate corpus sample_ids and
// must themselves score below the threshold.
FilterResult filter_and_replenish(const std::vector<ScoredSample>& corpus, double threshold,
                                  const std::vector<ScoredSample>& pool, SampleRng& rng);

// Document-level filtering: drops documents scoring at or above the
// threshold. No replenishment.
std::vector<Document> filter_documents(const std::vector<Document>& documents,
                                       const std::unordered_map<std::string, double>& doc_scores,
                                       double threshold, FilterReport* report = nullptr);

} // namespace toxaug
