#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "toxaug/types.hpp"

namespace toxaug {

// Produces a toxicity score in [0,1] for a text. Implementations throw
// BackendError (or a subclass) on per-text failures.
class ScorerBackend {
  public:
    virtual ~ScorerBackend() = default;

    virtual const std::string& scorer_id() const = 0;
    virtual double score(std::string_view text) = 0;

    // Maximum accepted text size in bytes; 0 means unlimited.
    virtual std::size_t max_text_bytes() const { return 0; }
};

// Pure function of (text, lexicon): fraction of whitespace tokens whose
// case-folded form appears in the lexicon.
double lexicon_score(std::string_view text, const std::unordered_set<std::string>& lexicon);

// One lowercase token per line; blank lines and #-comments skipped.
std::unordered_set<std::string> load_lexicon(std::istream& in);

class LexiconScorer final : public ScorerBackend {
  public:
    explicit LexiconScorer(std::unordered_set<std::string> lexicon, std::string scorer_id = "lexicon");

    const std::string& scorer_id() const override { return scorer_id_; }
    double score(std::string_view text) override;

  private:
    std::unordered_set<std::string> lexicon_;
    std::string scorer_id_;
};

// Persistent content-addressed score cache. Keyed by (sha256(text),
// scorer_id) so re-chunked corpora reuse scores for identical texts. File
// format: one JSON object {"digest", "score", "scorer_id"} per line.
class ScoreCache {
  public:
    ScoreCache() = default;

    static ScoreCache load_file(const std::string& path); // missing file -> empty cache
    static ScoreCache load(std::istream& in);
    void save_file(const std::string& path) const;
    void save(std::ostream& out) const;

    std::optional<double> lookup(const std::string& digest, const std::string& scorer_id) const;
    void insert(const std::string& digest, const std::string& scorer_id, double score);

    std::size_t size() const { return entries_.size(); }

  private:
    // key = scorer_id + '\n' + digest
    std::unordered_map<std::string, double> entries_;
};

struct ScoreFailure {
    std::string sample_id;
    std::string error;
};

struct ScoreRunOptions {
    int workers = 1;
    double failure_ceiling = 0.0; // abort when failures/total exceeds this
};

struct ScoreRunResult {
    std::vector<ScoredSample> scored; // input order; failed samples omitted
    std::vector<ScoreFailure> failures;
    std::size_t cache_hits = 0;
    std::size_t backend_calls = 0;
};

// Scores every sample, consulting the cache first and recording misses into
// it. Output order equals input order regardless of worker count. Throws
// CeilingError when the failure fraction exceeds the configured ceiling.
ScoreRunResult score_corpus(const std::vector<Sample>& samples, ScorerBackend& backend,
                            ScoreCache& cache, const ScoreRunOptions& options = {});

struct DocChunkAverage {
    std::size_t chunk_chars = 0;
    std::size_t chunk_count = 0;
    double weighted_average = 0.0;
};

struct DocVsChunkReport {
    std::string doc_id;
    std::size_t char_count = 0;
    std::optional<double> doc_score; // unset when the text exceeds the backend cap
    std::vector<DocChunkAverage> averages;
};

// Scores the whole document and, per requested chunk size, the average of
// chunk scores weighted by chunk character length. Chunks are cut on UTF-8
// code point boundaries at most chunk_chars bytes apart.
DocVsChunkReport doc_vs_chunk_report(const Document& doc, ScorerBackend& backend,
                                     const std::vector<std::size_t>& chunk_char_sizes);

} // namespace toxaug
