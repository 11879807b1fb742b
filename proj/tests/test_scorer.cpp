#include <doctest.h>

#include <atomic>
#include <sstream>

#include "test_util.hpp"
#include "toxaug/errors.hpp"
#include "toxaug/scorer.hpp"
#include "toxaug/sha256.hpp"

using namespace toxaug;

namespace {

// Instrumented deterministic backend for call accounting.
class CountingBackend final : public ScorerBackend {
  public:
    explicit CountingBackend(double value = 0.25, std::string id = "counting")
        : value_(value), id_(std::move(id)) {}

    const std::string& scorer_id() const override { return id_; }

    double score(std::string_view text) override {
        calls.fetch_add(1);
        if (fail_texts.count(std::string(text)) > 0) {
            throw BackendError("induced failure");
        }
        return value_;
    }

    std::atomic<std::size_t> calls{0};
    std::unordered_set<std::string> fail_texts;

  private:
    double value_;
    std::string id_;
};

class CappedLexiconBackend final : public ScorerBackend {
  public:
    CappedLexiconBackend(std::unordered_set<std::string> lexicon, std::size_t cap)
        : lexicon_(std::move(lexicon)), cap_(cap) {}

    const std::string& scorer_id() const override {
        static const std::string id = "capped";
        return id;
    }
    double score(std::string_view text) override { return lexicon_score(text, lexicon_); }
    std::size_t max_text_bytes() const override { return cap_; }

  private:
    std::unordered_set<std::string> lexicon_;
    std::size_t cap_;
};

std::vector<Sample> fixture_samples(std::size_t count, const std::string& prefix = "s") {
    std::vector<Sample> samples;
    for (std::size_t i = 0; i < count; ++i) {
        Sample sample;
        sample.sample_id = prefix + std::to_string(i);
        sample.dataset = "fixture";
        sample.text = "unique text " + prefix + std::to_string(i);
        sample.token_count = 3;
        samples.push_back(std::move(sample));
    }
    return samples;
}

} // namespace

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("The quick brown fox jumps over the lazy dog") ==
          "d7a8fbb307d7809469ca9abcb0082e4f8d5651e46d3cdb762d02d0bf37c9e592");
    // Multi-block input (> 64 bytes).
    CHECK(sha256_hex(std::string(1000, 'a')) ==
          "41edece42d63e8d9bf515a9ba6932e1c20cbc9f5a5d134645adb5db1b9737ea3");
}

TEST_CASE("lexicon scorer ratios") {
    const std::unordered_set<std::string> lexicon{"rotten", "grumble"};
    CHECK(lexicon_score("perfectly pleasant words here", lexicon) == 0.0);
    CHECK(lexicon_score("rotten grumble rotten", lexicon) == 1.0);
    CHECK(lexicon_score("", lexicon) == 0.0);

    // 10 tokens, 3 in the lexicon.
    CHECK(lexicon_score("rotten a b grumble c d e f g rotten", lexicon) == doctest::Approx(0.3));
    CHECK(lexicon_score("rotten grumble rotten a b c d e f g", lexicon) == doctest::Approx(0.3));

    SUBCASE("matching is case-folded") {
        CHECK(lexicon_score("ROTTEN Grumble", lexicon) == 1.0);
    }

    SUBCASE("pure function of its inputs") {
        const std::string text = "rotten apples grumble loudly";
        const double first = lexicon_score(text, lexicon);
        for (int i = 0; i < 5; ++i) {
            CHECK(lexicon_score(text, lexicon) == first);
        }
    }
}

TEST_CASE("load_lexicon folds case and skips comments") {
    std::istringstream in("# comment\nRotten\n\ngrumble\r\n");
    const auto lexicon = load_lexicon(in);
    CHECK(lexicon.size() == 2);
    CHECK(lexicon.count("rotten") == 1);
    CHECK(lexicon.count("grumble") == 1);
}

TEST_CASE("score cache keeps one entry per digest and scorer") {
    ScoreCache cache;
    cache.insert("d1", "lexicon", 0.5);
    cache.insert("d1", "lexicon", 0.9); // first write wins
    cache.insert("d1", "remote", 0.7);
    CHECK(cache.size() == 2);
    CHECK(cache.lookup("d1", "lexicon") == 0.5);
    CHECK(cache.lookup("d1", "remote") == 0.7);
    CHECK_FALSE(cache.lookup("d2", "lexicon").has_value());
}

TEST_CASE("score cache file round-trip") {
    const auto dir = test_util::scratch_dir("cache");
    const std::string path = (dir / "cache.jsonl").string();

    ScoreCache cache;
    cache.insert(sha256_hex("one"), "lexicon", 0.125);
    cache.insert(sha256_hex("two"), "lexicon", 0.7071067811865476);
    cache.save_file(path);

    const ScoreCache loaded = ScoreCache::load_file(path);
    CHECK(loaded.size() == 2);
    CHECK(loaded.lookup(sha256_hex("one"), "lexicon") == 0.125);
    CHECK(loaded.lookup(sha256_hex("two"), "lexicon") == 0.7071067811865476);

    CHECK(ScoreCache::load_file((dir / "missing.jsonl").string()).size() == 0);
}

TEST_CASE("score_corpus uses the cache and preserves order") {
    const auto samples = fixture_samples(100);
    CountingBackend backend;
    ScoreCache cache;

    // Pre-seed 40 entries.
    for (std::size_t i = 0; i < 40; ++i) {
        cache.insert(sha256_hex(samples[i].text), backend.scorer_id(), 0.25);
    }

    const ScoreRunResult result = score_corpus(samples, backend, cache);
    CHECK(result.backend_calls == 60);
    CHECK(result.cache_hits == 40);
    CHECK(backend.calls.load() == 60);
    REQUIRE(result.scored.size() == 100);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        CHECK(result.scored[i].sample.sample_id == samples[i].sample_id);
        CHECK(result.scored[i].tox_score == 0.25);
        CHECK(result.scored[i].scorer_id == "counting");
    }

    SUBCASE("a rerun over the same corpus is all cache hits") {
        CountingBackend second;
        const ScoreRunResult rerun = score_corpus(samples, second, cache);
        CHECK(rerun.backend_calls == 0);
        CHECK(second.calls.load() == 0);
        CHECK(rerun.cache_hits == 100);
    }
}

TEST_CASE("score_corpus on empty input leaves the cache untouched") {
    CountingBackend backend;
    ScoreCache cache;
    const ScoreRunResult result = score_corpus({}, backend, cache);
    CHECK(result.scored.empty());
    CHECK(cache.size() == 0);
    CHECK(backend.calls.load() == 0);
}

TEST_CASE("warm-cache scores equal cold-cache scores under parallelism") {
    const auto samples = fixture_samples(64);
    CountingBackend cold_backend(0.125);
    ScoreCache cold_cache;
    ScoreRunOptions parallel;
    parallel.workers = 8;
    const ScoreRunResult cold = score_corpus(samples, cold_backend, cold_cache, parallel);

    CountingBackend warm_backend(0.125);
    const ScoreRunResult warm = score_corpus(samples, warm_backend, cold_cache, parallel);
    CHECK(warm.backend_calls == 0);
    REQUIRE(warm.scored.size() == cold.scored.size());
    for (std::size_t i = 0; i < cold.scored.size(); ++i) {
        CHECK(warm.scored[i].sample.sample_id == cold.scored[i].sample.sample_id);
        CHECK(warm.scored[i].tox_score == cold.scored[i].tox_score);
    }
}

TEST_CASE("failures land in the ledger and respect the ceiling") {
    auto samples = fixture_samples(10);
    CountingBackend backend;
    backend.fail_texts.insert(samples[3].text);
    ScoreCache cache;

    SUBCASE("a zero ceiling aborts on any failure") {
        CHECK_THROWS_AS(score_corpus(samples, backend, cache), CeilingError);
    }

    SUBCASE("a permissive ceiling records the failure and drops the sample") {
        ScoreRunOptions options;
        options.failure_ceiling = 0.5;
        const ScoreRunResult result = score_corpus(samples, backend, cache, options);
        CHECK(result.scored.size() == 9);
        REQUIRE(result.failures.size() == 1);
        CHECK(result.failures[0].sample_id == "s3");
        for (const ScoredSample& scored : result.scored) {
            CHECK(scored.sample.sample_id != "s3");
        }
    }
}

TEST_CASE("a backend score outside [0,1] aborts the pipeline") {
    class BrokenBackend final : public ScorerBackend {
      public:
        const std::string& scorer_id() const override {
            static const std::string id = "broken";
            return id;
        }
        double score(std::string_view) override { return 1.5; }
    } backend;

    ScoreCache cache;
    CHECK_THROWS_AS(score_corpus(fixture_samples(1), backend, cache), ProtocolError);

    // The abort must also surface cleanly out of worker threads.
    ScoreRunOptions parallel;
    parallel.workers = 4;
    CHECK_THROWS_AS(score_corpus(fixture_samples(32), backend, cache, parallel), ProtocolError);
}

TEST_CASE("doc_vs_chunk_report") {
    const std::unordered_set<std::string> lexicon{"bad"};
    LexiconScorer backend(lexicon);

    SUBCASE("doc shorter than the chunk size matches the doc score exactly") {
        Document doc;
        doc.doc_id = "short";
        doc.text = "bad words here";
        const auto report = doc_vs_chunk_report(doc, backend, {2000});
        REQUIRE(report.doc_score.has_value());
        REQUIRE(report.averages.size() == 1);
        CHECK(report.averages[0].chunk_count == 1);
        CHECK(report.averages[0].weighted_average == *report.doc_score);
    }

    SUBCASE("uniform text scores the same under every view") {
        Document doc;
        doc.doc_id = "uniform";
        for (int i = 0; i < 64; ++i) {
            doc.text += "bad ok "; // 7 chars per repeat, ratio 0.5 everywhere
        }
        const auto report = doc_vs_chunk_report(doc, backend, {7, 14, 56});
        REQUIRE(report.doc_score.has_value());
        CHECK(*report.doc_score == 0.5);
        for (const auto& row : report.averages) {
            CHECK(row.weighted_average == doctest::Approx(0.5));
        }
    }

    SUBCASE("concentrated toxicity splits doc and chunk views apart") {
        Document doc;
        doc.doc_id = "skewed";
        doc.text = "bad bad bad bad elephantine elephantine"; // 39 chars, toxic front half
        const auto report = doc_vs_chunk_report(doc, backend, {20});
        REQUIRE(report.doc_score.has_value());
        CHECK(*report.doc_score == doctest::Approx(4.0 / 6.0));
        REQUIRE(report.averages.size() == 1);
        // chunk 1 = "bad bad bad bad elep" (20 chars) scores 4/5; chunk 2
        // = "hantine elephantine" (19 chars) scores 0
        CHECK(report.averages[0].weighted_average == doctest::Approx(16.0 / 39.0));
        CHECK(report.averages[0].weighted_average != *report.doc_score);
    }

    SUBCASE("an oversize document loses its doc score but keeps chunk averages") {
        CappedLexiconBackend capped(lexicon, 10);
        Document doc;
        doc.doc_id = "big";
        doc.text = "bad ok bad ok bad ok";
        const auto report = doc_vs_chunk_report(doc, capped, {6});
        CHECK_FALSE(report.doc_score.has_value());
        REQUIRE(report.averages.size() == 1);
        CHECK(report.averages[0].chunk_count > 1);
    }

    SUBCASE("chunk sizes below one are rejected") {
        Document doc;
        doc.doc_id = "d";
        doc.text = "x";
        CHECK_THROWS_AS(doc_vs_chunk_report(doc, backend, {0}), ContractError);
    }
}
