#include "toxaug/scorer.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "toxaug/errors.hpp"
#include "toxaug/sha256.hpp"
#include "toxaug/tokenizer.hpp"

namespace toxaug {

namespace {

using nlohmann::json;

std::string fold_ascii(std::string_view token) {
    std::string folded(token);
    for (char& c : folded) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return folded;
}

std::string cache_key(const std::string& digest, const std::string& scorer_id) {
    return scorer_id + '\n' + digest;
}

void check_score_range(double score, const std::string& scorer_id) {
    if (!(score >= 0.0 && score <= 1.0)) {
        throw ProtocolError("scorer \"" + scorer_id + "\" produced score outside [0,1]: " +
                            std::to_string(score));
    }
}

} // namespace

double lexicon_score(std::string_view text, const std::unordered_set<std::string>& lexicon) {
    WhitespaceTokenizer tokenizer;
    const std::vector<TokenSpan> spans = tokenizer.token_spans(text);
    if (spans.empty()) {
        return 0.0;
    }
    std::size_t toxic = 0;
    for (const TokenSpan& span : spans) {
        if (lexicon.count(fold_ascii(text.substr(span.begin, span.end - span.begin))) > 0) {
            ++toxic;
        }
    }
    const double ratio = static_cast<double>(toxic) / static_cast<double>(spans.size());
    return std::min(1.0, ratio);
}

std::unordered_set<std::string> load_lexicon(std::istream& in) {
    std::unordered_set<std::string> lexicon;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        lexicon.insert(fold_ascii(line));
    }
    return lexicon;
}

LexiconScorer::LexiconScorer(std::unordered_set<std::string> lexicon, std::string scorer_id)
    : lexicon_(std::move(lexicon)), scorer_id_(std::move(scorer_id)) {}

double LexiconScorer::score(std::string_view text) {
    return lexicon_score(text, lexicon_);
}

ScoreCache ScoreCache::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return ScoreCache{};
    }
    return load(in);
}

ScoreCache ScoreCache::load(std::istream& in) {
    ScoreCache cache;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) {
            continue;
        }
        json record = json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            throw ParseError("malformed cache record", line_number);
        }
        if (!record.contains("digest") || !record.contains("score") || !record.contains("scorer_id")) {
            throw ParseError("cache record missing digest/score/scorer_id", line_number);
        }
        const double score = record["score"].get<double>();
        if (score < 0.0 || score > 1.0) {
            throw ParseError("cached score outside [0,1]", line_number);
        }
        cache.insert(record["digest"].get<std::string>(), record["scorer_id"].get<std::string>(), score);
    }
    return cache;
}

void ScoreCache::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open cache for write: " + path);
    }
    save(out);
    out.flush();
    if (!out) {
        throw IoError("write failure on cache: " + path);
    }
}

void ScoreCache::save(std::ostream& out) const {
    // Sorted for stable files and easy diffing.
    std::vector<const std::pair<const std::string, double>*> rows;
    rows.reserve(entries_.size());
    for (const auto& entry : entries_) {
        rows.push_back(&entry);
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto* a, const auto* b) { return a->first < b->first; });
    for (const auto* row : rows) {
        const std::size_t split = row->first.find('\n');
        json record{{"digest", row->first.substr(split + 1)},
                    {"score", row->second},
                    {"scorer_id", row->first.substr(0, split)}};
        out << record.dump() << '\n';
    }
}

std::optional<double> ScoreCache::lookup(const std::string& digest, const std::string& scorer_id) const {
    auto it = entries_.find(cache_key(digest, scorer_id));
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void ScoreCache::insert(const std::string& digest, const std::string& scorer_id, double score) {
    // First write wins; a deterministic backend produces the same value anyway.
    entries_.emplace(cache_key(digest, scorer_id), score);
}

ScoreRunResult score_corpus(const std::vector<Sample>& samples, ScorerBackend& backend,
                            ScoreCache& cache, const ScoreRunOptions& options) {
    if (options.workers < 1) {
        throw ConfigError("workers must be >= 1");
    }
    if (options.failure_ceiling < 0.0 || options.failure_ceiling > 1.0) {
        throw ConfigError("failure_ceiling must be in [0,1]");
    }

    ScoreRunResult result;
    if (samples.empty()) {
        return result;
    }

    const std::string scorer_id = backend.scorer_id();
    std::vector<std::optional<ScoredSample>> slots(samples.size());
    std::vector<std::optional<ScoreFailure>> failure_slots(samples.size());
    std::atomic<std::size_t> cache_hits{0};
    std::atomic<std::size_t> backend_calls{0};
    std::mutex cache_mutex;

    auto score_one = [&](std::size_t index) {
        const Sample& sample = samples[index];
        const std::string digest = sha256_hex(sample.text);
        {
            std::lock_guard<std::mutex> lock(cache_mutex);
            if (auto cached = cache.lookup(digest, scorer_id)) {
                slots[index] = ScoredSample{sample, *cached, scorer_id};
                cache_hits.fetch_add(1, std::memory_order_relaxed);
                return;
            }
        }
        double value = 0.0;
        try {
            backend_calls.fetch_add(1, std::memory_order_relaxed);
            value = backend.score(sample.text);
        } catch (const BackendError& e) {
            failure_slots[index] = ScoreFailure{sample.sample_id, e.what()};
            return;
        }
        check_score_range(value, scorer_id);
        {
            std::lock_guard<std::mutex> lock(cache_mutex);
            cache.insert(digest, scorer_id, value);
        }
        slots[index] = ScoredSample{sample, value, scorer_id};
    };

    const std::size_t workers = std::min<std::size_t>(options.workers, samples.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < samples.size(); ++i) {
            score_one(i);
        }
    } else {
        std::atomic<std::size_t> cursor{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                try {
                    while (true) {
                        const std::size_t index = cursor.fetch_add(1, std::memory_order_relaxed);
                        if (index >= samples.size()) {
                            return;
                        }
                        score_one(index);
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) {
                        first_error = std::current_exception();
                    }
                }
            });
        }
        for (std::thread& t : pool) {
            t.join();
        }
        if (first_error) {
            std::rethrow_exception(first_error);
        }
    }

    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (slots[i]) {
            result.scored.push_back(std::move(*slots[i]));
        } else if (failure_slots[i]) {
            result.failures.push_back(std::move(*failure_slots[i]));
        }
    }
    result.cache_hits = cache_hits.load();
    result.backend_calls = backend_calls.load();

    const double failure_fraction =
        static_cast<double>(result.failures.size()) / static_cast<double>(samples.size());
    if (failure_fraction > options.failure_ceiling) {
        throw CeilingError("scoring failures " + std::to_string(result.failures.size()) + "/" +
                           std::to_string(samples.size()) + " exceed the configured ceiling");
    }
    return result;
}

namespace {

// Chunk boundaries back off to UTF-8 code point starts so chunk texts stay
// valid UTF-8 for downstream backends.
std::vector<std::string_view> split_chars(std::string_view text, std::size_t chunk_chars) {
    std::vector<std::string_view> chunks;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = std::min(pos + chunk_chars, text.size());
        while (end < text.size() && end > pos && (static_cast<unsigned char>(text[end]) & 0xc0) == 0x80) {
            --end;
        }
        if (end == pos) {
            end = std::min(pos + chunk_chars, text.size()); // lone continuation bytes: take as-is
        }
        chunks.push_back(text.substr(pos, end - pos));
        pos = end;
    }
    return chunks;
}

} // namespace

DocVsChunkReport doc_vs_chunk_report(const Document& doc, ScorerBackend& backend,
                                     const std::vector<std::size_t>& chunk_char_sizes) {
    for (std::size_t size : chunk_char_sizes) {
        if (size < 1) {
            throw ContractError("chunk sizes must be >= 1");
        }
    }

    DocVsChunkReport report;
    report.doc_id = doc.doc_id;
    report.char_count = doc.text.size();

    const std::size_t cap = backend.max_text_bytes();
    if (cap == 0 || doc.text.size() <= cap) {
        const double value = backend.score(doc.text);
        check_score_range(value, backend.scorer_id());
        report.doc_score = value;
    }

    for (std::size_t size : chunk_char_sizes) {
        DocChunkAverage row;
        row.chunk_chars = size;
        double weighted = 0.0;
        std::size_t total_chars = 0;
        for (std::string_view chunk : split_chars(doc.text, size)) {
            const double value = backend.score(chunk);
            check_score_range(value, backend.scorer_id());
            weighted += value * static_cast<double>(chunk.size());
            total_chars += chunk.size();
            ++row.chunk_count;
        }
        row.weighted_average = total_chars > 0 ? weighted / static_cast<double>(total_chars) : 0.0;
        report.averages.push_back(row);
    }
    return report;
}

} // namespace toxaug
