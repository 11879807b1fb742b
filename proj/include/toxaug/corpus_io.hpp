#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "toxaug/tokenizer.hpp"
#include "toxaug/types.hpp"

namespace toxaug {

// One JSON object per line, UTF-8:
//   document:  {"doc_id", "dataset", "text"}
//   sample:    {"sample_id", "dataset", "text", "token_count", "chunk_index"}
//   scored:    sample fields + {"tox_score", "scorer_id"}
//   augmented: {"sample_id", "text", "control", "control_text", "strategy"}

Document document_from_line(const std::string& line, std::size_t line_number);
Sample sample_from_line(const std::string& line, std::size_t line_number);
ScoredSample scored_sample_from_line(const std::string& line, std::size_t line_number);
AugmentedSample augmented_sample_from_line(const std::string& line, std::size_t line_number);

std::string document_to_line(const Document& doc);
std::string sample_to_line(const Sample& sample);
std::string scored_sample_to_line(const ScoredSample& scored);
std::string augmented_sample_to_line(const AugmentedSample& sample);

// Streaming document reader; holds one record at a time. Strict mode throws
// ParseError on the first malformed record; lenient mode records the error
// and keeps going. Duplicate doc_ids are a stream-level error in both modes.
class CorpusReader {
  public:
    explicit CorpusReader(std::istream& in, bool lenient = false);

    std::optional<Document> next();

    const std::vector<std::string>& record_errors() const { return record_errors_; }
    std::size_t line_number() const { return line_number_; }

  private:
    std::istream& in_;
    bool lenient_;
    std::size_t line_number_ = 0;
    std::unordered_set<std::string> seen_ids_;
    std::vector<std::string> record_errors_;
};

std::vector<Document> read_corpus(std::istream& in, bool lenient = false,
                                  std::vector<std::string>* record_errors = nullptr);

// Streaming line sink. The file-backed variant drops a "<path>.partial"
// marker next to the output while writing and removes it in finish(); an
// aborted run leaves the marker behind.
class JsonlWriter {
  public:
    explicit JsonlWriter(const std::string& path);
    explicit JsonlWriter(std::ostream& out);
    ~JsonlWriter();

    JsonlWriter(const JsonlWriter&) = delete;
    JsonlWriter& operator=(const JsonlWriter&) = delete;

    void write_line(const std::string& line);
    void finish();

    std::size_t lines_written() const { return lines_written_; }

  private:
    std::ostream* out_ = nullptr;
    std::unique_ptr<std::ostream> owned_;
    std::string marker_path_;
    std::size_t lines_written_ = 0;
};

void write_documents(JsonlWriter& out, const std::vector<Document>& docs);

struct PadOptions {
    bool enabled = false;
    std::string pad_token = "<|pad|>";
    std::size_t target_tokens = 2048; // max_sample_tokens + control_token_budget
};

// Appends pad tokens (one leading space each) until the text tokenizes to
// exactly target_tokens. Throws if the text is already over target or the
// pad token cannot land on the target exactly.
std::string pad_text(const std::string& text, const Tokenizer& tokenizer, const PadOptions& pad);

void write_samples(JsonlWriter& out, const std::vector<AugmentedSample>& samples,
                   const Tokenizer& tokenizer, const PadOptions& pad);

} // namespace toxaug
