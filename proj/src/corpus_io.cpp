#include "toxaug/corpus_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>

#include <json.hpp>

#include "toxaug/errors.hpp"

namespace toxaug {

namespace {

using nlohmann::json;

json parse_object(const std::string& line, std::size_t line_number) {
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded()) {
        throw ParseError("not valid JSON", line_number);
    }
    if (!record.is_object()) {
        throw ParseError("record is not a JSON object", line_number);
    }
    return record;
}

std::string require_string(const json& record, const char* field, std::size_t line_number) {
    auto it = record.find(field);
    if (it == record.end()) {
        throw ParseError(std::string("missing field \"") + field + "\"", line_number);
    }
    if (!it->is_string()) {
        throw ParseError(std::string("field \"") + field + "\" is not a string", line_number);
    }
    return it->get<std::string>();
}

std::size_t require_count(const json& record, const char* field, std::size_t line_number) {
    auto it = record.find(field);
    if (it == record.end()) {
        throw ParseError(std::string("missing field \"") + field + "\"", line_number);
    }
    if (!it->is_number_unsigned()) {
        throw ParseError(std::string("field \"") + field + "\" is not a nonnegative integer", line_number);
    }
    return it->get<std::size_t>();
}

double require_score(const json& record, const char* field, std::size_t line_number) {
    auto it = record.find(field);
    if (it == record.end()) {
        throw ParseError(std::string("missing field \"") + field + "\"", line_number);
    }
    if (!it->is_number()) {
        throw ParseError(std::string("field \"") + field + "\" is not a number", line_number);
    }
    const double value = it->get<double>();
    if (value < 0.0 || value > 1.0) {
        throw ParseError(std::string("field \"") + field + "\" outside [0,1]", line_number);
    }
    return value;
}

std::string dump_line(const json& record) {
    return record.dump();
}

} // namespace

Document document_from_line(const std::string& line, std::size_t line_number) {
    const json record = parse_object(line, line_number);
    Document doc;
    doc.doc_id = require_string(record, "doc_id", line_number);
    doc.dataset = require_string(record, "dataset", line_number);
    doc.text = require_string(record, "text", line_number);
    doc.char_count = doc.text.size();
    return doc;
}

Sample sample_from_line(const std::string& line, std::size_t line_number) {
    const json record = parse_object(line, line_number);
    Sample sample;
    sample.sample_id = require_string(record, "sample_id", line_number);
    sample.dataset = require_string(record, "dataset", line_number);
    sample.text = require_string(record, "text", line_number);
    sample.token_count = require_count(record, "token_count", line_number);
    sample.chunk_index = require_count(record, "chunk_index", line_number);
    return sample;
}

ScoredSample scored_sample_from_line(const std::string& line, std::size_t line_number) {
    ScoredSample scored;
    scored.sample = sample_from_line(line, line_number);
    const json record = parse_object(line, line_number);
    scored.tox_score = require_score(record, "tox_score", line_number);
    scored.scorer_id = require_string(record, "scorer_id", line_number);
    return scored;
}

AugmentedSample augmented_sample_from_line(const std::string& line, std::size_t line_number) {
    const json record = parse_object(line, line_number);
    AugmentedSample sample;
    sample.sample_id = require_string(record, "sample_id", line_number);
    sample.text = require_string(record, "text", line_number);
    sample.control_text = require_string(record, "control_text", line_number);
    try {
        sample.control = control_from_string(require_string(record, "control", line_number));
        sample.strategy = strategy_from_string(require_string(record, "strategy", line_number));
    } catch (const ConfigError& e) {
        throw ParseError(e.what(), line_number);
    }
    if ((sample.control == Control::None) != sample.control_text.empty()) {
        throw ParseError("control and control_text disagree", line_number);
    }
    return sample;
}

std::string document_to_line(const Document& doc) {
    return dump_line(json{{"doc_id", doc.doc_id}, {"dataset", doc.dataset}, {"text", doc.text}});
}

std::string sample_to_line(const Sample& sample) {
    return dump_line(json{{"sample_id", sample.sample_id},
                          {"dataset", sample.dataset},
                          {"text", sample.text},
                          {"token_count", sample.token_count},
                          {"chunk_index", sample.chunk_index}});
}

std::string scored_sample_to_line(const ScoredSample& scored) {
    return dump_line(json{{"sample_id", scored.sample.sample_id},
                          {"dataset", scored.sample.dataset},
                          {"text", scored.sample.text},
                          {"token_count", scored.sample.token_count},
                          {"chunk_index", scored.sample.chunk_index},
                          {"tox_score", scored.tox_score},
                          {"scorer_id", scored.scorer_id}});
}

std::string augmented_sample_to_line(const AugmentedSample& sample) {
    return dump_line(json{{"sample_id", sample.sample_id},
                          {"text", sample.text},
                          {"control", to_string(sample.control)},
                          {"control_text", sample.control_text},
                          {"strategy", to_string(sample.strategy)}});
}

CorpusReader::CorpusReader(std::istream& in, bool lenient) : in_(in), lenient_(lenient) {}

std::optional<Document> CorpusReader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_number_;
        if (line.empty()) {
            continue;
        }
        Document doc;
        try {
            doc = document_from_line(line, line_number_);
        } catch (const ParseError& e) {
            if (!lenient_) {
                throw;
            }
            record_errors_.push_back(e.what());
            continue;
        }
        // Duplicate ids poison downstream joins; always a hard error.
        if (!seen_ids_.insert(doc.doc_id).second) {
            throw ParseError("duplicate doc_id \"" + doc.doc_id + "\"", line_number_);
        }
        return doc;
    }
    if (in_.bad()) {
        throw IoError("read failure on corpus stream");
    }
    return std::nullopt;
}

std::vector<Document> read_corpus(std::istream& in, bool lenient,
                                  std::vector<std::string>* record_errors) {
    CorpusReader reader(in, lenient);
    std::vector<Document> docs;
    while (auto doc = reader.next()) {
        docs.push_back(std::move(*doc));
    }
    if (record_errors != nullptr) {
        *record_errors = reader.record_errors();
    }
    return docs;
}

JsonlWriter::JsonlWriter(const std::string& path) : marker_path_(path + ".partial") {
    {
        std::ofstream marker(marker_path_, std::ios::trunc);
        if (!marker) {
            throw IoError("cannot create marker file: " + marker_path_);
        }
    }
    auto file = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file) {
        throw IoError("cannot open for write: " + path);
    }
    owned_ = std::move(file);
    out_ = owned_.get();
}

JsonlWriter::JsonlWriter(std::ostream& out) : out_(&out) {}

JsonlWriter::~JsonlWriter() = default;

void JsonlWriter::write_line(const std::string& line) {
    (*out_) << line << '\n';
    if (!*out_) {
        throw IoError("write failure after " + std::to_string(lines_written_) + " records");
    }
    ++lines_written_;
}

void JsonlWriter::finish() {
    out_->flush();
    if (!*out_) {
        throw IoError("flush failure after " + std::to_string(lines_written_) + " records");
    }
    if (!marker_path_.empty()) {
        std::remove(marker_path_.c_str());
        marker_path_.clear();
    }
}

void write_documents(JsonlWriter& out, const std::vector<Document>& docs) {
    for (const Document& doc : docs) {
        out.write_line(document_to_line(doc));
    }
}

std::string pad_text(const std::string& text, const Tokenizer& tokenizer, const PadOptions& pad) {
    const std::size_t have = tokenizer.count_tokens(text);
    if (have > pad.target_tokens) {
        throw ContractError("text tokenizes to " + std::to_string(have) + " tokens, over the padded target of " +
                            std::to_string(pad.target_tokens));
    }
    if (have == pad.target_tokens) {
        return text;
    }
    // The pad unit starts with a space, so appending it never merges with the
    // last token; each append adds count_tokens(unit) tokens.
    const std::string unit = " " + pad.pad_token;
    const std::size_t unit_tokens = tokenizer.count_tokens(unit);
    if (unit_tokens == 0) {
        throw ConfigError("pad_token tokenizes to zero tokens: \"" + pad.pad_token + "\"");
    }
    const std::size_t deficit = pad.target_tokens - have;
    if (deficit % unit_tokens != 0) {
        throw ConfigError("pad_token \"" + pad.pad_token + "\" adds " + std::to_string(unit_tokens) +
                          " tokens per repetition and cannot hit the target of " +
                          std::to_string(pad.target_tokens) + " exactly");
    }
    std::string padded = text;
    padded.reserve(padded.size() + (deficit / unit_tokens) * unit.size());
    for (std::size_t i = 0; i < deficit / unit_tokens; ++i) {
        padded += unit;
    }
    return padded;
}

void write_samples(JsonlWriter& out, const std::vector<AugmentedSample>& samples,
                   const Tokenizer& tokenizer, const PadOptions& pad) {
    for (const AugmentedSample& sample : samples) {
        if (!pad.enabled) {
            out.write_line(augmented_sample_to_line(sample));
            continue;
        }
        AugmentedSample padded = sample;
        padded.text = pad_text(sample.text, tokenizer, pad);
        out.write_line(augmented_sample_to_line(padded));
    }
}

} // namespace toxaug
