#include "toxaug/chunker.hpp"

#include <cstdio>

#include "toxaug/errors.hpp"

namespace toxaug {

std::string make_sample_id(const std::string& doc_id, std::size_t chunk_index) {
    char suffix[16];
    std::snprintf(suffix, sizeof(suffix), ":%06zu", chunk_index);
    return doc_id + suffix;
}

std::vector<Sample> chunk_document(const Document& doc, const Tokenizer& tokenizer,
                                   std::size_t max_sample_tokens) {
    if (max_sample_tokens < 1) {
        throw ContractError("max_sample_tokens must be >= 1");
    }

    std::vector<Sample> samples;
    const std::vector<TokenSpan> spans = tokenizer.token_spans(doc.text);
    if (spans.empty()) {
        return samples;
    }

    const std::size_t total = spans.size();
    for (std::size_t start = 0, index = 0; start < total; start += max_sample_tokens, ++index) {
        const std::size_t end = std::min(start + max_sample_tokens, total);
        Sample sample;
        sample.sample_id = make_sample_id(doc.doc_id, index);
        sample.dataset = doc.dataset;
        if (start == 0 && end == total) {
            sample.text = doc.text;
        } else {
            // Slice the original bytes between the chunk's first and last
            // token; whitespace between chunks is dropped, tokens are not.
            sample.text = doc.text.substr(spans[start].begin, spans[end - 1].end - spans[start].begin);
        }
        sample.token_count = end - start;
        sample.chunk_index = index;
        samples.push_back(std::move(sample));
    }
    return samples;
}

} // namespace toxaug
