#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "toxaug/tokenizer.hpp"
#include "toxaug/types.hpp"

namespace toxaug {

// "{doc_id}:{chunk_index}" with a zero-padded index so ids sort in document
// order.
std::string make_sample_id(const std::string& doc_id, std::size_t chunk_index);

// Splits a document into samples of at most max_sample_tokens tokens. Every
// chunk except possibly the last holds exactly max_sample_tokens tokens, cut
// at exact token positions; concatenating the chunk token sequences
// reproduces the document's token sequence. A document that fits in a single
// chunk keeps its text byte-identical.
std::vector<Sample> chunk_document(const Document& doc, const Tokenizer& tokenizer,
                                   std::size_t max_sample_tokens);

} // namespace toxaug
