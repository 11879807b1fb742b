#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace toxaug {

// Byte span [begin, end) of one token in its source text.
struct TokenSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

// Pluggable tokenizer. Required invariant: detokenize(tokenize(t)) is
// token-equivalent to t, i.e. re-tokenizing the detokenized text yields the
// same token sequence.
class Tokenizer {
  public:
    virtual ~Tokenizer() = default;

    virtual const std::string& tokenizer_id() const = 0;
    virtual std::vector<TokenSpan> token_spans(std::string_view text) const = 0;
    virtual std::string detokenize(const std::vector<std::string>& tokens) const = 0;

    std::vector<std::string> tokenize(std::string_view text) const;
    std::size_t count_tokens(std::string_view text) const;
};

// Splits on runs of ASCII whitespace; the default tokenizer.
class WhitespaceTokenizer final : public Tokenizer {
  public:
    const std::string& tokenizer_id() const override;
    std::vector<TokenSpan> token_spans(std::string_view text) const override;
    std::string detokenize(const std::vector<std::string>& tokens) const override;
};

// One token per byte; fallback for text without usable whitespace.
class ByteTokenizer final : public Tokenizer {
  public:
    const std::string& tokenizer_id() const override;
    std::vector<TokenSpan> token_spans(std::string_view text) const override;
    std::string detokenize(const std::vector<std::string>& tokens) const override;
};

std::size_t count_tokens(std::string_view text, const Tokenizer& tokenizer);

// tokenizer_id: "whitespace" or "byte".
std::unique_ptr<Tokenizer> make_tokenizer(const std::string& tokenizer_id);

} // namespace toxaug
