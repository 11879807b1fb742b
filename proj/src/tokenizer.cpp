#include "toxaug/tokenizer.hpp"

#include <cctype>

#include "toxaug/errors.hpp"

namespace toxaug {

namespace {

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

} // namespace

std::vector<std::string> Tokenizer::tokenize(std::string_view text) const {
    std::vector<std::string> tokens;
    for (const TokenSpan& span : token_spans(text)) {
        tokens.emplace_back(text.substr(span.begin, span.end - span.begin));
    }
    return tokens;
}

std::size_t Tokenizer::count_tokens(std::string_view text) const {
    return token_spans(text).size();
}

const std::string& WhitespaceTokenizer::tokenizer_id() const {
    static const std::string id = "whitespace";
    return id;
}

std::vector<TokenSpan> WhitespaceTokenizer::token_spans(std::string_view text) const {
    std::vector<TokenSpan> spans;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        while (i < n && is_space(text[i])) {
            ++i;
        }
        if (i >= n) {
            break;
        }
        std::size_t begin = i;
        while (i < n && !is_space(text[i])) {
            ++i;
        }
        spans.push_back({begin, i});
    }
    return spans;
}

std::string WhitespaceTokenizer::detokenize(const std::vector<std::string>& tokens) const {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) {
            out.push_back(' ');
        }
        out += tokens[i];
    }
    return out;
}

const std::string& ByteTokenizer::tokenizer_id() const {
    static const std::string id = "byte";
    return id;
}

std::vector<TokenSpan> ByteTokenizer::token_spans(std::string_view text) const {
    std::vector<TokenSpan> spans;
    spans.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        spans.push_back({i, i + 1});
    }
    return spans;
}

std::string ByteTokenizer::detokenize(const std::vector<std::string>& tokens) const {
    std::string out;
    for (const std::string& token : tokens) {
        out += token;
    }
    return out;
}

std::size_t count_tokens(std::string_view text, const Tokenizer& tokenizer) {
    return tokenizer.count_tokens(text);
}

std::unique_ptr<Tokenizer> make_tokenizer(const std::string& tokenizer_id) {
    if (tokenizer_id == "whitespace") {
        return std::make_unique<WhitespaceTokenizer>();
    }
    if (tokenizer_id == "byte") {
        return std::make_unique<ByteTokenizer>();
    }
    throw ConfigError("unknown tokenizer: \"" + tokenizer_id + "\" (expected whitespace or byte)");
}

} // namespace toxaug
