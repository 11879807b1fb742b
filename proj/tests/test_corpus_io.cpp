#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "test_util.hpp"
#include "toxaug/corpus_io.hpp"
#include "toxaug/errors.hpp"

using namespace toxaug;

TEST_CASE("empty stream yields an empty corpus") {
    std::istringstream in("");
    CHECK(read_corpus(in).empty());
}

TEST_CASE("three well-formed lines come back in order") {
    std::istringstream in(
        R"({"doc_id":"a","dataset":"web","text":"first"})" "\n"
        R"({"doc_id":"b","dataset":"web","text":"second"})" "\n"
        R"({"doc_id":"c","dataset":"books","text":"third"})" "\n");
    const auto docs = read_corpus(in);
    REQUIRE(docs.size() == 3);
    CHECK(docs[0].doc_id == "a");
    CHECK(docs[1].doc_id == "b");
    CHECK(docs[2].doc_id == "c");
    CHECK(docs[2].dataset == "books");
    CHECK(docs[0].char_count == 5);
}

TEST_CASE("missing text field on line 2") {
    const std::string corpus =
        R"({"doc_id":"a","dataset":"web","text":"first"})" "\n"
        R"({"doc_id":"b","dataset":"web"})" "\n"
        R"({"doc_id":"c","dataset":"web","text":"third"})" "\n";

    SUBCASE("strict mode aborts naming the line") {
        std::istringstream in(corpus);
        CHECK_THROWS_WITH_AS(read_corpus(in), doctest::Contains("line 2"), ParseError);
    }

    SUBCASE("lenient mode still yields lines 1 and 3") {
        std::istringstream in(corpus);
        std::vector<std::string> errors;
        const auto docs = read_corpus(in, true, &errors);
        REQUIRE(docs.size() == 2);
        CHECK(docs[0].doc_id == "a");
        CHECK(docs[1].doc_id == "c");
        REQUIRE(errors.size() == 1);
        CHECK(errors[0].find("line 2") != std::string::npos);
        CHECK(errors[0].find("text") != std::string::npos);
    }
}

TEST_CASE("duplicate doc_id is a stream-level error in both modes") {
    const std::string corpus =
        R"({"doc_id":"a","dataset":"web","text":"x"})" "\n"
        R"({"doc_id":"a","dataset":"web","text":"y"})" "\n";
    std::istringstream strict(corpus);
    CHECK_THROWS_WITH_AS(read_corpus(strict), doctest::Contains("duplicate"), ParseError);
    std::istringstream lenient(corpus);
    CHECK_THROWS_AS(read_corpus(lenient, true), ParseError);
}

TEST_CASE("the reader is lazy: early records come out before later garbage") {
    std::istringstream in(
        R"({"doc_id":"a","dataset":"web","text":"x"})" "\n"
        "this is not json\n");
    CorpusReader reader(in);
    const auto first = reader.next();
    REQUIRE(first.has_value());
    CHECK(first->doc_id == "a");
    CHECK_THROWS_AS(reader.next(), ParseError);
}

TEST_CASE("document round-trip reproduces every field") {
    std::vector<Document> docs;
    for (int i = 0; i < 25; ++i) {
        Document doc;
        doc.doc_id = "doc" + std::to_string(i);
        doc.dataset = i % 2 == 0 ? "web" : "books";
        doc.text = "text with\nnewline \"quotes\" and unicode \xc3\xa9 #" + std::to_string(i);
        doc.char_count = doc.text.size();
        docs.push_back(std::move(doc));
    }

    std::ostringstream sink;
    JsonlWriter writer(sink);
    write_documents(writer, docs);
    writer.finish();

    std::istringstream in(sink.str());
    const auto round_tripped = read_corpus(in);
    REQUIRE(round_tripped.size() == docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
        CHECK(round_tripped[i].doc_id == docs[i].doc_id);
        CHECK(round_tripped[i].dataset == docs[i].dataset);
        CHECK(round_tripped[i].text == docs[i].text);
        CHECK(round_tripped[i].char_count == docs[i].char_count);
    }
}

TEST_CASE("padding tops samples up to exactly the target") {
    WhitespaceTokenizer tokenizer;
    PadOptions pad;
    pad.enabled = true;
    pad.target_tokens = 2048;

    SUBCASE("unaugmented 2000-token sample gains 48 pads") {
        const std::string body = test_util::words(2000);
        const std::string padded = pad_text(body, tokenizer, pad);
        CHECK(tokenizer.count_tokens(padded) == 2048);
        CHECK(padded.substr(0, body.size()) == body);

        std::size_t pads = 0;
        for (std::size_t pos = 0; (pos = padded.find("<|pad|>", pos)) != std::string::npos;
             pos += 7) {
            ++pads;
        }
        CHECK(pads == 48);
    }

    SUBCASE("a 9-token control plus 2000-token body gains 39 pads") {
        const std::string control = "c1 c2 c3 c4 c5 c6 c7 c8 c9";
        const std::string text = control + "\n" + test_util::words(2000);
        REQUIRE(tokenizer.count_tokens(text) == 2009);
        const std::string padded = pad_text(text, tokenizer, pad);
        CHECK(tokenizer.count_tokens(padded) == 2048);

        std::size_t pads = 0;
        for (std::size_t pos = 0; (pos = padded.find("<|pad|>", pos)) != std::string::npos;
             pos += 7) {
            ++pads;
        }
        CHECK(pads == 39);
    }

    SUBCASE("over-target text is rejected") {
        pad.target_tokens = 3;
        CHECK_THROWS_AS(pad_text("a b c d", tokenizer, pad), ContractError);
    }

    SUBCASE("a pad token that cannot hit the target exactly is rejected") {
        pad.pad_token = "two words";
        pad.target_tokens = 4;
        CHECK_THROWS_AS(pad_text("a", tokenizer, pad), ConfigError);
    }
}

TEST_CASE("write_samples pads on request and is the identity otherwise") {
    WhitespaceTokenizer tokenizer;
    AugmentedSample sample;
    sample.sample_id = "s";
    sample.text = "alpha  beta"; // double space must survive pad-off mode
    sample.strategy = Strategy::Base;

    SUBCASE("pad off leaves the text byte-identical") {
        std::ostringstream sink;
        JsonlWriter writer(sink);
        write_samples(writer, {sample}, tokenizer, PadOptions{});
        writer.finish();
        const auto parsed = augmented_sample_from_line(sink.str(), 1);
        CHECK(parsed.text == "alpha  beta");
    }

    SUBCASE("pad on tokenizes to the exact target") {
        PadOptions pad;
        pad.enabled = true;
        pad.target_tokens = 10;
        std::ostringstream sink;
        JsonlWriter writer(sink);
        write_samples(writer, {sample}, tokenizer, pad);
        writer.finish();
        const auto parsed = augmented_sample_from_line(sink.str(), 1);
        CHECK(tokenizer.count_tokens(parsed.text) == 10);
    }
}

TEST_CASE("file writer drops its partial marker only on finish") {
    namespace fs = std::filesystem;
    const fs::path dir = test_util::scratch_dir("jsonl_writer");
    const std::string out_path = (dir / "out.jsonl").string();
    const std::string marker = out_path + ".partial";

    {
        JsonlWriter writer(out_path);
        CHECK(fs::exists(marker));
        writer.write_line("{}");
        writer.finish();
        CHECK_FALSE(fs::exists(marker));
    }

    {
        JsonlWriter writer(out_path);
        writer.write_line("{}");
        // abandoned without finish(): the marker survives as the abort signal
    }
    CHECK(fs::exists(marker));
}

TEST_CASE("augmented record lines validate control consistency") {
    CHECK_THROWS_AS(
        augmented_sample_from_line(
            R"({"sample_id":"s","text":"t","control":"none","control_text":"x","strategy":"BASE"})", 1),
        ParseError);
    CHECK_THROWS_AS(
        augmented_sample_from_line(
            R"({"sample_id":"s","text":"t","control":"ctox","control_text":"","strategy":"MEDA"})", 1),
        ParseError);
}

TEST_CASE("scored sample lines reject out-of-range scores") {
    const std::string line =
        R"({"sample_id":"s","dataset":"d","text":"t","token_count":1,"chunk_index":0,"tox_score":1.5,"scorer_id":"x"})";
    CHECK_THROWS_AS(scored_sample_from_line(line, 3), ParseError);
}
