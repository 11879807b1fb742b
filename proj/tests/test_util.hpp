#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "toxaug/types.hpp"

namespace test_util {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    REQUIRE(out);
    out << content;
}

// Fresh scratch directory under the test working directory.
inline std::filesystem::path scratch_dir(const std::string& name) {
    std::filesystem::path dir = std::filesystem::current_path() / "scratch" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// Test-data generator, independent of the library's SampleRng.
inline std::mt19937_64 test_rng(std::uint64_t seed) {
    return std::mt19937_64{seed};
}

inline std::string words(std::size_t count, const std::string& word = "w") {
    std::string text;
    for (std::size_t i = 0; i < count; ++i) {
        if (i > 0) {
            text.push_back(' ');
        }
        text += word;
        text += std::to_string(i % 10);
    }
    return text;
}

inline toxaug::ScoredSample scored(std::string id, double score, std::string text = "body text",
                                   std::string scorer = "lexicon") {
    toxaug::ScoredSample s;
    s.sample.sample_id = std::move(id);
    s.sample.dataset = "fixture";
    s.sample.text = std::move(text);
    s.sample.token_count = 2;
    s.sample.chunk_index = 0;
    s.tox_score = score;
    s.scorer_id = std::move(scorer);
    return s;
}

} // namespace test_util
