#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace toxaug {

// Raw corpus record, pre-chunking.
struct Document {
    std::string doc_id;
    std::string dataset;
    std::string text;
    std::size_t char_count = 0; // byte length of text (UTF-8)
};

// Fixed-token-budget chunk of a document; the unit of scoring and augmentation.
struct Sample {
    std::string sample_id;
    std::string dataset;
    std::string text;
    std::size_t token_count = 0;
    std::size_t chunk_index = 0;
};

struct ScoredSample {
    Sample sample;
    double tox_score = 0.0;
    std::string scorer_id;
};

enum class Control {
    None,
    CTox,
    CNonT,
};

enum class Strategy {
    Base,
    Filt,
    FiltDoc,
    Meda,
    MedaR,
    Inst,
};

enum class Region {
    Toxic,
    Neutral,
    NonToxic,
};

std::string to_string(Control control);
std::string to_string(Strategy strategy);
std::string to_string(Region region);
Control control_from_string(const std::string& s);
Strategy strategy_from_string(const std::string& s);

struct AugmentedSample {
    std::string sample_id;
    std::string text;
    Control control = Control::None;
    std::string control_text;
    Strategy strategy = Strategy::Base;
};

// Separator between a control variable and the sample body. A newline keeps
// the control text on its own line and stays unambiguous under whitespace
// tokenization.
inline constexpr char kControlSeparator = '\n';

// Thresholds, probabilities, control-variable templates and the seed that
// together drive the augmentation pass.
struct StrategyConfig {
    Strategy strategy = Strategy::Base;
    double high_thresh = 0.5;
    double low_thresh = 0.1;
    double prm_tox = 0.9;
    double prm_nont = 0.9;
    std::uint64_t seed = 0;
    std::vector<std::string> toxic_instructions = default_toxic_instructions();
    std::vector<std::string> nontoxic_instructions = default_nontoxic_instructions();
    std::string meda_low_tag = "toxicity: 0.1";
    std::string meda_high_tag = "toxicity: 0.5";
    std::size_t control_token_budget = 48;
    std::size_t max_sample_tokens = 2000;

    // The shipped toxic list repeats its first entry verbatim, which raises
    // that instruction's effective probability to 2/3. Override via config
    // if distinct templates are wanted.
    static std::vector<std::string> default_toxic_instructions();
    static std::vector<std::string> default_nontoxic_instructions();
};

} // namespace toxaug
