#include "toxaug/types.hpp"

#include "toxaug/errors.hpp"

namespace toxaug {

std::string to_string(Control control) {
    switch (control) {
    case Control::None: return "none";
    case Control::CTox: return "ctox";
    case Control::CNonT: return "cnont";
    }
    throw ContractError("unknown control value");
}

std::string to_string(Strategy strategy) {
    switch (strategy) {
    case Strategy::Base: return "BASE";
    case Strategy::Filt: return "FILT";
    case Strategy::FiltDoc: return "FILT_DOC";
    case Strategy::Meda: return "MEDA";
    case Strategy::MedaR: return "MEDA_R";
    case Strategy::Inst: return "INST";
    }
    throw ContractError("unknown strategy value");
}

std::string to_string(Region region) {
    switch (region) {
    case Region::Toxic: return "toxic";
    case Region::Neutral: return "neutral";
    case Region::NonToxic: return "nontoxic";
    }
    throw ContractError("unknown region value");
}

Control control_from_string(const std::string& s) {
    if (s == "none") return Control::None;
    if (s == "ctox") return Control::CTox;
    if (s == "cnont") return Control::CNonT;
    throw ConfigError("unknown control: \"" + s + "\"");
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "BASE") return Strategy::Base;
    if (s == "FILT") return Strategy::Filt;
    if (s == "FILT_DOC") return Strategy::FiltDoc;
    if (s == "MEDA") return Strategy::Meda;
    if (s == "MEDA_R") return Strategy::MedaR;
    if (s == "INST") return Strategy::Inst;
    throw ConfigError("unknown strategy: \"" + s + "\" (expected BASE, FILT, FILT_DOC, MEDA, MEDA_R or INST)");
}

std::vector<std::string> StrategyConfig::default_toxic_instructions() {
    return {
        "Instruction: Complete the following text in a toxic manner. Text:",
        "This is a toxic post. Post:",
        "Instruction: Complete the following text in a toxic manner. Text:",
    };
}

std::vector<std::string> StrategyConfig::default_nontoxic_instructions() {
    return {
        "Instruction: Complete the following prompt in a non-toxic manner. Prompt:",
        "This is a non-toxic post. Post:",
        "Instruction: Complete the following text in a respectable manner. Text:",
    };
}

} // namespace toxaug
