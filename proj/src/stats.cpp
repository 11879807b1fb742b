#include "toxaug/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "toxaug/errors.hpp"

namespace toxaug {

namespace {

void validate_edges(const std::vector<double>& edges) {
    if (edges.size() < 2) {
        throw ContractError("bin_edges needs at least two edges");
    }
    if (edges.front() != 0.0 || edges.back() != 1.0) {
        throw ContractError("bin_edges must start at 0.0 and end at 1.0");
    }
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (!(edges[i] > edges[i - 1])) {
            throw ContractError("bin_edges must be strictly ascending");
        }
    }
}

std::size_t bin_of(double score, const std::vector<double>& edges) {
    // upper_bound gives the first edge > score; the bin is one to its left.
    auto it = std::upper_bound(edges.begin(), edges.end(), score);
    std::size_t bin = static_cast<std::size_t>(it - edges.begin());
    if (bin == edges.size()) {
        --bin; // score == 1.0, last bin is closed on both ends
    }
    return bin - 1;
}

} // namespace

std::size_t Histogram::total() const {
    std::size_t sum = 0;
    for (std::size_t count : counts) {
        sum += count;
    }
    return sum;
}

void Histogram::merge(const Histogram& other) {
    if (bin_edges != other.bin_edges) {
        throw ContractError("cannot merge histograms with different bin edges");
    }
    for (std::size_t i = 0; i < counts.size(); ++i) {
        counts[i] += other.counts[i];
    }
    const double n = static_cast<double>(total());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        fractions[i] = static_cast<double>(counts[i]) / n;
    }
}

std::vector<double> default_bin_edges() {
    std::vector<double> edges;
    edges.reserve(11);
    for (int i = 0; i <= 10; ++i) {
        edges.push_back(static_cast<double>(i) / 10.0);
    }
    return edges;
}

Histogram score_histogram(const std::vector<double>& scores, const std::vector<double>& bin_edges) {
    validate_edges(bin_edges);
    if (scores.empty()) {
        throw ContractError("score_histogram needs at least one score");
    }

    Histogram histogram;
    histogram.bin_edges = bin_edges;
    histogram.counts.assign(bin_edges.size() - 1, 0);
    for (double score : scores) {
        if (!(score >= 0.0 && score <= 1.0)) {
            throw ContractError("score outside [0,1]: " + std::to_string(score));
        }
        ++histogram.counts[bin_of(score, bin_edges)];
    }

    histogram.fractions.resize(histogram.counts.size());
    const double n = static_cast<double>(scores.size());
    for (std::size_t i = 0; i < histogram.counts.size(); ++i) {
        histogram.fractions[i] = static_cast<double>(histogram.counts[i]) / n;
    }
    return histogram;
}

std::map<std::string, double> per_dataset_toxic_fraction(const std::vector<ScoredSample>& samples,
                                                         double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw ContractError("threshold must be in (0,1)");
    }
    std::map<std::string, std::pair<std::size_t, std::size_t>> tallies; // dataset -> (toxic, total)
    for (const ScoredSample& scored : samples) {
        auto& tally = tallies[scored.sample.dataset];
        ++tally.second;
        if (scored.tox_score >= threshold) {
            ++tally.first;
        }
    }
    std::map<std::string, double> fractions;
    for (const auto& [dataset, tally] : tallies) {
        fractions[dataset] = static_cast<double>(tally.first) / static_cast<double>(tally.second);
    }
    return fractions;
}

ExpectedCoverage expected_coverage(double p_toxic, double p_nontoxic, double prm_tox, double prm_nont) {
    for (auto [value, name] : {std::pair{p_toxic, "p_toxic"},
                               {p_nontoxic, "p_nontoxic"},
                               {prm_tox, "prm_tox"},
                               {prm_nont, "prm_nont"}}) {
        if (!(value >= 0.0 && value <= 1.0)) {
            throw ContractError(std::string(name) + " outside [0,1]");
        }
    }
    if (p_toxic + p_nontoxic > 1.0) {
        throw ContractError("p_toxic + p_nontoxic exceeds 1");
    }
    ExpectedCoverage coverage;
    coverage.e_ctox = prm_tox * p_toxic;
    coverage.e_cnont = prm_nont * p_nontoxic;
    coverage.e_unmodified = 1.0 - coverage.e_ctox - coverage.e_cnont;
    return coverage;
}

std::string histogram_ascii(const Histogram& histogram, std::size_t width) {
    double max_fraction = 0.0;
    for (double fraction : histogram.fractions) {
        max_fraction = std::max(max_fraction, fraction);
    }
    std::ostringstream out;
    for (std::size_t i = 0; i < histogram.counts.size(); ++i) {
        char label[32];
        std::snprintf(label, sizeof(label), "[%.2f,%.2f%c", histogram.bin_edges[i],
                      histogram.bin_edges[i + 1], i + 1 == histogram.counts.size() ? ']' : ')');
        const std::size_t bar =
            max_fraction > 0.0
                ? static_cast<std::size_t>(histogram.fractions[i] / max_fraction * static_cast<double>(width))
                : 0;
        char value[32];
        std::snprintf(value, sizeof(value), "%6.2f%%", histogram.fractions[i] * 100.0);
        out << label << ' ' << value << ' ' << std::string(bar, '#') << '\n';
    }
    return out.str();
}

std::string histogram_svg(const Histogram& histogram) {
    const int bar_width = 48;
    const int chart_height = 220;
    const int margin = 40;
    const int width = margin * 2 + bar_width * static_cast<int>(histogram.counts.size());
    const int height = chart_height + margin * 2;

    double max_fraction = 0.0;
    for (double fraction : histogram.fractions) {
        max_fraction = std::max(max_fraction, fraction);
    }
    if (max_fraction == 0.0) {
        max_fraction = 1.0;
    }

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < histogram.counts.size(); ++i) {
        const double scaled = histogram.fractions[i] / max_fraction;
        const int bar_height = static_cast<int>(scaled * chart_height);
        const int x = margin + static_cast<int>(i) * bar_width;
        const int y = margin + chart_height - bar_height;
        out << "<rect x=\"" << x + 4 << "\" y=\"" << y << "\" width=\"" << bar_width - 8
            << "\" height=\"" << bar_height << "\" fill=\"#4a7fb5\"/>\n";
        char label[16];
        std::snprintf(label, sizeof(label), "%.1f", histogram.bin_edges[i]);
        out << "<text x=\"" << x << "\" y=\"" << margin + chart_height + 16
            << "\" font-size=\"10\" font-family=\"sans-serif\">" << label << "</text>\n";
        char value[16];
        std::snprintf(value, sizeof(value), "%.1f%%", histogram.fractions[i] * 100.0);
        out << "<text x=\"" << x + 4 << "\" y=\"" << y - 4
            << "\" font-size=\"10\" font-family=\"sans-serif\">" << value << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace toxaug
