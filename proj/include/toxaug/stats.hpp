#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "toxaug/types.hpp"

namespace toxaug {

struct Histogram {
    std::vector<double> bin_edges; // ascending, first 0.0, last 1.0
    std::vector<std::size_t> counts;
    std::vector<double> fractions;

    std::size_t total() const;

    // Combines partial histograms built over the same edges.
    void merge(const Histogram& other);
};

// 0.0, 0.1, ..., 1.0
std::vector<double> default_bin_edges();

// Left-closed right-open bins; the last bin also includes 1.0. Scores
// outside [0,1] and empty inputs are errors.
Histogram score_histogram(const std::vector<double>& scores, const std::vector<double>& bin_edges);

// Fraction of each dataset's samples with tox_score >= threshold.
std::map<std::string, double> per_dataset_toxic_fraction(const std::vector<ScoredSample>& samples,
                                                         double threshold);

struct ExpectedCoverage {
    double e_ctox = 0.0;
    double e_cnont = 0.0;
    double e_unmodified = 1.0;
};

// e_ctox = prm_tox * p_toxic, e_cnont = prm_nont * p_nontoxic,
// e_unmodified = 1 - e_ctox - e_cnont.
ExpectedCoverage expected_coverage(double p_toxic, double p_nontoxic, double prm_tox, double prm_nont);

std::string histogram_ascii(const Histogram& histogram, std::size_t width = 50);
std::string histogram_svg(const Histogram& histogram);

} // namespace toxaug
