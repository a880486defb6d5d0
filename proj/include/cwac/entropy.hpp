#pragma once

#include <vector>

#include "cwac/dataset.hpp"

namespace cwac {

struct ClassDistribution {
    std::vector<long> counts;  // per class value index
    long total = 0;
    int class_count = 0;
};

struct GainScore {
    int attribute = 0;
    double gain = 0.0;  // bits
};

ClassDistribution class_distribution(const Dataset& d);

// Entropy of the class column in bits, with 0*log2(0) = 0.
double class_entropy(const Dataset& d);

// Weighted average class entropy over the partition of d by values of
// attribute a.
double expected_info(const Dataset& d, int attribute);

// class_entropy(d) - expected_info(d, a), clamped at 0 against roundoff.
GainScore info_gain(const Dataset& d, int attribute);

// Non-class attribute with maximum information gain; ties go to the lowest
// attribute index.
int select_anchor(const Dataset& d);

}  // namespace cwac
