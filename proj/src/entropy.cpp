#include "cwac/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "cwac/errors.hpp"

namespace cwac {

namespace {

double entropy_of_counts(const std::vector<long>& counts, long total) {
    double h = 0.0;
    for (long c : counts) {
        if (c == 0) continue;  // 0*log2(0) = 0
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace

ClassDistribution class_distribution(const Dataset& d) {
    if (d.transactions.empty()) throw EmptyInputError("dataset has no transactions");
    ClassDistribution cd;
    cd.class_count = d.class_count();
    cd.counts.assign(cd.class_count, 0);
    const int ci = d.class_index();
    for (const auto& t : d.transactions) ++cd.counts[t.values[ci]];
    cd.total = static_cast<long>(d.size());
    return cd;
}

double class_entropy(const Dataset& d) {
    const ClassDistribution cd = class_distribution(d);
    return entropy_of_counts(cd.counts, cd.total);
}

double expected_info(const Dataset& d, int attribute) {
    if (d.transactions.empty()) throw EmptyInputError("dataset has no transactions");
    const int ci = d.class_index();
    if (attribute == ci)
        throw ParameterError("expected_info over the class attribute");
    if (attribute < 0 || attribute >= d.attribute_count())
        throw ParameterError("attribute index out of range");

    const int n_values = d.schema[attribute].value_count();
    const int n_classes = d.class_count();
    std::vector<std::vector<long>> counts(n_values, std::vector<long>(n_classes, 0));
    std::vector<long> sizes(n_values, 0);
    for (const auto& t : d.transactions) {
        const int v = t.values[attribute];
        ++counts[v][t.values[ci]];
        ++sizes[v];
    }

    const double n = static_cast<double>(d.size());
    double info = 0.0;
    for (int v = 0; v < n_values; ++v) {
        if (sizes[v] == 0) continue;
        info += (sizes[v] / n) * entropy_of_counts(counts[v], sizes[v]);
    }
    return info;
}

GainScore info_gain(const Dataset& d, int attribute) {
    const double gain = class_entropy(d) - expected_info(d, attribute);
    // Mathematically >= 0; clamp roundoff on zero-gain attributes.
    return {attribute, std::max(0.0, gain)};
}

int select_anchor(const Dataset& d) {
    const int ci = d.class_index();
    int best = -1;
    double best_gain = -1.0;
    for (int a = 0; a < d.attribute_count(); ++a) {
        if (a == ci) continue;
        const double g = info_gain(d, a).gain;
        if (g > best_gain) {
            best_gain = g;
            best = a;
        }
    }
    if (best < 0) throw SchemaError("dataset has no non-class attribute");
    return best;
}

}  // namespace cwac
