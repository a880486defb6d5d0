#include "cwac/classifier.hpp"

#include <algorithm>

#include "cwac/entropy.hpp"
#include "cwac/errors.hpp"

namespace cwac {

bool rule_rank_less(const Rule& a, const Rule& b) {
    if (a.measures.wconf != b.measures.wconf) return a.measures.wconf > b.measures.wconf;
    if (a.measures.wsup != b.measures.wsup) return a.measures.wsup > b.measures.wsup;
    if (a.antecedent.size() != b.antecedent.size())
        return a.antecedent.size() < b.antecedent.size();
    if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
    return a.consequent < b.consequent;
}

std::vector<Rule> rank_rules(const RuleSet& rs) {
    std::vector<Rule> ordered = rs.rules;
    std::sort(ordered.begin(), ordered.end(), rule_rank_less);
    return ordered;
}

namespace {

// X strictly inside Y; both sorted by attribute with unique attributes.
bool strict_subset(const Itemset& x, const Itemset& y) {
    if (x.size() >= y.size()) return false;
    std::size_t j = 0;
    for (const auto& item : x) {
        while (j < y.size() && y[j] < item) ++j;
        if (j == y.size() || !(y[j] == item)) return false;
        ++j;
    }
    return true;
}

}  // namespace

RankedRuleList prune_conflicts_and_redundancy(const std::vector<Rule>& ordered,
                                              int default_class) {
    // Conflicts: per antecedent, the first (highest ranked) rule wins.
    std::vector<Rule> no_conflicts;
    for (const auto& r : ordered) {
        bool clashed = false;
        for (const auto& kept : no_conflicts)
            if (kept.antecedent == r.antecedent) {
                clashed = true;
                break;
            }
        if (!clashed) no_conflicts.push_back(r);
    }

    // Redundancy: a rule falls when a same-class generalization survives,
    // whatever their ranks. Subset order is transitive, so survivors are
    // exactly the subset-minimal rules of each class.
    RankedRuleList rrl;
    rrl.default_class = default_class;
    for (const auto& r : no_conflicts) {
        bool generalized = false;
        for (const auto& other : no_conflicts) {
            if (other.consequent != r.consequent) continue;
            if (strict_subset(other.antecedent, r.antecedent)) {
                generalized = true;
                break;
            }
        }
        if (!generalized) rrl.rules.push_back(r);
    }
    return rrl;
}

int majority_class(const Dataset& train) {
    const ClassDistribution cd = class_distribution(train);
    int best = 0;
    for (int c = 1; c < cd.class_count; ++c)
        if (cd.counts[c] > cd.counts[best]) best = c;
    return best;
}

RankedRuleList build_classifier(const RuleSet& rs, const Dataset& train) {
    return prune_conflicts_and_redundancy(rank_rules(rs), majority_class(train));
}

int classify(const RankedRuleList& rrl, const std::vector<int>& values) {
    // Antecedents never mention the class attribute, so whatever sits in
    // the instance's class slot is ignored.
    for (const auto& r : rrl.rules) {
        bool matches = true;
        for (const auto& item : r.antecedent) {
            if (item.attribute >= static_cast<int>(values.size()) ||
                values[item.attribute] != item.value) {
                matches = false;
                break;
            }
        }
        if (matches) return r.consequent;
    }
    return rrl.default_class;
}

int classify(const RankedRuleList& rrl, const Dataset& d, const Transaction& t) {
    if (t.values.size() != static_cast<std::size_t>(d.attribute_count()))
        throw ConsistencyError("instance has " + std::to_string(t.values.size()) +
                               " values, schema has " +
                               std::to_string(d.attribute_count()));
    return classify(rrl, t.values);
}

double accuracy(const RankedRuleList& rrl, const Dataset& test) {
    if (test.transactions.empty()) throw EmptyInputError("empty test set");
    const int ci = test.class_index();
    long correct = 0;
    for (const auto& t : test.transactions)
        if (classify(rrl, test, t) == t.values[ci]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(test.size());
}

}  // namespace cwac
