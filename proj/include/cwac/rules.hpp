#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cwac/dataset.hpp"
#include "cwac/hits.hpp"

namespace cwac {

enum class GenerationMode { Levelwise, TransactionPrefix };

std::string to_string(GenerationMode m);
GenerationMode generation_mode_from_string(const std::string& s);

// A candidate antecedent with its per-class weighted support and the
// weighted support of the bare antecedent.
struct Candidate {
    Itemset antecedent;
    std::vector<double> class_wsup;
    double bare_wsup = 0.0;
};

struct CandidateSet {
    std::vector<Candidate> candidates;
    int anchor = -1;
    double min_wsup = 0.0;
    GenerationMode mode = GenerationMode::Levelwise;
    // (itemset, class) pairs evaluated during generation, pruned ones included.
    long evaluated_pairs = 0;
};

struct Rule {
    Itemset antecedent;
    int consequent = -1;  // class value index
    WeightedMeasure measures;

    friend bool operator==(const Rule& a, const Rule& b) {
        return a.antecedent == b.antecedent && a.consequent == b.consequent;
    }
};

struct RuleSet {
    std::vector<Rule> rules;
    int anchor = -1;
    GenerationMode mode = GenerationMode::Levelwise;
    double min_wsup = 0.0;
    double min_wconf = 0.0;
    long evaluated_pairs = 0;
};

// Candidate antecedents anchored on the given attribute. Levelwise grows
// itemsets Apriori-style, keeping an itemset when any class clears min_wsup
// (that is antimonotone, so the join loses nothing). TransactionPrefix emits
// per transaction only the chain anchor, anchor+next attribute in column
// order, ..., deduplicated, with the same threshold applied.
CandidateSet generate_anchored_candidates(const Dataset& train, int anchor,
                                          const HubWeights& hw, double min_wsup,
                                          GenerationMode mode = GenerationMode::Levelwise);

// One rule per (antecedent, class) clearing both thresholds; classic
// support/confidence recorded alongside for reporting. Candidates no
// transaction supports yield no rule.
RuleSet finalize_rules(const CandidateSet& cands, const HubWeights& hw,
                       const Dataset& train, double min_wconf);

// Enumeration oracle: every anchored itemset over the value combinations
// present in train, measured directly and filtered by both thresholds.
// Output canonically sorted. Refuses more than 12 non-class attributes.
RuleSet brute_force_rules(const Dataset& train, int anchor, const HubWeights& hw,
                          double min_wsup, double min_wconf);

// The prefix chain a single transaction contributes (threshold not applied).
std::vector<Itemset> prefix_chain_itemsets(const Dataset& d, int tx_index, int anchor);

// Canonical order: antecedent lexicographic by (attribute, value), then class.
bool rule_canonical_less(const Rule& a, const Rule& b);
void sort_rules_canonical(std::vector<Rule>& rules);

// One rule per line: "item, item => class [wsup=..., wconf=..., sup=..., conf=...]"
// with items written attr=value.
void write_rules(std::ostream& out, const std::vector<Rule>& rules, const Dataset& d);

std::string rule_to_string(const Rule& r, const Dataset& d);

}  // namespace cwac
