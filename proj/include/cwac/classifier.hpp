#pragma once

#include <vector>

#include "cwac/dataset.hpp"
#include "cwac/rules.hpp"

namespace cwac {

// Rules in classification order plus the fallback class.
struct RankedRuleList {
    std::vector<Rule> rules;
    int default_class = 0;
};

// Strict total order: wconf desc, wsup desc, antecedent length asc,
// antecedent lexicographic by (attribute, value) asc, consequent asc.
bool rule_rank_less(const Rule& a, const Rule& b);

std::vector<Rule> rank_rules(const RuleSet& rs);

// Input must be rank-ordered. Of rules sharing an antecedent with different
// classes only the highest ranked survives; a rule is then dropped when a
// surviving same-class rule with a strict-subset antecedent exists, whatever
// their relative ranks.
RankedRuleList prune_conflicts_and_redundancy(const std::vector<Rule>& ordered,
                                              int default_class);

// Majority class of train, ties to the lowest class value index.
int majority_class(const Dataset& train);

// rank + prune + default class in one step.
RankedRuleList build_classifier(const RuleSet& rs, const Dataset& train);

// Class of the first rule whose antecedent is contained in the instance;
// default class when none matches. The class column entry is ignored.
int classify(const RankedRuleList& rrl, const std::vector<int>& values);
int classify(const RankedRuleList& rrl, const Dataset& d, const Transaction& t);

double accuracy(const RankedRuleList& rrl, const Dataset& test);

}  // namespace cwac
