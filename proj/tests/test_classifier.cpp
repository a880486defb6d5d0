#include <doctest.h>

#include <algorithm>
#include <random>

#include "cwac/classifier.hpp"
#include "cwac/entropy.hpp"
#include "cwac/errors.hpp"
#include "test_support.hpp"

using namespace cwac;
using namespace cwac::testing;

namespace {

Rule make_rule(Itemset ant, int cls, double wconf, double wsup) {
    Rule r;
    r.antecedent = std::move(ant);
    r.consequent = cls;
    r.measures.wconf = wconf;
    r.measures.wsup = wsup;
    return r;
}

RuleSet as_ruleset(std::vector<Rule> rules) {
    RuleSet rs;
    rs.rules = std::move(rules);
    return rs;
}

}  // namespace

TEST_CASE("ranking keys in order of priority") {
    // wconf first.
    auto ordered = rank_rules(as_ruleset({make_rule(items({{0, 0}}), 0, 0.8, 0.9),
                                          make_rule(items({{0, 1}}), 0, 0.9, 0.1)}));
    CHECK(ordered[0].measures.wconf == 0.9);

    // wsup next.
    ordered = rank_rules(as_ruleset({make_rule(items({{0, 0}}), 0, 0.9, 0.2),
                                     make_rule(items({{0, 1}}), 0, 0.9, 0.3)}));
    CHECK(ordered[0].measures.wsup == 0.3);

    // Shorter antecedent next.
    ordered = rank_rules(as_ruleset({make_rule(items({{0, 0}, {1, 0}}), 0, 0.9, 0.3),
                                     make_rule(items({{0, 0}}), 0, 0.9, 0.3)}));
    CHECK(ordered[0].antecedent.size() == 1);

    // Lexicographic item order last.
    ordered = rank_rules(as_ruleset({make_rule(items({{0, 1}}), 0, 0.9, 0.3),
                                     make_rule(items({{0, 0}}), 0, 0.9, 0.3)}));
    CHECK(ordered[0].antecedent[0].value == 0);
}

TEST_CASE("ranking is invariant to input permutation") {
    std::vector<Rule> rules = {make_rule(items({{0, 0}}), 0, 0.9, 0.3),
                               make_rule(items({{0, 1}}), 1, 0.9, 0.3),
                               make_rule(items({{1, 0}}), 0, 0.7, 0.5),
                               make_rule(items({{0, 0}, {1, 0}}), 1, 0.9, 0.3),
                               make_rule(items({{2, 1}}), 0, 0.7, 0.2)};
    const auto baseline = rank_rules(as_ruleset(rules));
    std::mt19937 rng(3);
    for (int round = 0; round < 10; ++round) {
        std::shuffle(rules.begin(), rules.end(), rng);
        const auto ordered = rank_rules(as_ruleset(rules));
        REQUIRE(ordered.size() == baseline.size());
        for (std::size_t i = 0; i < ordered.size(); ++i)
            CHECK(ordered[i] == baseline[i]);
    }
}

TEST_CASE("conflict pruning keeps the highest ranked rule") {
    const auto ordered = rank_rules(as_ruleset({make_rule(items({{0, 0}}), 0, 0.8, 0.4),
                                                make_rule(items({{0, 0}}), 1, 0.2, 0.1)}));
    const RankedRuleList rrl = prune_conflicts_and_redundancy(ordered, 0);
    REQUIRE(rrl.rules.size() == 1);
    CHECK(rrl.rules[0].consequent == 0);
    CHECK(rrl.rules[0].measures.wconf == 0.8);
}

TEST_CASE("redundancy pruning drops specializations of surviving rules") {
    const auto ordered =
        rank_rules(as_ruleset({make_rule(items({{0, 0}}), 0, 0.8, 0.4),
                               make_rule(items({{0, 0}, {1, 1}}), 0, 0.8, 0.2)}));
    const RankedRuleList rrl = prune_conflicts_and_redundancy(ordered, 0);
    REQUIRE(rrl.rules.size() == 1);
    CHECK(rrl.rules[0].antecedent.size() == 1);

    // Even a higher ranked specialization falls to its generalization.
    const auto ordered2 =
        rank_rules(as_ruleset({make_rule(items({{0, 0}}), 0, 0.75, 0.4),
                               make_rule(items({{0, 0}, {1, 1}}), 0, 0.9, 0.2)}));
    const RankedRuleList rrl2 = prune_conflicts_and_redundancy(ordered2, 0);
    REQUIRE(rrl2.rules.size() == 1);
    CHECK(rrl2.rules[0].antecedent.size() == 1);

    // Different classes are not redundant.
    const auto ordered3 =
        rank_rules(as_ruleset({make_rule(items({{0, 0}}), 0, 0.75, 0.4),
                               make_rule(items({{0, 0}, {1, 1}}), 1, 0.9, 0.2)}));
    CHECK(prune_conflicts_and_redundancy(ordered3, 0).rules.size() == 2);
}

TEST_CASE("disjoint antecedents all survive") {
    const auto ordered = rank_rules(as_ruleset({make_rule(items({{0, 0}}), 0, 0.9, 0.4),
                                                make_rule(items({{1, 0}}), 0, 0.8, 0.3),
                                                make_rule(items({{2, 0}}), 1, 0.7, 0.2)}));
    CHECK(prune_conflicts_and_redundancy(ordered, 0).rules.size() == 3);
}

TEST_CASE("majority class") {
    CHECK(aids_table().schema[4].values[majority_class(aids_table())] == "Yes");
    CHECK(majority_class(t4()) == 0);  // tie 2-2 goes to the lower index, "+"

    const Dataset one = load_csv_text("x,label\na,z\n");
    CHECK(one.schema[1].values[majority_class(one)] == "z");
}

TEST_CASE("classification on the toy model") {
    const Dataset d = t4();
    const HubWeights hw = compute_hub_weights(build_incidence(d));
    const RuleSet rs =
        finalize_rules(generate_anchored_candidates(d, 0, hw, 0.1), hw, d, 0.5);
    const RankedRuleList rrl = build_classifier(rs, d);

    CHECK(rrl.rules.size() == 2);  // the two anchor rules; pairs are redundant
    CHECK(classify(rrl, {0, 1, -1}) == 0);  // (a1, b2) -> +
    CHECK(classify(rrl, {1, 0, -1}) == 1);  // (a2, b1) -> -
    CHECK(accuracy(rrl, d) == doctest::Approx(1.0));
}

TEST_CASE("classify falls back to the default class") {
    RankedRuleList empty;
    empty.default_class = 1;
    CHECK(classify(empty, {0, 0, 0}) == 1);

    // Unseen value indices never match any rule.
    RankedRuleList rrl;
    rrl.default_class = 1;
    rrl.rules = {make_rule(items({{0, 0}}), 0, 0.9, 0.5)};
    CHECK(classify(rrl, {7, 0, 0}) == 1);
}

TEST_CASE("first matching rule wins") {
    RankedRuleList rrl;
    rrl.default_class = 0;
    rrl.rules = {make_rule(items({{0, 0}}), 1, 0.9, 0.5),
                 make_rule(items({{1, 0}}), 0, 0.8, 0.5)};
    CHECK(classify(rrl, {0, 0, -1}) == 1);  // both match, first decides
}

TEST_CASE("accuracy arithmetic and errors") {
    const Dataset d = t4();
    RankedRuleList rrl;
    rrl.default_class = 0;
    rrl.rules = {make_rule(items({{1, 0}}), 0, 0.9, 0.5)};
    // Rule puts (b1) -> +: t1 right, t3 wrong; default + : t2 right, t4 wrong.
    CHECK(accuracy(rrl, d) == doctest::Approx(0.5));

    // Three of four correct.
    RankedRuleList three;
    three.default_class = 0;
    three.rules = {make_rule(items({{0, 1}, {1, 0}}), 1, 0.9, 0.25)};
    // (a2,b1) -> - catches t3; default + gets t1, t2 and misses t4.
    CHECK(accuracy(three, d) == doctest::Approx(0.75));

    RankedRuleList empty;
    empty.default_class = majority_class(d);
    const Dataset plus_only = d.subset({0, 1});
    CHECK(accuracy(empty, plus_only) == doctest::Approx(1.0));

    Dataset none = d;
    none.transactions.clear();
    CHECK_THROWS_AS(accuracy(empty, none), EmptyInputError);

    Transaction bad;
    bad.values = {0};
    CHECK_THROWS_AS(classify(empty, d, bad), ConsistencyError);
}

TEST_CASE("pruned list holds no conflicting or redundant pair") {
    for (std::uint64_t seed : {31, 32, 33, 34}) {
        const Dataset d = random_dataset(seed);
        const HubWeights hw = compute_hub_weights(build_incidence(d), 1e-12, 100000);
        const int anchor = select_anchor(d);
        const RuleSet rs = finalize_rules(
            generate_anchored_candidates(d, anchor, hw, 0.02), hw, d, 0.3);
        const RankedRuleList rrl = build_classifier(rs, d);

        auto subset_of = [](const Itemset& x, const Itemset& y) {
            return x.size() < y.size() &&
                   std::includes(y.begin(), y.end(), x.begin(), x.end());
        };
        for (std::size_t i = 0; i < rrl.rules.size(); ++i)
            for (std::size_t j = 0; j < rrl.rules.size(); ++j) {
                if (i == j) continue;
                const Rule& a = rrl.rules[i];
                const Rule& b = rrl.rules[j];
                CHECK_FALSE(a.antecedent == b.antecedent);
                if (a.consequent == b.consequent)
                    CHECK_FALSE(subset_of(a.antecedent, b.antecedent));
            }
    }
}

TEST_CASE("dropping a rank suffix never changes matches above it") {
    const Dataset d = random_dataset(55);
    const HubWeights hw = compute_hub_weights(build_incidence(d), 1e-12, 100000);
    const int anchor = select_anchor(d);
    const RuleSet rs =
        finalize_rules(generate_anchored_candidates(d, anchor, hw, 0.02), hw, d, 0.3);
    RankedRuleList rrl = build_classifier(rs, d);

    for (const auto& t : d.transactions) {
        // Find the matching rank in the full list.
        std::size_t match_rank = rrl.rules.size();
        for (std::size_t i = 0; i < rrl.rules.size(); ++i)
            if (d.transaction_contains(t, rrl.rules[i].antecedent)) {
                match_rank = i;
                break;
            }
        if (match_rank == rrl.rules.size()) continue;
        const int predicted = classify(rrl, d, t);

        RankedRuleList truncated = rrl;
        truncated.rules.resize(match_rank + 1);
        CHECK(classify(truncated, d, t) == predicted);
    }
}
