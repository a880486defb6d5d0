#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "cwac/dataset.hpp"
#include "cwac/errors.hpp"
#include "cwac/hits.hpp"
#include "test_support.hpp"

using namespace cwac;
using namespace cwac::testing;

TEST_CASE("incidence: toy graph shape") {
    const Dataset d = t4();
    const BipartiteIncidence g = build_incidence(d);
    CHECK(g.transaction_count == 4);
    CHECK(g.item_count == 6);  // a1,a2,b1,b2,+,-
    CHECK(g.edge_count() == 12);
}

TEST_CASE("incidence: class items can stay out") {
    const BipartiteIncidence g = build_incidence(t4(), false);
    CHECK(g.item_count == 4);
    CHECK(g.edge_count() == 8);
}

TEST_CASE("incidence: single transaction") {
    const Dataset d = load_csv_text("x,y,label\na,b,+\n");
    const BipartiteIncidence g = build_incidence(d);
    CHECK(g.transaction_count == 1);
    CHECK(g.adjacency[0].size() == 3);
}

TEST_CASE("incidence: worked example table") {
    const BipartiteIncidence g = build_incidence(aids_table());
    CHECK(g.transaction_count == 14);
    // 3+3+2+2 attribute values plus 2 class values, all of which occur.
    CHECK(g.item_count == 12);
    CHECK(g.edge_count() == 70);
}

TEST_CASE("hub weights: symmetric toy is uniform") {
    const HubWeights hw = compute_hub_weights(build_incidence(t4()));
    CHECK(hw.converged);
    for (int t = 0; t < 4; ++t) CHECK(hw.weights[t] == doctest::Approx(0.25));
}

TEST_CASE("hub weights: golden ratio pair") {
    // t1 = {a, b}, t2 = {a}; hub-to-hub matrix [[2,1],[1,1]].
    BipartiteIncidence g;
    g.transaction_count = 2;
    g.item_count = 2;
    g.adjacency = {{0, 1}, {0}};
    g.items = {Item{0, 0}, Item{1, 0}};
    const HubWeights hw = compute_hub_weights(g, 1e-12, 200);
    CHECK(hw.converged);
    CHECK(hw.weights[0] == doctest::Approx(0.6180).epsilon(1e-4));
    CHECK(hw.weights[1] == doctest::Approx(0.3820).epsilon(1e-4));
    CHECK(hw.weights[0] / hw.weights[1] ==
          doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-6));
}

TEST_CASE("hub weights: single transaction gets weight one") {
    const Dataset d = load_csv_text("x,label\na,+\n");
    const HubWeights hw = compute_hub_weights(build_incidence(d));
    CHECK(hw.weights[0] == doctest::Approx(1.0));
}

TEST_CASE("hub weights: nonnegative, normalized, permutation-equivariant") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Dataset d = random_dataset(seed + 300);
        const HubWeights hw = compute_hub_weights(build_incidence(d), 1e-12, 100000);
        CHECK(std::abs(hw.weights.sum() - 1.0) <= 1e-9);
        for (Eigen::Index t = 0; t < hw.weights.size(); ++t)
            CHECK(hw.weights[t] >= 0.0);

        std::vector<int> order(d.size());
        std::iota(order.begin(), order.end(), 0);
        std::mt19937 rng(seed);
        std::shuffle(order.begin(), order.end(), rng);
        const HubWeights shuffled =
            compute_hub_weights(build_incidence(d.subset(order)), 1e-12, 100000);
        for (std::size_t t = 0; t < order.size(); ++t)
            CHECK(shuffled.weights[static_cast<Eigen::Index>(t)] ==
                  doctest::Approx(hw.weights[order[t]]).epsilon(1e-9));
    }
}

TEST_CASE("hub weights match the dense eigen oracle") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const BipartiteIncidence g = random_incidence(seed);
        const HubWeights hw = compute_hub_weights(g, 1e-13, 200000);
        const Eigen::VectorXd expected = eigen_hub_oracle(g);
        REQUIRE(hw.weights.size() == expected.size());
        for (Eigen::Index t = 0; t < expected.size(); ++t)
            CHECK(hw.weights[t] == doctest::Approx(expected[t]).epsilon(1e-6));
    }
}

TEST_CASE("hub weights: iteration cap flags non-convergence") {
    BipartiteIncidence g;
    g.transaction_count = 2;
    g.item_count = 2;
    g.adjacency = {{0, 1}, {0}};
    g.items = {Item{0, 0}, Item{1, 0}};
    const HubWeights hw = compute_hub_weights(g, 1e-300, 3);
    CHECK_FALSE(hw.converged);
    CHECK(hw.iterations == 3);
}

TEST_CASE("w-support on the toy dataset") {
    const Dataset d = t4();
    const HubWeights hw = compute_hub_weights(build_incidence(d));
    const Item plus{2, 0};
    const Item minus{2, 1};

    CHECK(w_support(items({{0, 0}}), plus, hw, d) == doctest::Approx(0.5));
    CHECK(w_support(items({{0, 0}}), minus, hw, d) == doctest::Approx(0.0));
    CHECK(w_support(Itemset{}, plus, hw, d) == doctest::Approx(0.5));
    // Value index 1 of B paired with value index 0 of A occurs once.
    CHECK(w_support(items({{0, 0}, {1, 1}}), plus, hw, d) == doctest::Approx(0.25));
}

TEST_CASE("w-support: absent antecedent and errors") {
    const Dataset d = t4();
    const HubWeights hw = compute_hub_weights(build_incidence(d));
    // a1 with b1's sibling on the other class never co-occurs with minus.
    CHECK(w_support(items({{0, 0}}), Item{2, 1}, hw, d) == 0.0);

    const HubWeights wrong = uniform_hub_weights(3);
    CHECK_THROWS_AS(w_support(items({{0, 0}}), Item{2, 0}, wrong, d),
                    ConsistencyError);
    CHECK_THROWS_AS(w_support(items({{2, 0}}), Item{2, 0}, hw, d), ParameterError);
    CHECK_THROWS_AS(w_support(items({{0, 0}}), Item{1, 0}, hw, d), ParameterError);
}

TEST_CASE("w-confidence on the toy dataset") {
    const Dataset d = t4();
    const HubWeights hw = compute_hub_weights(build_incidence(d));
    const Item plus{2, 0};

    CHECK(w_confidence(items({{0, 0}}), plus, hw, d) == doctest::Approx(1.0));
    CHECK(w_confidence(items({{1, 0}}), plus, hw, d) == doctest::Approx(0.5));

    // An antecedent seen only under one class.
    const Dataset skew = load_csv_text("x,label\nu,+\nu,+\nv,-\n");
    const HubWeights shw = compute_hub_weights(build_incidence(skew));
    CHECK(w_confidence(items({{0, 0}}), Item{1, 0}, shw, skew) == doctest::Approx(1.0));

    // Valid items whose combination no transaction carries.
    const Dataset sparse = load_csv_text("x,y,label\na,p,+\nb,q,-\n");
    const HubWeights sparse_hw = compute_hub_weights(build_incidence(sparse));
    CHECK_THROWS_AS(w_confidence(items({{0, 0}, {1, 1}}), Item{2, 0}, sparse_hw, sparse),
                    UndefinedConfidenceError);

    // A value index outside the attribute's range breaks the item contract.
    CHECK_THROWS_AS(w_confidence(items({{0, 0}, {1, 2}}), plus, hw, d),
                    ParameterError);
}

TEST_CASE("w-support antimonotonicity and confidence partition on random data") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Dataset d = random_dataset(seed + 500);
        const HubWeights hw = compute_hub_weights(build_incidence(d), 1e-12, 100000);
        std::mt19937 rng(static_cast<unsigned>(seed));
        const int ci = d.class_index();

        for (int trial = 0; trial < 30; ++trial) {
            // Random transaction's items form Y; X drops one of them.
            const Transaction& tx = d.transactions[rng() % d.size()];
            Itemset y;
            for (int a = 0; a < d.attribute_count(); ++a)
                if (a != ci && rng() % 2) y.push_back(Item{a, tx.values[a]});
            if (y.size() < 2) continue;
            Itemset x = y;
            x.erase(x.begin() + rng() % x.size());

            for (int c = 0; c < d.class_count(); ++c) {
                const Item cls{ci, c};
                CHECK(w_support(y, cls, hw, d) <= w_support(x, cls, hw, d) + 1e-12);
            }
            double conf_sum = 0.0;
            for (int c = 0; c < d.class_count(); ++c)
                conf_sum += w_confidence(x, Item{ci, c}, hw, d);
            CHECK(conf_sum == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("uniform weights reduce w-support to classic support exactly") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Dataset d = random_dataset(seed + 700);
        const HubWeights uniform = uniform_hub_weights(static_cast<int>(d.size()));
        const int ci = d.class_index();
        std::mt19937 rng(static_cast<unsigned>(seed));

        for (int trial = 0; trial < 20; ++trial) {
            const Transaction& tx = d.transactions[rng() % d.size()];
            Itemset x;
            for (int a = 0; a < d.attribute_count(); ++a)
                if (a != ci && rng() % 2) x.push_back(Item{a, tx.values[a]});
            const int cls = static_cast<int>(rng() % d.class_count());

            long count = 0;
            for (const auto& t : d.transactions)
                if (t.values[ci] == cls && d.transaction_contains(t, x)) ++count;
            const double classic =
                static_cast<double>(count) / static_cast<double>(d.size());
            CHECK(w_support(x, Item{ci, cls}, uniform, d) == classic);
        }
    }
}
