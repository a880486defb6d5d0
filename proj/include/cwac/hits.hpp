#pragma once

#include <Eigen/Core>
#include <vector>

#include "cwac/dataset.hpp"

namespace cwac {

// Transaction-item bipartite graph: transactions are hub nodes, distinct
// items are authority nodes.
struct BipartiteIncidence {
    int transaction_count = 0;
    int item_count = 0;
    std::vector<std::vector<int>> adjacency;  // per transaction, item ids
    std::vector<Item> items;                  // item id -> item

    long edge_count() const;
};

// Converged hub scores. w_support divides by `total`, so HITS output is
// normalized to total 1 while uniform baseline weights carry unit weights
// with total = |D| (integer count sums stay exact that way).
struct HubWeights {
    Eigen::VectorXd weights;
    double total = 1.0;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

struct WeightedMeasure {
    double wsup = 0.0;
    double wconf = 0.0;
    double raw_sup = 0.0;
    double raw_conf = 0.0;
};

BipartiteIncidence build_incidence(const Dataset& d, bool include_class_items = true);

// Power iteration: authority(i) = sum of hub(t) over t containing i, then
// hub(t) = sum of authority(i) over i in t, L1-renormalized each round from
// a uniform start. Stops when the L1 change of the hub vector drops to tol
// or max_iter is reached (then converged = false).
HubWeights compute_hub_weights(const BipartiteIncidence& g,
                               double tol = 1e-8,
                               int max_iter = 100);

HubWeights uniform_hub_weights(int transaction_count);

// Per-class sums of hub weights over transactions containing the antecedent,
// divided by hw.total. Single pass shared by the miner and the oracles so
// both sides see bit-identical values.
std::vector<double> class_wsup_table(const Itemset& antecedent,
                                     const HubWeights& hw,
                                     const Dataset& d);

// Weight fraction of transactions containing antecedent plus the class item.
// The antecedent may be empty (matches every transaction of that class).
double w_support(const Itemset& antecedent, const Item& class_item,
                 const HubWeights& hw, const Dataset& d);

// Weight fraction of transactions containing the antecedent, class ignored.
double w_support(const Itemset& antecedent, const HubWeights& hw, const Dataset& d);

// w_support(antecedent + class) / w_support(antecedent).
double w_confidence(const Itemset& antecedent, const Item& class_item,
                    const HubWeights& hw, const Dataset& d);

}  // namespace cwac
