#include "cwac/hits.hpp"

#include <map>

#include "cwac/errors.hpp"

namespace cwac {

long BipartiteIncidence::edge_count() const {
    long n = 0;
    for (const auto& adj : adjacency) n += static_cast<long>(adj.size());
    return n;
}

BipartiteIncidence build_incidence(const Dataset& d, bool include_class_items) {
    if (d.transactions.empty()) throw EmptyInputError("dataset has no transactions");
    const int ci = d.class_index();

    // Authority ids in (attribute, value) order over the items that occur.
    std::map<Item, int> id_of;
    for (const auto& t : d.transactions)
        for (int a = 0; a < d.attribute_count(); ++a) {
            if (a == ci && !include_class_items) continue;
            id_of.emplace(Item{a, t.values[a]}, 0);
        }
    BipartiteIncidence g;
    g.items.reserve(id_of.size());
    for (auto& [item, id] : id_of) {
        id = static_cast<int>(g.items.size());
        g.items.push_back(item);
    }

    g.transaction_count = static_cast<int>(d.size());
    g.item_count = static_cast<int>(g.items.size());
    g.adjacency.resize(d.size());
    for (std::size_t t = 0; t < d.size(); ++t) {
        for (int a = 0; a < d.attribute_count(); ++a) {
            if (a == ci && !include_class_items) continue;
            g.adjacency[t].push_back(id_of.at(Item{a, d.transactions[t].values[a]}));
        }
    }
    return g;
}

HubWeights compute_hub_weights(const BipartiteIncidence& g, double tol, int max_iter) {
    if (tol <= 0.0) throw ParameterError("tolerance must be positive");
    if (max_iter < 1) throw ParameterError("max_iter must be at least 1");
    if (g.transaction_count < 1 || g.item_count < 1)
        throw ParameterError("incidence graph has no nodes");

    const int n = g.transaction_count;
    HubWeights hw;
    hw.weights = Eigen::VectorXd::Constant(n, 1.0 / n);
    hw.total = 1.0;

    Eigen::VectorXd authority = Eigen::VectorXd::Zero(g.item_count);
    Eigen::VectorXd next = Eigen::VectorXd::Zero(n);

    for (int iter = 1; iter <= max_iter; ++iter) {
        authority.setZero();
        for (int t = 0; t < n; ++t)
            for (int i : g.adjacency[t]) authority[i] += hw.weights[t];
        for (int t = 0; t < n; ++t) {
            double s = 0.0;
            for (int i : g.adjacency[t]) s += authority[i];
            next[t] = s;
        }
        next /= next.sum();

        hw.residual = (next - hw.weights).lpNorm<1>();
        hw.weights = next;
        hw.iterations = iter;
        if (hw.residual <= tol) {
            hw.converged = true;
            break;
        }
    }
    return hw;
}

HubWeights uniform_hub_weights(int transaction_count) {
    if (transaction_count < 1) throw ParameterError("need at least one transaction");
    HubWeights hw;
    // Unit weights with total = |D|: weighted counts then reduce to exact
    // transaction counts, which ties the weighted measures to the classic
    // ones without roundoff.
    hw.weights = Eigen::VectorXd::Ones(transaction_count);
    hw.total = static_cast<double>(transaction_count);
    hw.converged = true;
    return hw;
}

namespace {

void check_sized_for(const HubWeights& hw, const Dataset& d) {
    if (hw.weights.size() != static_cast<Eigen::Index>(d.size()))
        throw ConsistencyError("hub weights cover " +
                               std::to_string(hw.weights.size()) +
                               " transactions, dataset has " +
                               std::to_string(d.size()));
}

void check_antecedent(const Itemset& antecedent, const Dataset& d) {
    const int ci = d.class_index();
    for (const auto& it : antecedent) {
        if (it.attribute < 0 || it.attribute >= d.attribute_count())
            throw ParameterError("item attribute index out of schema range");
        if (it.value < 0 || it.value >= d.schema[it.attribute].value_count())
            throw ParameterError("item value index out of range for attribute '" +
                                 d.schema[it.attribute].name + "'");
        if (it.attribute == ci)
            throw ParameterError("antecedent contains a class item");
    }
}

}  // namespace

std::vector<double> class_wsup_table(const Itemset& antecedent, const HubWeights& hw,
                                     const Dataset& d) {
    check_sized_for(hw, d);
    const int ci = d.class_index();
    check_antecedent(antecedent, d);
    std::vector<double> table(d.class_count(), 0.0);
    for (std::size_t t = 0; t < d.size(); ++t) {
        const Transaction& tx = d.transactions[t];
        if (!d.transaction_contains(tx, antecedent)) continue;
        table[tx.values[ci]] += hw.weights[static_cast<Eigen::Index>(t)];
    }
    for (double& v : table) v /= hw.total;
    return table;
}

double w_support(const Itemset& antecedent, const Item& class_item,
                 const HubWeights& hw, const Dataset& d) {
    check_sized_for(hw, d);
    const int ci = d.class_index();
    check_antecedent(antecedent, d);
    if (class_item.attribute != ci)
        throw ParameterError("consequent is not a class item");
    double sum = 0.0;
    for (std::size_t t = 0; t < d.size(); ++t) {
        const Transaction& tx = d.transactions[t];
        if (tx.values[ci] != class_item.value) continue;
        if (!d.transaction_contains(tx, antecedent)) continue;
        sum += hw.weights[static_cast<Eigen::Index>(t)];
    }
    return sum / hw.total;
}

double w_support(const Itemset& antecedent, const HubWeights& hw, const Dataset& d) {
    check_sized_for(hw, d);
    check_antecedent(antecedent, d);
    double sum = 0.0;
    for (std::size_t t = 0; t < d.size(); ++t) {
        if (!d.transaction_contains(d.transactions[t], antecedent)) continue;
        sum += hw.weights[static_cast<Eigen::Index>(t)];
    }
    return sum / hw.total;
}

double w_confidence(const Itemset& antecedent, const Item& class_item,
                    const HubWeights& hw, const Dataset& d) {
    const double bare = w_support(antecedent, hw, d);
    if (bare == 0.0)
        throw UndefinedConfidenceError("antecedent carries no weight: " +
                                       d.itemset_to_string(antecedent));
    return w_support(antecedent, class_item, hw, d) / bare;
}

}  // namespace cwac
