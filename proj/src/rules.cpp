#include "cwac/rules.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>

#include "cwac/errors.hpp"

namespace cwac {

std::string to_string(GenerationMode m) {
    return m == GenerationMode::Levelwise ? "levelwise" : "prefix";
}

GenerationMode generation_mode_from_string(const std::string& s) {
    if (s == "levelwise") return GenerationMode::Levelwise;
    if (s == "prefix") return GenerationMode::TransactionPrefix;
    throw ParameterError("unknown generation mode '" + s + "'");
}

namespace {

// Observed value indices per attribute, ascending.
std::vector<std::vector<int>> observed_values(const Dataset& d) {
    std::vector<std::vector<char>> seen(d.attribute_count());
    for (int a = 0; a < d.attribute_count(); ++a)
        seen[a].assign(d.schema[a].values.size(), 0);
    for (const auto& t : d.transactions)
        for (int a = 0; a < d.attribute_count(); ++a) seen[a][t.values[a]] = 1;
    std::vector<std::vector<int>> vals(d.attribute_count());
    for (int a = 0; a < d.attribute_count(); ++a)
        for (std::size_t v = 0; v < seen[a].size(); ++v)
            if (seen[a][v]) vals[a].push_back(static_cast<int>(v));
    return vals;
}

bool any_class_clears(const std::vector<double>& table, double min_wsup) {
    for (double v : table)
        if (v >= min_wsup) return true;
    return false;
}

double sum_bare(const Itemset& antecedent, const HubWeights& hw, const Dataset& d) {
    return w_support(antecedent, hw, d);
}

void check_anchor(const Dataset& d, int anchor) {
    if (anchor < 0 || anchor >= d.attribute_count())
        throw ParameterError("anchor attribute index out of range");
    if (anchor == d.class_index())
        throw ParameterError("anchor must be a non-class attribute");
}

// The join works on the non-anchor tail of each antecedent: the anchor item
// is common to the whole lattice, so two survivors extend each other when
// their tails share every item but the last and those last items belong to
// different attributes.
struct LevelEntry {
    int anchor_value = 0;
    Itemset tail;  // non-anchor items, sorted by attribute
    std::vector<double> class_wsup;
};

CandidateSet generate_levelwise(const Dataset& train, int anchor,
                                const HubWeights& hw, double min_wsup) {
    CandidateSet out;
    out.anchor = anchor;
    out.min_wsup = min_wsup;
    out.mode = GenerationMode::Levelwise;

    const auto observed = observed_values(train);
    const int ci = train.class_index();
    const int n_classes = train.class_count();

    std::vector<int> other_attrs;
    for (int a = 0; a < train.attribute_count(); ++a)
        if (a != anchor && a != ci) other_attrs.push_back(a);

    auto assemble = [&](const LevelEntry& e) {
        Itemset full = e.tail;
        full.push_back(Item{anchor, e.anchor_value});
        std::sort(full.begin(), full.end());
        return full;
    };
    auto evaluate = [&](LevelEntry& e) {
        e.class_wsup = class_wsup_table(assemble(e), hw, train);
        out.evaluated_pairs += n_classes;
        return any_class_clears(e.class_wsup, min_wsup);
    };
    auto emit = [&](const LevelEntry& e) {
        Candidate c;
        c.antecedent = assemble(e);
        c.class_wsup = e.class_wsup;
        c.bare_wsup = sum_bare(c.antecedent, hw, train);
        out.candidates.push_back(std::move(c));
    };

    // Level 1: the anchor items themselves.
    std::vector<LevelEntry> level;
    for (int v : observed[anchor]) {
        LevelEntry e{v, {}, {}};
        if (evaluate(e)) level.push_back(std::move(e));
    }
    for (const auto& e : level) emit(e);

    // Level 2: surviving anchor items extended with every other item.
    std::vector<LevelEntry> next;
    for (const auto& e : level)
        for (int a : other_attrs)
            for (int v : observed[a]) {
                LevelEntry grown{e.anchor_value, {Item{a, v}}, {}};
                if (evaluate(grown)) next.push_back(std::move(grown));
            }
    level = std::move(next);

    // Levels 3+: prefix join within groups sharing anchor value and all
    // tail items but the last.
    while (!level.empty()) {
        for (const auto& e : level) emit(e);

        std::sort(level.begin(), level.end(), [](const LevelEntry& a, const LevelEntry& b) {
            if (a.anchor_value != b.anchor_value) return a.anchor_value < b.anchor_value;
            return a.tail < b.tail;
        });

        next.clear();
        for (std::size_t i = 0; i < level.size(); ++i) {
            for (std::size_t j = i + 1; j < level.size(); ++j) {
                const LevelEntry& a = level[i];
                const LevelEntry& b = level[j];
                if (a.anchor_value != b.anchor_value) break;
                if (!std::equal(a.tail.begin(), a.tail.end() - 1, b.tail.begin(),
                                b.tail.end() - 1))
                    break;  // sorted: once the prefix differs, the window is over
                if (a.tail.back().attribute == b.tail.back().attribute) continue;

                LevelEntry grown{a.anchor_value, a.tail, {}};
                grown.tail.push_back(b.tail.back());
                if (evaluate(grown)) next.push_back(std::move(grown));
            }
        }
        level = std::move(next);
    }
    return out;
}

CandidateSet generate_prefix(const Dataset& train, int anchor, const HubWeights& hw,
                             double min_wsup) {
    CandidateSet out;
    out.anchor = anchor;
    out.min_wsup = min_wsup;
    out.mode = GenerationMode::TransactionPrefix;

    const int n_classes = train.class_count();
    std::set<Itemset> seen;
    for (std::size_t t = 0; t < train.size(); ++t)
        for (auto& itemset : prefix_chain_itemsets(train, static_cast<int>(t), anchor))
            seen.insert(std::move(itemset));

    for (const auto& itemset : seen) {
        Candidate c;
        c.antecedent = itemset;
        c.class_wsup = class_wsup_table(c.antecedent, hw, train);
        c.bare_wsup = sum_bare(c.antecedent, hw, train);
        out.evaluated_pairs += n_classes;
        if (any_class_clears(c.class_wsup, min_wsup))
            out.candidates.push_back(std::move(c));
    }
    return out;
}

}  // namespace

std::vector<Itemset> prefix_chain_itemsets(const Dataset& d, int tx_index, int anchor) {
    check_anchor(d, anchor);
    const int ci = d.class_index();
    const Transaction& tx = d.transactions.at(tx_index);

    std::vector<Itemset> chain;
    Itemset current = {Item{anchor, tx.values[anchor]}};
    chain.push_back(current);
    for (int a = 0; a < d.attribute_count(); ++a) {
        if (a == anchor || a == ci) continue;
        current.push_back(Item{a, tx.values[a]});
        std::sort(current.begin(), current.end());
        chain.push_back(current);
    }
    return chain;
}

CandidateSet generate_anchored_candidates(const Dataset& train, int anchor,
                                          const HubWeights& hw, double min_wsup,
                                          GenerationMode mode) {
    check_anchor(train, anchor);
    if (min_wsup < 0.0 || min_wsup > 1.0)
        throw ParameterError("min_wsup must lie in [0,1]");
    if (train.transactions.empty()) throw EmptyInputError("empty training set");

    return mode == GenerationMode::Levelwise
               ? generate_levelwise(train, anchor, hw, min_wsup)
               : generate_prefix(train, anchor, hw, min_wsup);
}

namespace {

// Classic (count-based) measures for reporting.
void fill_raw_measures(Rule& r, const Dataset& train) {
    const int ci = train.class_index();
    long both = 0, ante = 0;
    for (const auto& t : train.transactions) {
        if (!train.transaction_contains(t, r.antecedent)) continue;
        ++ante;
        if (t.values[ci] == r.consequent) ++both;
    }
    const double n = static_cast<double>(train.size());
    r.measures.raw_sup = static_cast<double>(both) / n;
    r.measures.raw_conf = ante == 0 ? 0.0 : static_cast<double>(both) / ante;
}

std::vector<Rule> rules_from_tables(const std::vector<Candidate>& cands,
                                    const Dataset& train, double min_wsup,
                                    double min_wconf) {
    std::vector<Rule> rules;
    for (const auto& c : cands) {
        if (c.bare_wsup == 0.0) continue;  // confidence undefined
        for (int cls = 0; cls < static_cast<int>(c.class_wsup.size()); ++cls) {
            const double wsup = c.class_wsup[cls];
            if (wsup < min_wsup) continue;
            const double wconf = wsup / c.bare_wsup;
            if (wconf < min_wconf) continue;
            Rule r;
            r.antecedent = c.antecedent;
            r.consequent = cls;
            r.measures.wsup = wsup;
            r.measures.wconf = wconf;
            fill_raw_measures(r, train);
            rules.push_back(std::move(r));
        }
    }
    return rules;
}

}  // namespace

RuleSet finalize_rules(const CandidateSet& cands, const HubWeights& hw,
                       const Dataset& train, double min_wconf) {
    if (hw.weights.size() != static_cast<Eigen::Index>(train.size()))
        throw ConsistencyError("hub weights do not match the training set");
    if (min_wconf < 0.0 || min_wconf > 1.0)
        throw ParameterError("min_wconf must lie in [0,1]");

    RuleSet rs;
    rs.anchor = cands.anchor;
    rs.mode = cands.mode;
    rs.min_wsup = cands.min_wsup;
    rs.min_wconf = min_wconf;
    rs.evaluated_pairs = cands.evaluated_pairs;
    rs.rules = rules_from_tables(cands.candidates, train, cands.min_wsup, min_wconf);
    return rs;
}

RuleSet brute_force_rules(const Dataset& train, int anchor, const HubWeights& hw,
                          double min_wsup, double min_wconf) {
    check_anchor(train, anchor);
    if (train.transactions.empty()) throw EmptyInputError("empty training set");
    const int ci = train.class_index();
    if (train.attribute_count() - 1 > 12)
        throw BudgetError("brute-force enumeration limited to 12 non-class attributes");

    const auto observed = observed_values(train);
    std::vector<int> other_attrs;
    for (int a = 0; a < train.attribute_count(); ++a)
        if (a != anchor && a != ci) other_attrs.push_back(a);

    std::vector<Candidate> cands;
    long evaluated = 0;
    const int n_classes = train.class_count();

    // Every anchored value combination: anchor value times each subset of
    // the other attributes with each of their observed values.
    for (int av : observed[anchor]) {
        Itemset base = {Item{anchor, av}};
        // Recursive extension over other_attrs, materialized iteratively.
        std::vector<Itemset> frontier = {base};
        for (int a : other_attrs) {
            std::vector<Itemset> grown;
            for (const auto& itemset : frontier) {
                grown.push_back(itemset);  // skip attribute a
                for (int v : observed[a]) {
                    Itemset ext = itemset;
                    ext.push_back(Item{a, v});
                    grown.push_back(std::move(ext));
                }
            }
            frontier = std::move(grown);
        }
        for (auto& itemset : frontier) {
            std::sort(itemset.begin(), itemset.end());
            Candidate c;
            c.antecedent = std::move(itemset);
            c.class_wsup = class_wsup_table(c.antecedent, hw, train);
            c.bare_wsup = sum_bare(c.antecedent, hw, train);
            evaluated += n_classes;
            cands.push_back(std::move(c));
        }
    }

    RuleSet rs;
    rs.anchor = anchor;
    rs.mode = GenerationMode::Levelwise;
    rs.min_wsup = min_wsup;
    rs.min_wconf = min_wconf;
    rs.evaluated_pairs = evaluated;
    rs.rules = rules_from_tables(cands, train, min_wsup, min_wconf);
    sort_rules_canonical(rs.rules);
    return rs;
}

bool rule_canonical_less(const Rule& a, const Rule& b) {
    if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
    return a.consequent < b.consequent;
}

void sort_rules_canonical(std::vector<Rule>& rules) {
    std::sort(rules.begin(), rules.end(), rule_canonical_less);
}

std::string rule_to_string(const Rule& r, const Dataset& d) {
    const int ci = d.class_index();
    char measures[128];
    std::snprintf(measures, sizeof(measures), " [wsup=%.6g, wconf=%.6g, sup=%.6g, conf=%.6g]",
                  r.measures.wsup, r.measures.wconf, r.measures.raw_sup,
                  r.measures.raw_conf);
    return d.itemset_to_string(r.antecedent) + " => " +
           d.schema[ci].values[r.consequent] + measures;
}

void write_rules(std::ostream& out, const std::vector<Rule>& rules, const Dataset& d) {
    for (const auto& r : rules) out << rule_to_string(r, d) << "\n";
}

}  // namespace cwac
