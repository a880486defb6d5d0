#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cwac {

enum class AttributeKind { Categorical, NumericRaw };

// One column of the relation: its name, position, and the ordered list of
// distinct value labels. Value indices refer into `values`.
struct AttributeSchema {
    std::string name;
    int index = 0;
    AttributeKind kind = AttributeKind::Categorical;
    std::vector<std::string> values;
    bool is_class = false;

    int value_count() const { return static_cast<int>(values.size()); }
    // Index of a label, or -1 when the attribute has never seen it.
    int value_index(const std::string& label) const;
};

// An attribute/value pair, the atom of itemsets and the authority node of
// the transaction-item graph.
struct Item {
    int attribute = 0;
    int value = 0;

    friend auto operator<=>(const Item&, const Item&) = default;
};

// Antecedents are kept sorted by attribute index with at most one item per
// attribute; see canonicalize_itemset.
using Itemset = std::vector<Item>;

Itemset canonicalize_itemset(Itemset items);

struct Transaction {
    int id = 0;
    // One value index per attribute, class column included.
    std::vector<int> values;
};

class Dataset {
public:
    std::string name;
    std::vector<AttributeSchema> schema;
    std::vector<Transaction> transactions;

    int attribute_count() const { return static_cast<int>(schema.size()); }
    std::size_t size() const { return transactions.size(); }

    int class_index() const;
    int class_count() const { return schema[class_index()].value_count(); }
    int class_of(const Transaction& t) const { return t.values[class_index()]; }

    // Distinct non-class items present in the data.
    int item_count() const;

    const std::string& label_of(const Item& it) const {
        return schema[it.attribute].values[it.value];
    }

    // New dataset with the same schema holding the chosen transactions
    // (original ids preserved).
    Dataset subset(const std::vector<int>& indices) const;

    bool transaction_contains(const Transaction& t, const Itemset& items) const;

    std::string item_to_string(const Item& it) const;
    std::string itemset_to_string(const Itemset& items) const;
};

// Reads delimiter-separated text with a mandatory header row. Every distinct
// cell text becomes a value label; cells equal to missing_token become the
// dedicated label "?". class_column selects by header name, or by 0-based
// index when it parses as an integer; empty means last column. Columns whose
// non-missing cells all parse as numbers are tagged NumericRaw but keep
// their text labels until discretize.
Dataset load_dataset(std::istream& source,
                     const std::string& class_column = "",
                     const std::string& missing_token = "?",
                     const std::string& name = "",
                     char delimiter = ',');

Dataset load_dataset_file(const std::string& path,
                          const std::string& class_column = "",
                          const std::string& missing_token = "?",
                          char delimiter = ',');

// Replaces each NumericRaw attribute with <= bins equal-frequency intervals
// labeled "[lo,hi]". Ties never straddle a cut: the cut moves right until
// values differ, so fewer bins may come out. Missing cells keep their own
// "?" category.
Dataset discretize(const Dataset& d, int bins = 3);

// Deterministic shuffled holdout split: ceil(test_fraction*|D|) transactions
// to test, the rest to train, schema shared.
std::pair<Dataset, Dataset> holdout_split(const Dataset& d,
                                          double test_fraction,
                                          std::uint64_t seed);

}  // namespace cwac
