#include "cwac/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "cwac/errors.hpp"

namespace cwac {

int AttributeSchema::value_index(const std::string& label) const {
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] == label) return static_cast<int>(i);
    return -1;
}

Itemset canonicalize_itemset(Itemset items) {
    std::sort(items.begin(), items.end());
    for (std::size_t i = 1; i < items.size(); ++i)
        if (items[i].attribute == items[i - 1].attribute)
            throw ParameterError("itemset holds two items of attribute " +
                                 std::to_string(items[i].attribute));
    return items;
}

int Dataset::class_index() const {
    for (const auto& a : schema)
        if (a.is_class) return a.index;
    throw SchemaError("dataset has no class attribute");
}

int Dataset::item_count() const {
    int ci = class_index();
    std::vector<std::vector<char>> seen(schema.size());
    for (const auto& a : schema) seen[a.index].assign(a.values.size(), 0);
    for (const auto& t : transactions)
        for (int a = 0; a < attribute_count(); ++a)
            if (a != ci) seen[a][t.values[a]] = 1;
    int n = 0;
    for (int a = 0; a < attribute_count(); ++a)
        if (a != ci) n += static_cast<int>(std::count(seen[a].begin(), seen[a].end(), 1));
    return n;
}

Dataset Dataset::subset(const std::vector<int>& indices) const {
    Dataset out;
    out.name = name;
    out.schema = schema;
    out.transactions.reserve(indices.size());
    for (int i : indices) out.transactions.push_back(transactions.at(i));
    return out;
}

bool Dataset::transaction_contains(const Transaction& t, const Itemset& items) const {
    for (const auto& it : items)
        if (t.values[it.attribute] != it.value) return false;
    return true;
}

std::string Dataset::item_to_string(const Item& it) const {
    return schema[it.attribute].name + "=" + schema[it.attribute].values[it.value];
}

std::string Dataset::itemset_to_string(const Itemset& items) const {
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) s += ", ";
        s += item_to_string(items[i]);
    }
    return s;
}

namespace {

// One delimited row; quoted fields may contain the delimiter, "" unescapes
// to a quote. Multi-line fields are not supported.
std::vector<std::string> split_row(const std::string& line, char delim, int row_no) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == delim) {
            cells.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted)
        throw ParseError("row " + std::to_string(row_no) + ": unterminated quote");
    cells.push_back(std::move(cur));
    return cells;
}

bool parses_as_number(const std::string& s) {
    if (s.empty()) return false;
    const char* begin = s.c_str();
    char* end = nullptr;
    std::strtod(begin, &end);
    if (end == begin) return false;
    while (*end != '\0') {
        if (!std::isspace(static_cast<unsigned char>(*end))) return false;
        ++end;
    }
    return true;
}

int resolve_class_column(const std::string& selector,
                         const std::vector<std::string>& header) {
    const int n = static_cast<int>(header.size());
    if (selector.empty()) return n - 1;
    for (int i = 0; i < n; ++i)
        if (header[i] == selector) return i;
    // Not a header name; try a 0-based index.
    char* end = nullptr;
    long idx = std::strtol(selector.c_str(), &end, 10);
    if (end == selector.c_str() || *end != '\0')
        throw SchemaError("class column '" + selector + "' matches no header");
    if (idx < 0 || idx >= n)
        throw SchemaError("class column index " + std::to_string(idx) +
                          " out of range (columns: " + std::to_string(n) + ")");
    return static_cast<int>(idx);
}

}  // namespace

Dataset load_dataset(std::istream& source, const std::string& class_column,
                     const std::string& missing_token, const std::string& name,
                     char delimiter) {
    std::vector<std::pair<int, std::vector<std::string>>> rows;  // (line no, cells)
    std::string line;
    int line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.emplace_back(line_no, split_row(line, delimiter, line_no));
    }
    if (rows.empty()) throw EmptyInputError("input stream holds no rows");

    const std::vector<std::string> header = rows.front().second;
    const int n_cols = static_cast<int>(header.size());
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (static_cast<int>(rows[r].second.size()) != n_cols)
            throw ParseError("row " + std::to_string(rows[r].first) + " has " +
                             std::to_string(rows[r].second.size()) +
                             " cells, header has " + std::to_string(n_cols));
    }
    if (rows.size() == 1) throw EmptyInputError("input stream holds no data rows");

    const int class_col = resolve_class_column(class_column, header);

    Dataset d;
    d.name = name;
    d.schema.resize(n_cols);
    std::vector<std::unordered_map<std::string, int>> index_of(n_cols);
    for (int c = 0; c < n_cols; ++c) {
        d.schema[c].name = header[c];
        d.schema[c].index = c;
        d.schema[c].is_class = (c == class_col);
    }

    d.transactions.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        Transaction t;
        t.id = static_cast<int>(r - 1);
        t.values.resize(n_cols);
        for (int c = 0; c < n_cols; ++c) {
            const std::string& cell =
                rows[r].second[c] == missing_token ? std::string("?") : rows[r].second[c];
            auto [pos, inserted] =
                index_of[c].try_emplace(cell, d.schema[c].value_count());
            if (inserted) d.schema[c].values.push_back(cell);
            t.values[c] = pos->second;
        }
        d.transactions.push_back(std::move(t));
    }

    // Numeric tagging: all non-missing labels parse and at least one exists.
    // The class column stays categorical, labels are labels.
    for (int c = 0; c < n_cols; ++c) {
        if (c == class_col) continue;
        bool any = false, all = true;
        for (const auto& label : d.schema[c].values) {
            if (label == "?") continue;
            any = true;
            if (!parses_as_number(label)) {
                all = false;
                break;
            }
        }
        if (any && all) d.schema[c].kind = AttributeKind::NumericRaw;
    }
    return d;
}

Dataset load_dataset_file(const std::string& path, const std::string& class_column,
                          const std::string& missing_token, char delimiter) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::string name = path;
    if (auto slash = name.find_last_of("/\\"); slash != std::string::npos)
        name = name.substr(slash + 1);
    if (auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0)
        name = name.substr(0, dot);
    return load_dataset(in, class_column, missing_token, name, delimiter);
}

namespace {

std::string format_number(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

Dataset discretize(const Dataset& d, int bins) {
    if (bins < 2) throw ParameterError("bins must be at least 2");

    Dataset out;
    out.name = d.name;
    out.schema = d.schema;
    out.transactions = d.transactions;

    for (auto& attr : out.schema) {
        if (attr.kind != AttributeKind::NumericRaw) continue;
        const int a = attr.index;

        const int missing_old = attr.value_index("?");
        std::vector<double> numeric(attr.values.size());
        for (std::size_t v = 0; v < attr.values.size(); ++v) {
            if (static_cast<int>(v) == missing_old) continue;
            const std::string& label = attr.values[v];
            char* end = nullptr;
            double parsed = std::strtod(label.c_str(), &end);
            if (end == label.c_str()) {
                int row = -1;
                for (const auto& t : out.transactions)
                    if (t.values[a] == static_cast<int>(v)) {
                        row = t.id;
                        break;
                    }
                throw ConversionError("attribute '" + attr.name + "' row " +
                                      std::to_string(row) + ": '" + label +
                                      "' is not numeric");
            }
            numeric[v] = parsed;
        }

        std::vector<double> sorted;
        sorted.reserve(out.transactions.size());
        for (const auto& t : out.transactions)
            if (t.values[a] != missing_old) sorted.push_back(numeric[t.values[a]]);
        std::sort(sorted.begin(), sorted.end());

        // Equal-frequency cut positions; a cut on a tie slides right until
        // the value changes, which may merge bins.
        const long n = static_cast<long>(sorted.size());
        std::vector<long> cuts;
        long start = 0;
        for (int b = 1; b < bins && n > 0; ++b) {
            long pos = n * b / bins;
            if (pos <= start) pos = start + 1;
            while (pos < n && sorted[pos - 1] == sorted[pos]) ++pos;
            if (pos >= n) break;
            cuts.push_back(pos);
            start = pos;
        }

        struct Bin {
            double lo, hi;
        };
        std::vector<Bin> bin_ranges;
        long lo_idx = 0;
        for (std::size_t b = 0; b <= cuts.size() && n > 0; ++b) {
            long hi_idx = (b < cuts.size()) ? cuts[b] : n;
            bin_ranges.push_back({sorted[lo_idx], sorted[hi_idx - 1]});
            lo_idx = hi_idx;
        }

        std::vector<std::string> new_values;
        for (const auto& bin : bin_ranges)
            new_values.push_back("[" + format_number(bin.lo) + "," +
                                 format_number(bin.hi) + "]");
        int missing_new = -1;
        if (missing_old >= 0) {
            missing_new = static_cast<int>(new_values.size());
            new_values.push_back("?");
        }

        for (auto& t : out.transactions) {
            if (t.values[a] == missing_old) {
                t.values[a] = missing_new;
                continue;
            }
            const double v = numeric[t.values[a]];
            int bin = 0;
            while (bin + 1 < static_cast<int>(bin_ranges.size()) &&
                   v > bin_ranges[bin].hi)
                ++bin;
            t.values[a] = bin;
        }

        attr.kind = AttributeKind::Categorical;
        attr.values = std::move(new_values);
    }
    return out;
}

std::pair<Dataset, Dataset> holdout_split(const Dataset& d, double test_fraction,
                                          std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw ParameterError("test fraction must lie in (0,1)");
    if (d.size() < 2) throw ParameterError("need at least 2 transactions to split");

    const long n = static_cast<long>(d.size());
    std::vector<int> order(n);
    for (long i = 0; i < n; ++i) order[i] = static_cast<int>(i);

    // Explicit Fisher-Yates so the permutation is the same on every
    // platform for a given seed.
    std::mt19937_64 rng(seed);
    for (long i = n - 1; i > 0; --i) {
        long j = static_cast<long>(rng() % static_cast<std::uint64_t>(i + 1));
        std::swap(order[i], order[j]);
    }

    // Tiny slack so fractions like 0.2 of 10 do not round up past their
    // mathematical ceiling.
    const long n_test = static_cast<long>(std::ceil(test_fraction * n - 1e-9));
    std::vector<int> test_idx(order.begin(), order.begin() + n_test);
    std::vector<int> train_idx(order.begin() + n_test, order.end());
    return {d.subset(train_idx), d.subset(test_idx)};
}

}  // namespace cwac
