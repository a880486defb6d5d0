#include "cwac/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "cwac/entropy.hpp"
#include "cwac/errors.hpp"
#include "cwac/hits.hpp"

namespace cwac {

std::string to_string(Mode m) {
    switch (m) {
        case Mode::Cwac: return "cwac";
        case Mode::Garc: return "garc";
        case Mode::Cba: return "cba";
    }
    return "cwac";
}

Mode mode_from_string(const std::string& s) {
    if (s == "cwac") return Mode::Cwac;
    if (s == "garc") return Mode::Garc;
    if (s == "cba") return Mode::Cba;
    throw ParameterError("unknown mode '" + s + "'");
}

std::string to_string(ReportFormat f) {
    return f == ReportFormat::Json ? "json" : "text";
}

ReportFormat report_format_from_string(const std::string& s) {
    if (s == "json") return ReportFormat::Json;
    if (s == "text") return ReportFormat::Text;
    throw ParameterError("unknown report format '" + s + "'");
}

namespace {

bool any_clears(const std::vector<double>& table, double threshold) {
    for (double v : table)
        if (v >= threshold) return true;
    return false;
}

}  // namespace

RuleSet baseline_cba(const Dataset& train, double min_sup, double min_conf,
                     long candidate_cap) {
    if (min_sup < 0.0 || min_sup > 1.0 || min_conf < 0.0 || min_conf > 1.0)
        throw ParameterError("thresholds must lie in [0,1]");
    if (train.transactions.empty()) throw EmptyInputError("empty training set");

    const HubWeights uniform = uniform_hub_weights(static_cast<int>(train.size()));
    const int ci = train.class_index();
    const int n_classes = train.class_count();

    std::vector<std::vector<char>> seen(train.attribute_count());
    for (int a = 0; a < train.attribute_count(); ++a)
        seen[a].assign(train.schema[a].values.size(), 0);
    for (const auto& t : train.transactions)
        for (int a = 0; a < train.attribute_count(); ++a) seen[a][t.values[a]] = 1;

    struct Entry {
        Itemset itemset;
        std::vector<double> class_sup;
    };

    long evaluated = 0;
    auto evaluate = [&](Entry& e) {
        evaluated += n_classes;
        if (evaluated > candidate_cap)
            throw BudgetError("candidate budget of " + std::to_string(candidate_cap) +
                              " (itemset, class) pairs exceeded");
        e.class_sup = class_wsup_table(e.itemset, uniform, train);
        return any_clears(e.class_sup, min_sup);
    };

    std::vector<Candidate> kept;
    auto keep = [&](const Entry& e) {
        Candidate c;
        c.antecedent = e.itemset;
        c.class_wsup = e.class_sup;
        c.bare_wsup = w_support(e.itemset, uniform, train);
        kept.push_back(std::move(c));
    };

    // Level 1: every observed non-class item.
    std::vector<Entry> level;
    for (int a = 0; a < train.attribute_count(); ++a) {
        if (a == ci) continue;
        for (std::size_t v = 0; v < seen[a].size(); ++v) {
            if (!seen[a][v]) continue;
            Entry e{{Item{a, static_cast<int>(v)}}, {}};
            if (evaluate(e)) level.push_back(std::move(e));
        }
    }

    while (!level.empty()) {
        for (const auto& e : level) keep(e);

        std::sort(level.begin(), level.end(),
                  [](const Entry& a, const Entry& b) { return a.itemset < b.itemset; });

        std::vector<Entry> next;
        for (std::size_t i = 0; i < level.size(); ++i) {
            for (std::size_t j = i + 1; j < level.size(); ++j) {
                const Itemset& a = level[i].itemset;
                const Itemset& b = level[j].itemset;
                if (!std::equal(a.begin(), a.end() - 1, b.begin(), b.end() - 1))
                    break;
                if (a.back().attribute == b.back().attribute) continue;

                Entry grown{a, {}};
                grown.itemset.push_back(b.back());
                if (evaluate(grown)) next.push_back(std::move(grown));
            }
        }
        level = std::move(next);
    }

    RuleSet rs;
    rs.anchor = -1;
    rs.mode = GenerationMode::Levelwise;
    rs.min_wsup = min_sup;
    rs.min_wconf = min_conf;
    rs.evaluated_pairs = evaluated;

    for (const auto& c : kept) {
        if (c.bare_wsup == 0.0) continue;
        for (int cls = 0; cls < n_classes; ++cls) {
            const double sup = c.class_wsup[cls];
            if (sup < min_sup) continue;
            const double conf = sup / c.bare_wsup;
            if (conf < min_conf) continue;
            Rule r;
            r.antecedent = c.antecedent;
            r.consequent = cls;
            r.measures.wsup = sup;
            r.measures.wconf = conf;
            r.measures.raw_sup = sup;
            r.measures.raw_conf = conf;
            rs.rules.push_back(std::move(r));
        }
    }
    return rs;
}

RuleSet baseline_garc(const Dataset& train, int anchor, double min_sup,
                      double min_conf, GenerationMode mode) {
    const HubWeights uniform = uniform_hub_weights(static_cast<int>(train.size()));
    const CandidateSet cands =
        generate_anchored_candidates(train, anchor, uniform, min_sup, mode);
    return finalize_rules(cands, uniform, train, min_conf);
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <typename Fn>
void run_stage(Report& r, const std::string& stage, Fn&& fn) {
    const auto t0 = Clock::now();
    try {
        fn();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage, e.what());
    }
    r.timings_ms[stage + "_ms"] = ms_since(t0);
}

}  // namespace

Report run_experiment(const ExperimentConfig& cfg) {
    Report r;
    r.config = cfg;
    const auto start = Clock::now();

    Dataset raw, data, train, test;
    run_stage(r, "load", [&] {
        raw = load_dataset_file(cfg.data_path, cfg.class_column, cfg.missing_token);
    });
    run_stage(r, "discretize", [&] { data = discretize(raw, cfg.bins); });

    r.dataset_name = data.name;
    r.transactions = static_cast<long>(data.size());
    r.items = data.item_count();
    r.classes = data.class_count();

    run_stage(r, "split", [&] {
        auto [tr, te] = holdout_split(data, cfg.test_fraction, cfg.seed);
        train = std::move(tr);
        test = std::move(te);
    });
    r.train_size = static_cast<long>(train.size());
    r.test_size = static_cast<long>(test.size());

    if (cfg.mode != Mode::Cba) {
        run_stage(r, "anchor", [&] {
            r.anchor_index = select_anchor(train);
            r.anchor_name = train.schema[r.anchor_index].name;
        });
    }

    HubWeights hw;
    run_stage(r, "weights", [&] {
        if (cfg.mode == Mode::Cwac) {
            const BipartiteIncidence g =
                build_incidence(train, cfg.include_class_in_hits);
            hw = compute_hub_weights(g, cfg.hits_tol, cfg.hits_max_iter);
            r.hits = HitsSummary{hw.iterations, hw.residual, hw.converged};
        } else {
            hw = uniform_hub_weights(static_cast<int>(train.size()));
        }
    });

    RuleSet rs;
    run_stage(r, "mine", [&] {
        switch (cfg.mode) {
            case Mode::Cwac: {
                const CandidateSet cands = generate_anchored_candidates(
                    train, r.anchor_index, hw, cfg.min_wsup, cfg.generation);
                rs = finalize_rules(cands, hw, train, cfg.min_wconf);
                break;
            }
            case Mode::Garc:
                rs = baseline_garc(train, r.anchor_index, cfg.min_wsup,
                                   cfg.min_wconf, cfg.generation);
                break;
            case Mode::Cba:
                rs = baseline_cba(train, cfg.min_wsup, cfg.min_wconf,
                                  cfg.cba_candidate_cap);
                break;
        }
    });

    RankedRuleList rrl;
    run_stage(r, "prune", [&] { rrl = build_classifier(rs, train); });

    run_stage(r, "classify", [&] { r.accuracy = accuracy(rrl, test); });

    if (!cfg.rules_out.empty()) {
        run_stage(r, "rules_out", [&] {
            std::ofstream out(cfg.rules_out);
            if (!out) throw IoError("cannot write '" + cfg.rules_out + "'");
            write_rules(out, rrl.rules, train);
        });
    }

    r.candidate_rules = rs.evaluated_pairs;
    r.thresholded_rules = static_cast<long>(rs.rules.size());
    r.final_rules = static_cast<long>(rrl.rules.size());
    r.timings_ms["total_ms"] = ms_since(start);
    return r;
}

namespace {

nlohmann::ordered_json report_to_json(const Report& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = r.schema_version;
    j["dataset"] = {{"name", r.dataset_name},
                    {"transactions", r.transactions},
                    {"items", r.items},
                    {"classes", r.classes}};
    j["config"] = {{"data", r.config.data_path},
                   {"class_column", r.config.class_column},
                   {"missing_token", r.config.missing_token},
                   {"bins", r.config.bins},
                   {"test_fraction", r.config.test_fraction},
                   {"seed", r.config.seed},
                   {"min_wsup", r.config.min_wsup},
                   {"min_wconf", r.config.min_wconf},
                   {"mode", to_string(r.config.mode)},
                   {"generation", to_string(r.config.generation)},
                   {"include_class_in_hits", r.config.include_class_in_hits},
                   {"rules_out", r.config.rules_out}};
    j["split"] = {{"train", r.train_size}, {"test", r.test_size}};
    if (r.anchor_index >= 0)
        j["anchor"] = {{"index", r.anchor_index}, {"name", r.anchor_name}};
    else
        j["anchor"] = nullptr;
    if (r.hits)
        j["hits"] = {{"iterations", r.hits->iterations},
                     {"residual", r.hits->residual},
                     {"converged", r.hits->converged}};
    else
        j["hits"] = nullptr;
    j["rules"] = {{"candidates", r.candidate_rules},
                  {"thresholded", r.thresholded_rules},
                  {"final", r.final_rules}};
    j["accuracy"] = r.accuracy;
    j["timings_ms"] = r.timings_ms;
    return j;
}

std::string text_report(const Report& r) {
    std::ostringstream out;
    auto line = [&](const std::string& key, const std::string& value) {
        out << "  " << key;
        for (std::size_t i = key.size(); i < 24; ++i) out << ' ';
        out << value << "\n";
    };
    out << "experiment report (schema v" << r.schema_version << ")\n";
    line("dataset", r.dataset_name);
    line("transactions", std::to_string(r.transactions));
    line("items", std::to_string(r.items));
    line("classes", std::to_string(r.classes));
    line("mode", to_string(r.config.mode));
    line("generation", to_string(r.config.generation));
    line("bins", std::to_string(r.config.bins));
    line("test_fraction", std::to_string(r.config.test_fraction));
    line("seed", std::to_string(r.config.seed));
    line("min_wsup", std::to_string(r.config.min_wsup));
    line("min_wconf", std::to_string(r.config.min_wconf));
    line("train/test", std::to_string(r.train_size) + "/" + std::to_string(r.test_size));
    line("anchor", r.anchor_index >= 0
                       ? r.anchor_name + " (index " + std::to_string(r.anchor_index) + ")"
                       : std::string("none"));
    if (r.hits)
        line("hits", std::to_string(r.hits->iterations) + " iterations, residual " +
                         std::to_string(r.hits->residual));
    line("candidate rules", std::to_string(r.candidate_rules));
    line("thresholded rules", std::to_string(r.thresholded_rules));
    line("final rules", std::to_string(r.final_rules));
    line("accuracy", std::to_string(r.accuracy));
    double total = 0.0;
    if (auto it = r.timings_ms.find("total_ms"); it != r.timings_ms.end())
        total = it->second;
    line("wall clock", std::to_string(total) + " ms");
    return out.str();
}

}  // namespace

std::string emit_report(const Report& r, ReportFormat format) {
    if (format == ReportFormat::Json) return report_to_json(r).dump(2) + "\n";
    return text_report(r);
}

Report parse_report_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    Report r;
    r.schema_version = j.at("schema_version").get<int>();
    r.dataset_name = j.at("dataset").at("name").get<std::string>();
    r.transactions = j.at("dataset").at("transactions").get<long>();
    r.items = j.at("dataset").at("items").get<int>();
    r.classes = j.at("dataset").at("classes").get<int>();

    const auto& c = j.at("config");
    r.config.data_path = c.at("data").get<std::string>();
    r.config.class_column = c.at("class_column").get<std::string>();
    r.config.missing_token = c.at("missing_token").get<std::string>();
    r.config.bins = c.at("bins").get<int>();
    r.config.test_fraction = c.at("test_fraction").get<double>();
    r.config.seed = c.at("seed").get<std::uint64_t>();
    r.config.min_wsup = c.at("min_wsup").get<double>();
    r.config.min_wconf = c.at("min_wconf").get<double>();
    r.config.mode = mode_from_string(c.at("mode").get<std::string>());
    r.config.generation =
        generation_mode_from_string(c.at("generation").get<std::string>());
    r.config.include_class_in_hits = c.at("include_class_in_hits").get<bool>();
    r.config.rules_out = c.at("rules_out").get<std::string>();

    r.train_size = j.at("split").at("train").get<long>();
    r.test_size = j.at("split").at("test").get<long>();
    if (!j.at("anchor").is_null()) {
        r.anchor_index = j.at("anchor").at("index").get<int>();
        r.anchor_name = j.at("anchor").at("name").get<std::string>();
    }
    if (!j.at("hits").is_null()) {
        HitsSummary h;
        h.iterations = j.at("hits").at("iterations").get<int>();
        h.residual = j.at("hits").at("residual").get<double>();
        h.converged = j.at("hits").at("converged").get<bool>();
        r.hits = h;
    }
    r.candidate_rules = j.at("rules").at("candidates").get<long>();
    r.thresholded_rules = j.at("rules").at("thresholded").get<long>();
    r.final_rules = j.at("rules").at("final").get<long>();
    r.accuracy = j.at("accuracy").get<double>();
    for (const auto& [k, v] : j.at("timings_ms").items())
        r.timings_ms[k] = v.get<double>();
    return r;
}

}  // namespace cwac
