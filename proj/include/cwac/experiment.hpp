#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cwac/classifier.hpp"
#include "cwac/dataset.hpp"
#include "cwac/rules.hpp"

namespace cwac {

enum class Mode { Cwac, Garc, Cba };
enum class ReportFormat { Json, Text };

std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);
std::string to_string(ReportFormat f);
ReportFormat report_format_from_string(const std::string& s);

struct ExperimentConfig {
    std::string data_path;
    std::string class_column;  // header name, 0-based index, or empty for last
    std::string missing_token = "?";
    int bins = 3;
    double test_fraction = 1.0 / 3.0;
    std::uint64_t seed = 1;
    double min_wsup = 0.01;
    double min_wconf = 0.5;
    Mode mode = Mode::Cwac;
    GenerationMode generation = GenerationMode::Levelwise;
    bool include_class_in_hits = true;
    ReportFormat report_format = ReportFormat::Json;
    std::string rules_out;        // empty: no rules file
    long cba_candidate_cap = 1'000'000;
    double hits_tol = 1e-8;
    int hits_max_iter = 100;
};

struct HitsSummary {
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

struct Report {
    int schema_version = 1;

    std::string dataset_name;
    long transactions = 0;
    int items = 0;    // distinct non-class items after discretization
    int classes = 0;

    ExperimentConfig config;

    long train_size = 0;
    long test_size = 0;

    int anchor_index = -1;  // -1: no anchor (cba)
    std::string anchor_name;

    std::optional<HitsSummary> hits;

    long candidate_rules = 0;    // (itemset, class) pairs evaluated
    long thresholded_rules = 0;  // rules clearing both thresholds
    long final_rules = 0;        // after conflict/redundancy pruning

    double accuracy = 0.0;

    std::map<std::string, double> timings_ms;
};

// Full pipeline for the chosen mode: load, discretize, split, select anchor,
// weight, mine, prune, classify. Identical configs (seed included) give
// identical reports except the timing fields. Errors carry the stage name.
Report run_experiment(const ExperimentConfig& cfg);

// Unanchored Apriori-style class rule generation over all attributes with
// classic support/confidence. Aborts with BudgetError past candidate_cap
// evaluated (itemset, class) pairs.
RuleSet baseline_cba(const Dataset& train, double min_sup, double min_conf,
                     long candidate_cap = 1'000'000);

// Anchored generation identical to the weighted miner but with uniform
// weights, so measures reduce to classic support/confidence.
RuleSet baseline_garc(const Dataset& train, int anchor, double min_sup,
                      double min_conf,
                      GenerationMode mode = GenerationMode::Levelwise);

// json: stable key order with a schema_version field; text: aligned table.
std::string emit_report(const Report& r, ReportFormat format);

// Inverse of emit_report for the json format.
Report parse_report_json(const std::string& text);

}  // namespace cwac
