#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cwac/errors.hpp"
#include "cwac/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Weighted class association rule mining benchmark"};
    app.set_config("--config")->description("key=value file; flags override it");

    cwac::ExperimentConfig cfg;
    std::string mode = "cwac";
    std::string generation = "levelwise";
    std::string report_format = "json";
    std::string report_out;
    double min_chi_square = -1.0;

    app.add_option("--data", cfg.data_path, "input delimited text file")->required();
    app.add_option("--class-column", cfg.class_column,
                   "class column header name or 0-based index (default: last column)");
    app.add_option("--missing-token", cfg.missing_token,
                   "cell text treated as missing (default '?')");
    app.add_option("--bins", cfg.bins, "equal-frequency bins for numeric columns")
        ->check(CLI::Range(2, 1000))
        ->capture_default_str();
    app.add_option("--test-fraction", cfg.test_fraction, "holdout test fraction")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "split seed")->capture_default_str();
    app.add_option("--min-wsup", cfg.min_wsup, "minimum (weighted) support")
        ->capture_default_str();
    app.add_option("--min-wconf", cfg.min_wconf, "minimum (weighted) confidence")
        ->capture_default_str();
    app.add_option("--mode", mode, "cwac | garc | cba")->capture_default_str();
    app.add_option("--generation", generation, "levelwise | prefix")
        ->capture_default_str();
    app.add_flag("--include-class-in-hits,!--exclude-class-from-hits",
                 cfg.include_class_in_hits,
                 "class items participate in the link graph (default: included)");
    app.add_option("--report", report_format, "json | text")->capture_default_str();
    app.add_option("--report-out", report_out, "write the report here instead of stdout");
    app.add_option("--rules-out", cfg.rules_out, "write the final rules to this file");
    app.add_option("--cba-candidate-cap", cfg.cba_candidate_cap,
                   "abort cba generation past this many candidates")
        ->capture_default_str();
    app.add_option("--min-chi-square", min_chi_square,
                   "reserved; chi-square filtering is not implemented");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.count("--min-chi-square") > 0)
            throw cwac::ParameterError(
                "--min-chi-square is a reserved hook; chi-square filtering is not "
                "implemented");
        cfg.mode = cwac::mode_from_string(mode);
        cfg.generation = cwac::generation_mode_from_string(generation);
        cfg.report_format = cwac::report_format_from_string(report_format);

        const cwac::Report report = cwac::run_experiment(cfg);
        const std::string text = cwac::emit_report(report, cfg.report_format);
        if (report_out.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(report_out);
            if (!out) throw cwac::IoError("cannot write '" + report_out + "'");
            out << text;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
