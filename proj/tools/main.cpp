// meancomp command-line tool. Talks to the library exclusively through the
// C API in meancomp.h; all file I/O happens here.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "meancomp.h"

namespace {

// exit codes, documented in the README
constexpr int kExitSuccess = 0;
constexpr int kExitRefuted = 1;      // the comparison was refuted
constexpr int kExitConfigError = 2;  // configuration / mean construction problem
constexpr int kExitEvalError = 3;    // evaluation failed while checking

int exit_code_for(mc_status status) {
    switch (status) {
        case MC_OK:
            return kExitSuccess;
        case MC_ERR_PARSE:
        case MC_ERR_INVALID:
        case MC_ERR_CERTIFY:
        case MC_ERR_CONFIG:
            return kExitConfigError;
        default:
            return kExitEvalError;
    }
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"meancomp — evaluate and compare generalized Bajraktarevic means"};
    app.set_version_flag("--version", std::string(mc_version()));
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> grid;
    std::optional<double> tol;
    std::optional<std::string> csv_path;
    bool quiet = false;

    CLI::App* compare = app.add_subcommand(
        "compare", "Run every comparison check described by a JSON config file");
    compare->add_option("config", config_path, "path to the problem configuration")->required();
    compare->add_option("--seed", seed, "override the search seed");
    compare->add_option("--grid", grid,
                        "override every grid resolution (samples, pair grid, search lattice, "
                        "csv)");
    compare->add_option("--tol", tol, "override all tolerances");
    compare->add_option("--csv", csv_path, "write the n=2 gap landscape to this path");
    compare->add_flag("--quiet", quiet, "suppress the summary on stdout");

    bool selftest_quiet = false;
    CLI::App* selftest = app.add_subcommand("selftest", "Run the built-in invariant battery");
    selftest->add_flag("--quiet", selftest_quiet, "suppress per-suite output");

    CLI11_PARSE(app, argc, argv);

    if (selftest->parsed()) {
        char* text = nullptr;
        int failures = 0;
        mc_status status = mc_selftest(&text, &failures);
        if (status != MC_OK) {
            std::cerr << "selftest error: " << mc_last_error() << "\n";
            return exit_code_for(status);
        }
        if (!selftest_quiet && text) std::cout << text;
        mc_free(text);
        return failures == 0 ? kExitSuccess : kExitRefuted;
    }

    auto config = read_file(config_path);
    if (!config) {
        std::cerr << "error: cannot read config file '" << config_path << "'\n";
        return kExitConfigError;
    }

    nlohmann::json overrides = nlohmann::json::object();
    if (seed) overrides["search"]["seed"] = *seed;
    if (grid) {
        overrides["grid"]["samples"] = *grid;
        overrides["grid"]["pair"] = *grid;
        overrides["search"]["resolution"] = *grid;
        overrides["csv"]["resolution"] = *grid;
    }
    if (tol) {
        overrides["tolerances"]["equality"] = *tol;
        overrides["tolerances"]["monotonicity"] = *tol;
        overrides["tolerances"]["pair"] = *tol;
    }
    std::string overrides_text = overrides.empty() ? std::string() : overrides.dump();

    mc_run* run = nullptr;
    mc_status status = mc_run_compare(config->c_str(),
                                      overrides_text.empty() ? nullptr : overrides_text.c_str(),
                                      &run);
    if (status != MC_OK) {
        std::cerr << "error: " << mc_last_error() << "\n";
        return exit_code_for(status);
    }

    int rc = kExitSuccess;
    if (!quiet) std::cout << mc_run_summary(run);

    const char* report_path = mc_run_report_path(run);
    if (report_path && !write_file(report_path, mc_run_report_json(run))) {
        std::cerr << "error: cannot write report to '" << report_path << "'\n";
        rc = kExitConfigError;
    }
    const char* summary_path = mc_run_summary_path(run);
    if (summary_path && !write_file(summary_path, mc_run_summary(run))) {
        std::cerr << "error: cannot write summary to '" << summary_path << "'\n";
        rc = kExitConfigError;
    }

    std::optional<std::string> csv_target = csv_path;
    if (!csv_target && mc_run_csv_path(run)) csv_target = std::string(mc_run_csv_path(run));
    if (csv_target) {
        const char* csv = mc_run_csv(run);
        if (!csv) {
            std::cerr << "warning: the gap landscape is only emitted for n = 2 runs\n";
        } else if (!write_file(*csv_target, csv)) {
            std::cerr << "error: cannot write csv to '" << *csv_target << "'\n";
            rc = kExitConfigError;
        }
    }

    if (rc == kExitSuccess && mc_run_refuted(run)) rc = kExitRefuted;
    mc_run_free(run);
    return rc;
}
