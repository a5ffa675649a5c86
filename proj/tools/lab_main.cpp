//
// lab — scenario-driven certificate runner.
//
//   lab run <scenario-file> [--out PATH] [--seed N]
//   lab trajectory <scenario-file> --j J --csv PATH
//   lab print-default-config <kind>
//
// Exit codes: 0 certified, 1 failed, 2 undecided, 64 configuration error.
// LAB_BUDGET_SCALE (positive real) multiplies all budgets.
//

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "seqlab/runner.hpp"
#include "seqlab/scenario.hpp"

namespace {

constexpr int kConfigError = 64;

int cmd_run(const std::string& path, const std::optional<std::string>& out_path,
            const std::optional<std::uint64_t>& seed_override) {
    seqlab::cli::Scenario scenario;
    try {
        scenario = seqlab::cli::load_scenario_file(path, seqlab::cli::budget_scale_from_env());
        if (seed_override) scenario.seed = *seed_override;
        scenario.validate();
    } catch (const seqlab::cli::ScenarioError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfigError;
    }

    const auto report = seqlab::cli::run_scenario(scenario);
    const std::string text = seqlab::cli::render_report(report);
    if (out_path) {
        std::ofstream out(*out_path, std::ios::binary);
        if (!out || !(out << text)) {
            std::cerr << "i/o error: cannot write report to " << *out_path << "\n";
            return 1;
        }
    } else {
        std::cout << text;
    }
    std::cerr << "verdict: " << report.verdict << " (" << report.checks.size() << " checks, "
              << report.wall_clock_ms << " ms)\n";
    return seqlab::cli::exit_code_for(report);
}

int cmd_trajectory(const std::string& path, seqlab::cli::Index j, const std::string& csv_path) {
    seqlab::cli::Scenario scenario;
    try {
        scenario = seqlab::cli::load_scenario_file(path, seqlab::cli::budget_scale_from_env());
    } catch (const seqlab::cli::ScenarioError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfigError;
    }
    try {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + csv_path + " for writing");
        seqlab::cli::write_trajectory_csv(scenario, j, out);
        if (!out.flush()) throw std::runtime_error("failed flushing " + csv_path);
    } catch (const seqlab::cli::ScenarioError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int cmd_print_default(const std::string& kind) {
    try {
        const auto scenario = seqlab::cli::default_scenario(seqlab::cli::kind_from_name(kind));
        std::cout << scenario.to_json().dump(2) << "\n";
    } catch (const seqlab::cli::ScenarioError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfigError;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "lab: constructs sequence-space objects (spread operators, square-root "
        "fields, mother vectors) and certifies the inequalities behind them"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::optional<std::string> out_path;
    std::optional<std::uint64_t> seed_override;
    auto* run = app.add_subcommand("run", "run the certificate suite for a scenario file");
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--out", out_path, "write the report document to PATH instead of stdout");
    run->add_option("--seed", seed_override, "override the scenario seed");

    std::string traj_path;
    std::string csv_path;
    seqlab::cli::Index block_position = 1;
    auto* traj = app.add_subcommand("trajectory", "emit t,u,bound rows for one scalar problem");
    traj->add_option("scenario", traj_path, "scenario JSON file (kind peano)")->required();
    traj->add_option("--j", block_position, "block position of the sampled coordinate");
    traj->add_option("--csv", csv_path, "output CSV path")->required();

    std::string kind;
    auto* pdc = app.add_subcommand("print-default-config", "print the default scenario for a kind");
    pdc->add_option("kind", kind, "peano | spread_lp | spread_c0 | spread_lp_plus")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kConfigError;
    }

    if (run->parsed()) return cmd_run(scenario_path, out_path, seed_override);
    if (traj->parsed()) return cmd_trajectory(traj_path, block_position, csv_path);
    return cmd_print_default(kind);
}
