#pragma once
//
// Scenario configuration for the certificate suites: JSON files with nested
// sections, per-kind defaults, and validation. Invalid configurations raise
// ScenarioError; the CLI maps that to its config-error exit code.
//

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace seqlab::cli {

using Index = std::int64_t;

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ScenarioKind { Peano, SpreadLp, SpreadC0, SpreadLpPlus };

std::string kind_name(ScenarioKind kind);
ScenarioKind kind_from_name(const std::string& name);

struct Budgets {
    Index summation = 0;
    Index block_sample = 0;
    Index block_norm_terms = 0;
    Index draws = 0;
    Index truncation = 0;
    double ode_step = 0.0;
    double horizon = 0.0;
};

struct Thresholds {
    double divergence = 0.0;
    double tolerance = 0.0;
    double slack = 1e-12;
    double decay_epsilon = 0.01;
    double blowup_tolerance = 1e-3;
    double oracle_rel_err = 1e-6;
};

struct Scenario {
    ScenarioKind kind = ScenarioKind::Peano;
    std::uint64_t seed = 0;
    std::string partition = "dyadic";
    double p = 2.0;
    std::vector<double> q_list;
    std::string mother;
    double delta = 2.0;
    int model_dim = 8;
    int slots = 3;
    int rungs = 6;                     // ladder depth (spread_lp_plus)
    std::vector<double> coefficients;  // peano combination coefficients
    double t0 = 0.0;
    Budgets budgets;
    Thresholds thresholds;
    double budget_scale = 1.0;  // from LAB_BUDGET_SCALE

    void validate() const;
    nlohmann::ordered_json to_json() const;
};

Scenario default_scenario(ScenarioKind kind);

// Parse + apply defaults + validate. budget_scale multiplies the summation,
// draw, sample, and truncation budgets.
Scenario scenario_from_json(const nlohmann::json& j, double budget_scale);

Scenario load_scenario_file(const std::string& path, double budget_scale);

// Reads LAB_BUDGET_SCALE; 1.0 when unset. Non-positive or unparsable values
// raise ScenarioError.
double budget_scale_from_env();

}  // namespace seqlab::cli
