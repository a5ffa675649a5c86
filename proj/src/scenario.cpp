#include "seqlab/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

namespace seqlab::cli {

std::string kind_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::Peano: return "peano";
        case ScenarioKind::SpreadLp: return "spread_lp";
        case ScenarioKind::SpreadC0: return "spread_c0";
        case ScenarioKind::SpreadLpPlus: return "spread_lp_plus";
    }
    return "peano";
}

ScenarioKind kind_from_name(const std::string& name) {
    if (name == "peano") return ScenarioKind::Peano;
    if (name == "spread_lp") return ScenarioKind::SpreadLp;
    if (name == "spread_c0") return ScenarioKind::SpreadC0;
    if (name == "spread_lp_plus") return ScenarioKind::SpreadLpPlus;
    throw ScenarioError("unknown scenario kind: " + name);
}

Scenario default_scenario(ScenarioKind kind) {
    Scenario s;
    s.kind = kind;
    s.seed = 20260810;
    s.partition = "dyadic";
    s.budgets.draws = 250;
    s.budgets.truncation = 4096;
    s.budgets.block_sample = 16;
    s.budgets.block_norm_terms = 1000;
    s.budgets.ode_step = 1e-4;
    s.budgets.horizon = 4.0;
    switch (kind) {
        case ScenarioKind::Peano:
            s.coefficients = {1.0};
            s.t0 = 0.0;
            s.budgets.summation = 100'000;
            s.thresholds.divergence = 1000.0;
            s.thresholds.tolerance = 0.05;
            break;
        case ScenarioKind::SpreadLp:
            s.p = 2.0;
            s.mother = "ell_p";
            s.q_list = {0.5, 1.0};
            s.budgets.summation = 200'000;
            s.thresholds.divergence = 10.0;
            s.thresholds.tolerance = 0.05;
            break;
        case ScenarioKind::SpreadC0:
            s.p = 0.0;
            s.mother = "c0";
            s.q_list = {1.0, 2.0};
            s.budgets.summation = 200'000;
            s.thresholds.divergence = 50.0;
            s.thresholds.tolerance = 0.05;
            // component norms decay like 1/log: epsilon levels far below the
            // slot norms push the certified index past double range
            s.thresholds.decay_epsilon = 0.25;
            break;
        case ScenarioKind::SpreadLpPlus:
            s.p = 1.0;
            s.mother = "ell_p_plus";
            s.q_list = {};  // rungs p + 1/k
            s.rungs = 6;
            s.budgets.summation = 500'000;
            s.thresholds.divergence = 12.0;
            s.thresholds.tolerance = 1e-3;
            break;
    }
    return s;
}

void Scenario::validate() const {
    if (partition != "dyadic" && partition != "cantor")
        throw ScenarioError("partition must be 'dyadic' or 'cantor'");
    if (budgets.summation < 1 || budgets.draws < 1 || budgets.truncation < 1 ||
        budgets.block_sample < 1 || budgets.block_norm_terms < 1)
        throw ScenarioError("all budgets must be positive");
    if (!(budgets.ode_step > 0.0)) throw ScenarioError("ode_step must be positive");
    if (!(budgets.horizon > 0.0)) throw ScenarioError("horizon must be positive");
    if (!(thresholds.divergence > 0.0)) throw ScenarioError("divergence threshold must be positive");
    if (!(thresholds.tolerance > 0.0)) throw ScenarioError("tolerance must be positive");
    if (!(thresholds.decay_epsilon > 0.0)) throw ScenarioError("decay_epsilon must be positive");
    if (model_dim < 1) throw ScenarioError("model_dim must be >= 1");
    if (slots < 1) throw ScenarioError("slots must be >= 1");
    if (!(delta >= 1.0)) throw ScenarioError("delta must be >= 1");

    switch (kind) {
        case ScenarioKind::Peano: {
            if (coefficients.empty()) throw ScenarioError("peano scenario needs coefficients");
            bool any = false;
            for (double c : coefficients) any = any || c != 0.0;
            if (!any)
                throw ScenarioError(
                    "all coefficients are zero: the zero field has solutions and is excluded");
            break;
        }
        case ScenarioKind::SpreadLp: {
            if (!(p > 0.0)) throw ScenarioError("spread_lp requires p > 0");
            if (mother != "ell_p") throw ScenarioError("spread_lp uses the ell_p mother vector");
            if (q_list.empty()) throw ScenarioError("spread_lp needs a nonempty q_list");
            for (double q : q_list)
                if (!(q > 0.0) || q >= p)
                    throw ScenarioError("spread_lp q_list entries must satisfy 0 < q < p");
            break;
        }
        case ScenarioKind::SpreadC0: {
            if (mother != "c0") throw ScenarioError("spread_c0 uses the c0 mother vector");
            if (q_list.empty()) throw ScenarioError("spread_c0 needs a nonempty q_list");
            for (double q : q_list)
                if (!(q > 0.0)) throw ScenarioError("spread_c0 q_list entries must be positive");
            break;
        }
        case ScenarioKind::SpreadLpPlus: {
            if (!(p >= 1.0)) throw ScenarioError("spread_lp_plus requires p >= 1");
            if (mother != "ell_p_plus")
                throw ScenarioError("spread_lp_plus uses the ell_p_plus mother vector");
            if (rungs < 1) throw ScenarioError("spread_lp_plus needs at least one ladder rung");
            for (double q : q_list)
                if (!(q > p)) throw ScenarioError("spread_lp_plus q_list entries must exceed p");
            break;
        }
    }
}

nlohmann::ordered_json Scenario::to_json() const {
    nlohmann::ordered_json j;
    j["kind"] = kind_name(kind);
    j["seed"] = seed;
    j["partition"] = partition;
    if (kind == ScenarioKind::Peano) {
        j["coefficients"] = coefficients;
        j["t0"] = t0;
    } else {
        j["p"] = p;
        j["mother"] = mother;
        j["q_list"] = q_list;
        j["delta"] = delta;
        j["model_dim"] = model_dim;
        j["slots"] = slots;
        if (kind == ScenarioKind::SpreadLpPlus) j["rungs"] = rungs;
    }
    j["budgets"] = {{"summation", budgets.summation},
                    {"block_sample", budgets.block_sample},
                    {"block_norm_terms", budgets.block_norm_terms},
                    {"draws", budgets.draws},
                    {"truncation", budgets.truncation},
                    {"ode_step", budgets.ode_step},
                    {"horizon", budgets.horizon}};
    j["thresholds"] = {{"divergence", thresholds.divergence},
                       {"tolerance", thresholds.tolerance},
                       {"slack", thresholds.slack},
                       {"decay_epsilon", thresholds.decay_epsilon},
                       {"blowup_tolerance", thresholds.blowup_tolerance},
                       {"oracle_rel_err", thresholds.oracle_rel_err}};
    j["budget_scale"] = budget_scale;
    return j;
}

namespace {

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError(std::string("bad value for '") + key + "': " + e.what());
    }
}

Index scaled(Index budget, double scale) {
    const double v = std::ceil(static_cast<double>(budget) * scale);
    if (v < 1.0) return 1;
    if (v > 9.0e18) throw ScenarioError("scaled budget overflows");
    return static_cast<Index>(v);
}

}  // namespace

Scenario scenario_from_json(const nlohmann::json& j, double budget_scale) {
    if (!j.is_object()) throw ScenarioError("scenario file must hold a JSON object");
    if (!j.contains("kind")) throw ScenarioError("scenario is missing 'kind'");

    Scenario s = default_scenario(kind_from_name(j.at("kind").get<std::string>()));
    s.seed = get_or<std::uint64_t>(j, "seed", s.seed);
    s.partition = get_or<std::string>(j, "partition", s.partition);
    s.p = get_or<double>(j, "p", s.p);
    s.q_list = get_or<std::vector<double>>(j, "q_list", s.q_list);
    s.mother = get_or<std::string>(j, "mother", s.mother);
    s.delta = get_or<double>(j, "delta", s.delta);
    s.model_dim = get_or<int>(j, "model_dim", s.model_dim);
    s.slots = get_or<int>(j, "slots", s.slots);
    s.rungs = get_or<int>(j, "rungs", s.rungs);
    s.coefficients = get_or<std::vector<double>>(j, "coefficients", s.coefficients);
    s.t0 = get_or<double>(j, "t0", s.t0);

    if (j.contains("budgets")) {
        const auto& b = j.at("budgets");
        s.budgets.summation = get_or<Index>(b, "summation", s.budgets.summation);
        s.budgets.block_sample = get_or<Index>(b, "block_sample", s.budgets.block_sample);
        s.budgets.block_norm_terms = get_or<Index>(b, "block_norm_terms", s.budgets.block_norm_terms);
        s.budgets.draws = get_or<Index>(b, "draws", s.budgets.draws);
        s.budgets.truncation = get_or<Index>(b, "truncation", s.budgets.truncation);
        s.budgets.ode_step = get_or<double>(b, "ode_step", s.budgets.ode_step);
        s.budgets.horizon = get_or<double>(b, "horizon", s.budgets.horizon);
    }
    if (j.contains("thresholds")) {
        const auto& t = j.at("thresholds");
        s.thresholds.divergence = get_or<double>(t, "divergence", s.thresholds.divergence);
        s.thresholds.tolerance = get_or<double>(t, "tolerance", s.thresholds.tolerance);
        s.thresholds.slack = get_or<double>(t, "slack", s.thresholds.slack);
        s.thresholds.decay_epsilon = get_or<double>(t, "decay_epsilon", s.thresholds.decay_epsilon);
        s.thresholds.blowup_tolerance =
            get_or<double>(t, "blowup_tolerance", s.thresholds.blowup_tolerance);
        s.thresholds.oracle_rel_err = get_or<double>(t, "oracle_rel_err", s.thresholds.oracle_rel_err);
    }

    s.budget_scale = budget_scale;
    if (budget_scale != 1.0) {
        s.budgets.summation = scaled(s.budgets.summation, budget_scale);
        s.budgets.block_sample = scaled(s.budgets.block_sample, budget_scale);
        s.budgets.block_norm_terms = scaled(s.budgets.block_norm_terms, budget_scale);
        s.budgets.draws = scaled(s.budgets.draws, budget_scale);
        s.budgets.truncation = scaled(s.budgets.truncation, budget_scale);
    }

    s.validate();
    return s;
}

Scenario load_scenario_file(const std::string& path, double budget_scale) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError("scenario file does not parse: " + std::string(e.what()));
    }
    return scenario_from_json(j, budget_scale);
}

double budget_scale_from_env() {
    const char* raw = std::getenv("LAB_BUDGET_SCALE");
    if (raw == nullptr || *raw == '\0') return 1.0;
    char* end = nullptr;
    const double v = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
        throw ScenarioError("LAB_BUDGET_SCALE must be a positive real");
    return v;
}

}  // namespace seqlab::cli
