#include "seqlab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "seqlab/field.hpp"
#include "seqlab/norm.hpp"
#include "seqlab/ode.hpp"
#include "seqlab/partition.hpp"
#include "seqlab/rng.hpp"
#include "seqlab/sequence.hpp"
#include "seqlab/spread.hpp"

namespace seqlab::cli {

namespace {

using nlohmann::ordered_json;

std::string fmt(double v) { return nlohmann::json(v).dump(); }

void add_check(Report& report, std::string name, std::string claim, bool certified,
               ordered_json data) {
    report.checks.push_back(
        {std::move(name), std::move(claim), certified ? "certified" : "failed", std::move(data)});
}

void add_check_status(Report& report, std::string name, std::string claim, std::string status,
                      ordered_json data) {
    report.checks.push_back({std::move(name), std::move(claim), std::move(status), std::move(data)});
}

ScalarSequence mother_for(const Scenario& s) {
    if (s.mother == "ell_p") return mother_ell_p(s.p);
    if (s.mother == "c0") return mother_c0();
    if (s.mother == "ell_p_plus") return mother_ell_p_plus(s.p);
    throw ScenarioError("unknown mother vector tag: " + s.mother);
}

// Slot vectors with small integer components, each slot nonzero, so that
// tensor identities are exact and every slot witnesses independence.
std::vector<std::vector<double>> generate_slots(const Scenario& s) {
    SplitMix rng(hash_pair(s.seed, 0x51075u));
    std::vector<std::vector<double>> w_list;
    for (int i = 0; i < s.slots; ++i) {
        std::vector<double> w(static_cast<std::size_t>(s.model_dim));
        bool nonzero = false;
        for (auto& c : w) {
            c = static_cast<double>(rng.range(-8, 8));
            nonzero = nonzero || c != 0.0;
        }
        if (!nonzero) w[0] = 1.0;
        w_list.push_back(std::move(w));
    }
    return w_list;
}

TruncatedPoint random_point(SplitMix& rng, Index max_len, double amplitude) {
    const Index len = rng.range(1, max_len);
    std::vector<double> coords(static_cast<std::size_t>(len));
    for (auto& c : coords) c = amplitude * rng.dyadic(-256, 256, 8);
    return TruncatedPoint(std::move(coords));
}

SummableCoefficients random_coefficients(SplitMix& rng, Index max_support) {
    const Index k = rng.range(1, max_support);
    std::vector<double> values(static_cast<std::size_t>(k));
    for (auto& v : values) v = rng.dyadic(-512, 512, 8);  // [-2, 2]
    return SummableCoefficients::finite(std::move(values));
}

// Deterministic sequence of exact dyadic values in [-8, 8]; products with
// small integers and power-of-two scales stay exact in double precision.
ScalarSequence dyadic_sequence(std::uint64_t seed) {
    return ScalarSequence("dyadic_hash", [seed](double j) {
        const std::uint64_t h = hash_pair(seed, static_cast<std::uint64_t>(j));
        const auto m = static_cast<std::int64_t>(h % 4097) - 2048;
        return static_cast<double>(m) / 256.0;
    });
}

void check_partition_soundness(Report& report, const PartitionScheme& scheme, Index limit) {
    bool ok = true;
    Index bad_n = 0;
    for (Index n = 1; n <= limit; ++n) {
        const auto bp = scheme.decode(n);
        if (scheme.encode(bp.block, bp.pos) != n) {
            ok = false;
            bad_n = n;
            break;
        }
    }
    // strict monotonicity of each block enumeration on a sampled grid
    for (Index i = 1; ok && i <= 32; ++i)
        for (Index j = 1; j <= 64; ++j)
            if (scheme.encode(i, j + 1) <= scheme.encode(i, j)) {
                ok = false;
                bad_n = -i;
            }
    add_check(report, "partition_soundness",
              "decode/encode round-trip on 1..N and strictly increasing block enumerations", ok,
              {{"scheme", scheme.name()}, {"checked_up_to", limit}, {"first_failure", bad_n}});
}

void check_spread_norm_identity(Report& report, const Scenario& s, const ScalarSequence& xi,
                                const PartitionScheme& scheme) {
    std::vector<double> r_values = s.q_list;
    if (s.kind == ScenarioKind::SpreadLp) r_values.push_back(s.p);
    if (s.kind == ScenarioKind::SpreadLpPlus) {
        PlusSpaceLadder ladder{s.p, s.rungs};
        for (int k = 1; k <= s.rungs; ++k) r_values.push_back(ladder.rung(k));
    }
    const Index blocks = std::min<Index>(s.budgets.block_sample, 8);
    const Index terms = s.budgets.block_norm_terms;
    bool ok = true;
    for (Index i = 1; i <= blocks && ok; ++i) {
        const auto y_i = make_spread(i, xi, scheme);
        for (double r : r_values) {
            const double lhs = lq_block_partial(y_i, scheme, i, r, terms);
            const double rhs = lq_partial(xi, r, terms);
            if (lhs != rhs) {  // same summands in the same order: bit equality
                ok = false;
                break;
            }
        }
    }
    add_check(report, "spread_norm_identity",
              "block-restricted q-sums of each spread equal the mother q-sums exactly", ok,
              {{"blocks", blocks}, {"terms", terms}, {"r_values", r_values}});
}

void check_tensor_bilinearity(Report& report, const Scenario& s, const IsomorphFamily& fam) {
    SplitMix rng(hash_pair(s.seed, 0xb111u));
    const ScalarSequence x = dyadic_sequence(hash_pair(s.seed, 0xdead));
    bool additive_ok = true;
    bool scalar_ok = true;
    for (Index d = 0; d < s.budgets.draws; ++d) {
        const Index n = rng.range(1, 1'000'000);
        std::vector<double> w1(static_cast<std::size_t>(fam.model_dim()));
        std::vector<double> w2(static_cast<std::size_t>(fam.model_dim()));
        for (auto& c : w1) c = static_cast<double>(rng.range(-8, 8));
        for (auto& c : w2) c = static_cast<double>(rng.range(-8, 8));
        std::vector<double> w_sum(w1.size());
        for (std::size_t i = 0; i < w1.size(); ++i) w_sum[i] = w1[i] + w2[i];

        const auto lhs = tensor_coord(x, w_sum, fam, n);
        auto rhs = tensor_coord(x, w1, fam, n);
        const auto t2 = tensor_coord(x, w2, fam, n);
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += t2[i];
        if (lhs != rhs) additive_ok = false;

        const double lam = rng.dyadic(-32, 32, 4);
        auto scaled_result = tensor_coord(x, w1, fam, n);
        for (auto& v : scaled_result) v *= lam;
        const ScalarSequence lam_x = lin_comb({{lam, x}});
        const auto left_scaled = tensor_coord(lam_x, w1, fam, n);
        std::vector<double> lam_w(w1.size());
        for (std::size_t i = 0; i < w1.size(); ++i) lam_w[i] = lam * w1[i];
        const auto right_scaled = tensor_coord(x, lam_w, fam, n);
        if (scaled_result != left_scaled || scaled_result != right_scaled) scalar_ok = false;
    }
    add_check(report, "tensor_bilinearity",
              "x (x) (w1+w2) = x (x) w1 + x (x) w2 and lam(x (x) w) = (lam x) (x) w = x (x) (lam w), "
              "exactly on dyadic draws",
              additive_ok && scalar_ok,
              {{"draws", s.budgets.draws}, {"additive_exact", additive_ok}, {"scalar_exact", scalar_ok}});
}

void check_tensor_coordinate_formula(Report& report, const Scenario& s, const ScalarSequence& xi,
                                     const PartitionScheme& scheme, const IsomorphFamily& fam,
                                     std::span<const std::vector<double>> w_list) {
    SplitMix rng(hash_pair(s.seed, 0x7c03du));
    std::vector<ScalarSequence> spreads;
    for (std::size_t i = 0; i < w_list.size(); ++i)
        spreads.push_back(make_spread(static_cast<Index>(i) + 1, xi, scheme));
    bool ok = true;
    for (Index d = 0; d < s.budgets.draws && ok; ++d) {
        const Index n = rng.range(1, 100'000);
        const auto via_operator = spread_operator_coord(xi, scheme, fam, w_list, n);
        std::vector<double> direct(via_operator.size(), 0.0);
        for (std::size_t i = 0; i < w_list.size(); ++i) {
            const auto term = tensor_coord(spreads[i], w_list[i], fam, n);
            for (std::size_t c = 0; c < direct.size(); ++c) direct[c] += term[c];
        }
        if (direct != via_operator) ok = false;
    }
    add_check(report, "tensor_coordinate_formula",
              "operator coordinates equal the direct sum of block tensor terms exactly", ok,
              {{"draws", s.budgets.draws}, {"slots", static_cast<Index>(w_list.size())}});
}

void check_delta_sandwich(Report& report, const Scenario& s, const IsomorphFamily& fam) {
    SplitMix rng(hash_pair(s.seed, 0xde17au));
    bool ok = true;
    double worst = 0.0;
    for (Index d = 0; d < s.budgets.draws; ++d) {
        const Index n = rng.range(1, 1'000'000);
        std::vector<double> w(static_cast<std::size_t>(fam.model_dim()));
        for (auto& c : w) c = rng.uniform(-4.0, 4.0);
        const double wn = l1_norm(w);
        const double rn = l1_norm(fam.forward(n, w));
        const double lo = wn / fam.delta() - 1e-12 * std::max(1.0, wn);
        const double hi = fam.delta() * wn + 1e-12 * std::max(1.0, wn);
        if (!(lo <= rn && rn <= hi)) ok = false;
        if (wn > 0.0) worst = std::max(worst, rn / wn);
        // exact round-trip through the backward map
        const auto back = fam.backward(n, fam.forward(n, w));
        if (back != w) ok = false;
    }
    add_check(report, "delta_sandwich",
              "||w||/delta <= ||R_n(w)|| <= delta ||w|| and R_n^{-1} R_n = id exactly", ok,
              {{"draws", s.budgets.draws}, {"delta", fam.delta()}, {"max_ratio_seen", worst}});
}

ordered_json verdict_json(const ConvergenceVerdict& v) {
    ordered_json j;
    j["kind"] = v.kind_name();
    switch (v.kind) {
        case ConvergenceVerdict::Kind::Converged:
            j["value"] = v.value;
            j["remainder_bound"] = v.remainder_bound;
            j["at_index"] = v.at_index;
            break;
        case ConvergenceVerdict::Kind::Diverged:
            j["threshold"] = v.threshold;
            j["crossing_index"] = v.crossing_index;
            j["partial_at_crossing"] = v.partial_at_crossing;
            break;
        case ConvergenceVerdict::Kind::Undecided:
            j["budget"] = v.budget;
            j["partial"] = v.partial;
            break;
    }
    return j;
}

void check_range_divergence(Report& report, const Scenario& s, const ScalarSequence& xi,
                            const PartitionScheme& scheme, const IsomorphFamily& fam,
                            std::span<const std::vector<double>> w_list) {
    for (double q : s.q_list) {
        NormPolicy policy{s.budgets.summation, s.thresholds.divergence, s.thresholds.tolerance};
        const auto cert = range_divergence_certificate(xi, scheme, fam, w_list, q, policy);
        const bool fired = cert.verdict.is_diverged() && cert.term_chain_ok;
        const std::string status = cert.verdict.is_undecided() ? "undecided"
                                   : fired                     ? "certified"
                                                               : "failed";
        ordered_json data = {{"q", q},
                             {"block", cert.block},
                             {"witness_norm", cert.witness_norm},
                             {"scaled_threshold", cert.scaled_threshold},
                             {"term_chain_ok", cert.term_chain_ok},
                             {"comparison_sum", cert.comparison_sum},
                             {"verdict", verdict_json(cert.verdict)}};
        add_check_status(report, "divergence_q_" + fmt(q),
                         "block q-sum of the range element crosses the scaled threshold, "
                         "term-by-term above the delta floor",
                         status, std::move(data));
    }
}

void run_peano(Report& report, const Scenario& s) {
    const PartitionScheme scheme = partition_by_name(s.partition);
    check_partition_soundness(report, scheme, std::min<Index>(s.budgets.summation, 100'000));

    const auto a = SummableCoefficients::finite(s.coefficients);
    const double t_star = s.t0 + s.budgets.horizon;

    // witness on the configured coefficients
    std::vector<Index> sample;
    for (Index j = 1; j <= s.budgets.block_sample; ++j) sample.push_back(j);
    const auto witness = peano_failure_witness(a, scheme, sample, s.t0, t_star, 0.0,
                                               s.budgets.ode_step, s.thresholds.blowup_tolerance);
    if (!witness) throw ScenarioError("zero coefficient vector slipped past validation");
    add_check(report, "blowup_witness",
              "every sampled coordinate of a hypothetical solution exceeds "
              "(|lambda|(t*-t0)/2)^2 at the horizon, uniformly in the block",
              witness->bound_holds,
              {{"block", witness->block},
               {"coefficient", witness->coefficient},
               {"t_star", witness->t_star},
               {"guaranteed_bound", witness->guaranteed_bound},
               {"uniform_lower_bound", witness->uniform_lower_bound},
               {"sampled_positions", static_cast<Index>(witness->sampled_positions.size())},
               {"time_reversed", witness->time_reversed}});

    // the sign-reflected field admits the same witness, bit for bit
    std::vector<double> negated = s.coefficients;
    for (auto& c : negated) c = -c;
    const auto mirrored = peano_failure_witness(SummableCoefficients::finite(negated), scheme, sample,
                                                s.t0, t_star, 0.0, s.budgets.ode_step,
                                                s.thresholds.blowup_tolerance);
    const bool mirror_ok = mirrored && mirrored->bound_holds &&
                           mirrored->uniform_lower_bound == witness->uniform_lower_bound &&
                           mirrored->values_at_horizon == witness->values_at_horizon;
    add_check(report, "blowup_witness_time_reversal",
              "negating the coefficient yields the time-reversed run with the identical bound",
              mirror_ok,
              {{"uniform_lower_bound", mirrored ? mirrored->uniform_lower_bound : 0.0},
               {"bitwise_equal", mirror_ok}});

    // integral-inequality floor along a whole trajectory
    {
        const auto nz = a.first_nonzero();
        const Index mj = scheme.encode(nz->first, 1);
        const double lambda = std::abs(nz->second);
        ScalarCauchyProblem p{lambda, 1.0 / (static_cast<double>(mj) + 1.0), s.t0, 0.0};
        const Trajectory traj = integrate_scalar(p, s.budgets.ode_step, t_star);
        bool ok = true;
        for (std::size_t k = 0; k < traj.u.size(); ++k) {
            const double floor_u = blowup_lower_bound(lambda, s.t0, p.y0, traj.t_at(k));
            if (!(traj.u[k] >= floor_u - s.thresholds.blowup_tolerance)) {
                ok = false;
                break;
            }
        }
        add_check(report, "blowup_trajectory_floor",
                  "along the whole trajectory, u(t) >= (lambda (t-t0)/2 - sqrt|y0|)_+^2", ok,
                  {{"samples", static_cast<Index>(traj.u.size())},
                   {"lambda", lambda},
                   {"gamma", p.gamma}});
    }

    // coordinate identity for combinations of spreads
    {
        SplitMix rng(hash_pair(s.seed, 0xc001du));
        bool ok = true;
        for (Index d = 0; d < s.budgets.draws && ok; ++d) {
            const auto coeffs = random_coefficients(rng, 8);
            const auto x = random_point(rng, 64, 4.0);
            const Index n = rng.range(1, 100'000);
            const double lhs = combined_coord(coeffs, scheme, n, x);
            const double rhs = coeffs.at(scheme.decode(n).block) * dieudonne_coord(n, x);
            if (lhs != rhs) ok = false;
        }
        add_check(report, "coordinate_identity",
                  "each coordinate of the combination is the block coefficient times the "
                  "field coordinate, exactly",
                  ok, {{"draws", s.budgets.draws}});
    }

    // sup-norm estimates transferring summability to the combination
    {
        SplitMix rng(hash_pair(s.seed, 0x11b0u));
        bool l1_ok = true;
        bool lip_ok = true;
        double worst_slack = 0.0;
        for (Index d = 0; d < s.budgets.draws; ++d) {
            const auto coeffs = random_coefficients(rng, 8);
            const auto x = random_point(rng, 64, 4.0);
            const auto y = random_point(rng, 64, 4.0);
            const Index m = rng.range(1, 8);
            const auto b1 = l1_bound_check(coeffs, scheme, x, m, s.budgets.truncation,
                                           s.thresholds.slack);
            const auto b2 = lipschitz_transfer_check(coeffs, scheme, x, y, m, s.budgets.truncation,
                                                     s.thresholds.slack);
            l1_ok = l1_ok && b1.holds;
            lip_ok = lip_ok && b2.holds;
            worst_slack = std::max({worst_slack, b1.lhs - b1.rhs, b2.lhs - b2.rhs});
        }
        add_check(report, "l1_bound",
                  "||sum_{i<=m} a_i spread_i(f)(x)|| <= ||f(x)|| sum_{i<=m} |a_i|", l1_ok,
                  {{"draws", s.budgets.draws}, {"worst_lhs_minus_rhs", worst_slack}});
        add_check(report, "lipschitz_transfer_bound",
                  "||sum a_i spread_i(f)(x) - sum a_i spread_i(f)(y)|| <= ||f(x)-f(y)|| sum |a_i|",
                  lip_ok, {{"draws", s.budgets.draws}});
    }

    // RK4 against the closed-form time oracle
    {
        bool ok = true;
        double worst = 0.0;
        for (double lambda : {0.5, 1.0, 2.0})
            for (double gamma : {0.01, 0.1, 1.0})
                for (double y0 : {0.5, 2.0, 10.0}) {
                    ScalarCauchyProblem p{lambda, gamma, 0.0, y0};
                    const double target = y0 + 2.0;
                    const auto t_num = time_to_reach(p, target, s.budgets.ode_step, 1e4);
                    const double t_ref = analytic_time(p, target);
                    if (!t_num) {
                        ok = false;
                        continue;
                    }
                    const double rel = std::abs(*t_num - t_ref) / std::abs(t_ref);
                    worst = std::max(worst, rel);
                    if (!(rel <= s.thresholds.oracle_rel_err)) ok = false;
                }
        add_check(report, "ode_oracle_agreement",
                  "RK4 time to reach the target matches the closed-form inverse", ok,
                  {{"grid_points", 27},
                   {"step", s.budgets.ode_step},
                   {"max_rel_err", worst},
                   {"rel_tol", s.thresholds.oracle_rel_err}});
    }

    // independent spread fields: diagonal evaluation matrix has full rank
    {
        SplitMix rng(hash_pair(s.seed, 0xfa11u));
        const std::vector<Index> blocks{1, 2, 3, 4};
        const auto x = random_point(rng, 32, 2.0);
        const int rank = spread_field_rank(scheme, blocks, x);
        add_check(report, "field_independence",
                  "distinct block spreads evaluate to a full-rank diagonal matrix",
                  rank == static_cast<int>(blocks.size()),
                  {{"blocks", static_cast<Index>(blocks.size())}, {"rank", rank}});
    }
}

void run_spread(Report& report, const Scenario& s) {
    const PartitionScheme scheme = partition_by_name(s.partition);
    const ScalarSequence xi = mother_for(s);
    const IsomorphFamily fam(s.delta, s.model_dim, hash_pair(s.seed, 0x15f0u),
                             ComponentSpaceFamily{s.model_dim, 0});
    const auto w_list = generate_slots(s);

    check_partition_soundness(report, scheme, std::min<Index>(s.budgets.summation, 100'000));
    check_spread_norm_identity(report, s, xi, scheme);
    check_tensor_bilinearity(report, s, fam);
    check_tensor_coordinate_formula(report, s, xi, scheme, fam, w_list);
    check_delta_sandwich(report, s, fam);

    {
        const int rank = range_independence_rank(xi, scheme, fam, w_list);
        add_check(report, "independence_rank",
                  "distinct slots produce independent range elements (diagonal, nonzero)",
                  rank == s.slots, {{"slots", s.slots}, {"rank", rank}});
    }

    switch (s.kind) {
        case ScenarioKind::SpreadLp: {
            const auto bound = spread_operator_norm_bound(xi, scheme, fam, w_list, s.p,
                                                          s.budgets.block_norm_terms,
                                                          s.thresholds.slack);
            add_check(report, "operator_norm_bound",
                      "per-term ||y_j (x) w_j||_p <= delta ||w_j|| ||xi||_p and the s-tilde "
                      "aggregation",
                      bound.holds,
                      {{"aggregate_lhs", bound.aggregate_lhs},
                       {"aggregate_rhs", bound.aggregate_rhs},
                       {"terms", static_cast<Index>(bound.term_lhs.size())}});

            check_range_divergence(report, s, xi, scheme, fam, w_list);

            NormPolicy policy{s.budgets.summation, std::max(1e6, s.thresholds.divergence),
                              std::max(s.thresholds.tolerance, 0.05)};
            const auto cert = range_divergence_certificate(xi, scheme, fam, w_list, s.p, policy);
            add_check_status(report, "converged_at_p",
                             "at q = p the same range element has a summable block q-sum",
                             cert.verdict.is_converged() ? "certified"
                             : cert.verdict.is_undecided() ? "undecided"
                                                           : "failed",
                             {{"q", s.p}, {"verdict", verdict_json(cert.verdict)}});
            break;
        }
        case ScenarioKind::SpreadC0: {
            // componentwise decay of the range element, block by block
            bool all_found = true;
            ordered_json blocks = ordered_json::array();
            double coordinate_bound = 0.0;
            for (std::size_t i = 0; i < w_list.size(); ++i) {
                const double wn = l1_norm(w_list[i]);
                const double eps_i = s.thresholds.decay_epsilon / (s.delta * wn);
                const auto J = c0_decay_check(xi, eps_i);
                if (!J) {
                    all_found = false;
                    continue;
                }
                const double bound = scheme.coordinate_upper_bound(static_cast<Index>(i) + 1, *J);
                coordinate_bound = std::max(coordinate_bound, bound);
                blocks.push_back({{"block", i + 1}, {"position_bound", *J}, {"coordinate_bound", bound}});
            }
            add_check_status(report, "component_decay",
                             "beyond a certified coordinate index every component norm of the "
                             "range element falls below epsilon; blocks past the populated slots "
                             "vanish identically",
                             all_found ? "certified" : "undecided",
                             {{"epsilon", s.thresholds.decay_epsilon},
                              {"coordinate_bound", coordinate_bound},
                              {"blocks", blocks}});

            check_range_divergence(report, s, xi, scheme, fam, w_list);
            break;
        }
        case ScenarioKind::SpreadLpPlus: {
            PlusSpaceLadder ladder{s.p, s.rungs};
            NormPolicy policy{s.budgets.summation, s.thresholds.divergence,
                              s.thresholds.tolerance};
            const auto ladder_report = plus_space_cauchy_check(xi, scheme, fam, w_list, ladder,
                                                               s.budgets.block_norm_terms, policy);
            for (const auto& rung : ladder_report.rungs) {
                add_check(report, "ladder_rung_bound_q_" + fmt(rung.q),
                          "sum_j ||y_j (x) w_j||_q <= delta ||xi||_q ||(w_j)||_1 at this rung",
                          rung.bound_holds,
                          {{"q", rung.q},
                           {"partial_norm_sum", rung.partial_norm_sum},
                           {"bound", rung.bound},
                           {"tail_norms", rung.tail_norms}});
            }
            add_check(report, "ladder_tails_vanish",
                      "partial-sum tails decrease to zero in every rung norm",
                      ladder_report.tails_vanish, {{"rungs", s.rungs}});
            add_check(report, "ladder_rung_independence",
                      "the coordinatewise limit is the same through every rung, exactly",
                      ladder_report.coordinates_rung_independent, {{"rungs", s.rungs}});
            const auto& lim = ladder_report.limit_divergence;
            add_check_status(report, "limit_divergence_at_p",
                             "the limit element's block q-sum at q = p crosses the scaled threshold",
                             lim.verdict.is_diverged() && lim.term_chain_ok ? "certified"
                             : lim.verdict.is_undecided()                   ? "undecided"
                                                                            : "failed",
                             {{"q", s.p},
                              {"term_chain_ok", lim.term_chain_ok},
                              {"verdict", verdict_json(lim.verdict)}});
            break;
        }
        case ScenarioKind::Peano:
            break;
    }

    // mother-vector membership certificates at the scenario's q values
    {
        ordered_json data = ordered_json::array();
        bool ok = true;
        bool any_undecided = false;
        for (double q : s.q_list) {
            NormPolicy policy{s.budgets.summation, s.thresholds.divergence, s.thresholds.tolerance};
            const auto verdict = classify(xi, q, policy);
            const bool expected_diverged = q < s.p || s.kind == ScenarioKind::SpreadC0 ||
                                           (s.kind == ScenarioKind::SpreadLpPlus && q <= s.p);
            if (verdict.is_undecided())
                any_undecided = true;
            else if (expected_diverged != verdict.is_diverged())
                ok = false;
            data.push_back({{"q", q}, {"verdict", verdict_json(verdict)}});
        }
        add_check_status(report, "mother_membership",
                         "the mother vector diverges at exactly the q exponents the scenario excludes",
                         !ok ? "failed" : any_undecided ? "undecided" : "certified",
                         {{"results", data}});
    }
}

}  // namespace

int Report::counts(const std::string& status) const {
    int n = 0;
    for (const auto& c : checks)
        if (c.status == status) ++n;
    return n;
}

Report run_scenario(const Scenario& s) {
    const auto start = std::chrono::steady_clock::now();
    s.validate();

    Report report;
    report.scenario_echo = s.to_json();
    switch (s.kind) {
        case ScenarioKind::Peano: run_peano(report, s); break;
        default: run_spread(report, s); break;
    }

    std::sort(report.checks.begin(), report.checks.end(),
              [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });

    if (report.counts("failed") > 0)
        report.verdict = "failed";
    else if (report.counts("undecided") > 0)
        report.verdict = "undecided";
    else
        report.verdict = "certified";

    report.wall_clock_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    return report;
}

std::string render_report(const Report& report) {
    ordered_json doc;
    doc["schema"] = "lab-report/1";
    doc["scenario"] = report.scenario_echo;
    auto checks = ordered_json::array();
    for (const auto& c : report.checks) {
        ordered_json jc;
        jc["name"] = c.name;
        jc["claim"] = c.claim;
        jc["status"] = c.status;
        jc["data"] = c.data;
        checks.push_back(std::move(jc));
    }
    doc["checks"] = std::move(checks);
    doc["summary"] = {{"certified", report.counts("certified")},
                      {"failed", report.counts("failed")},
                      {"undecided", report.counts("undecided")},
                      {"total", static_cast<int>(report.checks.size())}};
    doc["verdict"] = report.verdict;
    return doc.dump(2) + "\n";
}

int exit_code_for(const Report& report) {
    if (report.verdict == "certified") return 0;
    if (report.verdict == "failed") return 1;
    return 2;
}

void write_trajectory_csv(const Scenario& s, Index block_position, std::ostream& out) {
    if (s.kind != ScenarioKind::Peano)
        throw ScenarioError("trajectory emission requires a peano scenario");
    if (block_position < 1) throw ScenarioError("block position must be >= 1");

    const PartitionScheme scheme = partition_by_name(s.partition);
    const auto a = SummableCoefficients::finite(s.coefficients);
    const auto nz = a.first_nonzero();
    if (!nz) throw ScenarioError("zero coefficient vector has no trajectory");

    const Index mj = scheme.encode(nz->first, block_position);
    const double lambda = nz->second;
    const double y0 = 0.0;
    // negative coefficient: emit the time-reversed run, which solves the
    // problem with |lambda| forward in time
    ScalarCauchyProblem p{std::abs(lambda), 1.0 / (static_cast<double>(mj) + 1.0), s.t0, y0};
    const Trajectory traj = integrate_scalar(p, s.budgets.ode_step, s.t0 + s.budgets.horizon);

    out << "t,u,bound\n";
    char line[128];
    for (std::size_t k = 0; k < traj.u.size(); ++k) {
        const double t = traj.t_at(k);
        const double bound = blowup_lower_bound(lambda, s.t0, y0, t);
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", t, traj.u[k], bound);
        out << line;
    }
    if (!out) throw std::runtime_error("failed writing trajectory data");
}

}  // namespace seqlab::cli
