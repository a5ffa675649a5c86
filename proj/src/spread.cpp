#include "seqlab/spread.hpp"

#include <cmath>
#include <cstring>
#include <memory>
#include <stdexcept>

#include "seqlab/rng.hpp"

namespace seqlab {

namespace {

std::size_t first_nonzero_slot(std::span<const std::vector<double>> w_list) {
    for (std::size_t i = 0; i < w_list.size(); ++i)
        if (l1_norm(w_list[i]) != 0.0) return i;
    throw std::invalid_argument("all model vectors are zero: the zero element is excluded");
}

}  // namespace

double l1_norm(std::span<const double> v) {
    NeumaierSum acc;
    for (double x : v) acc.add(std::abs(x));
    return acc.value();
}

IsomorphFamily::IsomorphFamily(double delta, int model_dim, std::uint64_t seed,
                               ComponentSpaceFamily components)
    : delta_(delta), model_dim_(model_dim), seed_(seed), components_(components) {
    if (!(delta >= 1.0)) throw std::domain_error("delta must be >= 1");
    if (model_dim < 1) throw std::domain_error("model dimension must be >= 1");
    if (components_.base_dim < model_dim) components_.base_dim = model_dim;
    max_exponent_ = static_cast<int>(std::floor(std::log2(delta) + 1e-12));
}

double IsomorphFamily::scale(Index n) const {
    if (max_exponent_ == 0) return 1.0;
    const std::uint64_t h = hash_pair(seed_, static_cast<std::uint64_t>(n));
    const int span = 2 * max_exponent_ + 1;
    const int k = static_cast<int>(h % static_cast<std::uint64_t>(span)) - max_exponent_;
    return std::ldexp(1.0, k);
}

std::vector<double> IsomorphFamily::forward(Index n, std::span<const double> w) const {
    if (static_cast<int>(w.size()) != model_dim_)
        throw std::invalid_argument("model vector has wrong dimension");
    std::vector<double> out(static_cast<std::size_t>(component_dim(n)), 0.0);
    const double c = scale(n);
    for (int d = 0; d < model_dim_; ++d) out[static_cast<std::size_t>(d)] = c * w[static_cast<std::size_t>(d)];
    return out;
}

std::vector<double> IsomorphFamily::backward(Index n, std::span<const double> v) const {
    if (static_cast<int>(v.size()) != component_dim(n))
        throw std::invalid_argument("component vector has wrong dimension");
    std::vector<double> out(static_cast<std::size_t>(model_dim_), 0.0);
    const double c = scale(n);
    for (int d = 0; d < model_dim_; ++d) out[static_cast<std::size_t>(d)] = v[static_cast<std::size_t>(d)] / c;
    return out;
}

double tilde_exponent(double p) {
    if (!(p > 0.0)) throw std::domain_error("exponent p must be > 0");
    return p >= 1.0 ? 1.0 : p;
}

ScalarSequence make_spread(Index block, const ScalarSequence& xi, const PartitionScheme& scheme) {
    auto xi_copy = std::make_shared<ScalarSequence>(xi);
    auto scheme_copy = std::make_shared<PartitionScheme>(scheme);
    return ScalarSequence(
        xi.label() + " spread over block " + std::to_string(block),
        [block, xi_copy, scheme_copy](double jd) {
            if (jd != std::floor(jd) || jd > 9.2e18)
                throw std::domain_error("spread sequences are defined on integer indices");
            const auto bp = scheme_copy->decode(static_cast<Index>(jd));
            if (bp.block != block) return 0.0;
            return xi_copy->eval(bp.pos);
        });
}

std::vector<double> tensor_coord(const ScalarSequence& x, std::span<const double> w,
                                 const IsomorphFamily& fam, Index n) {
    if (n < 1) throw std::domain_error("coordinate index must be >= 1");
    auto out = fam.forward(n, w);
    const double xn = x.eval(n);
    for (double& v : out) v *= xn;
    return out;
}

std::vector<double> spread_operator_coord(const ScalarSequence& xi, const PartitionScheme& scheme,
                                          const IsomorphFamily& fam,
                                          std::span<const std::vector<double>> w_list, Index n) {
    const auto bp = scheme.decode(n);
    if (bp.block > static_cast<Index>(w_list.size()))
        return std::vector<double>(static_cast<std::size_t>(fam.component_dim(n)), 0.0);
    auto out = fam.forward(n, w_list[static_cast<std::size_t>(bp.block - 1)]);
    const double xij = xi.eval(bp.pos);
    for (double& v : out) v *= xij;
    return out;
}

NormBoundCheck spread_operator_norm_bound(const ScalarSequence& xi, const PartitionScheme& scheme,
                                          const IsomorphFamily& fam,
                                          std::span<const std::vector<double>> w_list, double p,
                                          Index trunc, double slack) {
    if (!(p > 0.0)) throw std::domain_error("exponent p must be > 0");
    const double s = tilde_exponent(p);
    const double xi_psum = lq_partial(xi, p, trunc);
    const double xi_norm_trunc = std::pow(xi_psum, 1.0 / p);

    NormBoundCheck out;
    NeumaierSum agg_lhs;
    NeumaierSum w_s_sum;
    bool holds = true;
    for (std::size_t i = 0; i < w_list.size(); ++i) {
        const Index block = static_cast<Index>(i) + 1;
        const double wn = l1_norm(w_list[i]);
        NeumaierSum block_psum;
        for (Index j = 1; j <= trunc; ++j) {
            const Index n = scheme.encode(block, j);
            block_psum.add(std::pow(std::abs(xi.eval(j)) * fam.scale(n) * wn, p));
        }
        const double lhs = std::pow(block_psum.value(), 1.0 / p);
        const double rhs = fam.delta() * wn * xi_norm_trunc;
        out.term_lhs.push_back(lhs);
        out.term_rhs.push_back(rhs);
        if (!(lhs <= rhs + slack * std::max(1.0, rhs))) holds = false;
        agg_lhs.add(std::pow(lhs, s));
        w_s_sum.add(std::pow(wn, s));
    }
    out.aggregate_lhs = agg_lhs.value();
    out.aggregate_rhs = std::pow(fam.delta(), s) * std::pow(xi_norm_trunc, s) * w_s_sum.value();
    if (!(out.aggregate_lhs <= out.aggregate_rhs + slack * std::max(1.0, out.aggregate_rhs)))
        holds = false;
    out.holds = holds;
    return out;
}

RangeCertificate range_divergence_certificate(const ScalarSequence& xi, const PartitionScheme& scheme,
                                              const IsomorphFamily& fam,
                                              std::span<const std::vector<double>> w_list, double q,
                                              const NormPolicy& policy) {
    if (!(q > 0.0)) throw std::domain_error("exponent q must be > 0");
    policy.validate();

    RangeCertificate cert;
    const std::size_t m = first_nonzero_slot(w_list);
    const Index block = static_cast<Index>(m) + 1;
    const double wn = l1_norm(w_list[m]);
    const double floor_factor = std::pow(wn / fam.delta(), q);  // delta^{-q} ||w_m||^q
    cert.block = block;
    cert.witness_norm = wn;
    cert.scaled_threshold = policy.divergence_threshold * floor_factor;

    NeumaierSum partial;      // sum over block positions of ||z_{m_j}||^q
    NeumaierSum comparison;   // delta^{-q} ||w_m||^q * sum |xi_j|^q
    NeumaierSum xi_qsum;      // sum |xi_j|^q, drives the convergence stop
    bool chain_ok = true;
    for (Index j = 1; j <= policy.budget; ++j) {
        const Index n = scheme.encode(block, j);
        const double xij = std::abs(xi.eval(j));
        const double xij_q = std::pow(xij, q);
        const double term = std::pow(xij * fam.scale(n) * wn, q);
        const double floor_term = floor_factor * xij_q;
        if (!(term >= floor_term * (1.0 - 1e-12))) chain_ok = false;
        partial.add(term);
        comparison.add(floor_term);
        xi_qsum.add(xij_q);
        cert.terms_used = j;
        if (partial.value() > cert.scaled_threshold) {
            cert.verdict = ConvergenceVerdict::diverged(cert.scaled_threshold, j, partial.value());
            cert.term_chain_ok = chain_ok;
            cert.comparison_sum = comparison.value();
            return cert;
        }
        if (xi.has_tail_envelope()) {
            const auto rb = xi.tail_envelope(q, static_cast<double>(j));
            // Stop relative to the mother's own q-sum; the reported remainder
            // is the sound block tail bound (delta ||w_m||)^q * envelope.
            if (rb && *rb <= policy.tolerance * xi_qsum.value()) {
                const double tail = std::pow(fam.delta() * wn, q) * *rb;
                cert.verdict = ConvergenceVerdict::converged(partial.value(), tail, j);
                cert.term_chain_ok = chain_ok;
                cert.comparison_sum = comparison.value();
                return cert;
            }
        }
    }
    cert.verdict = ConvergenceVerdict::undecided(policy.budget, partial.value());
    cert.term_chain_ok = chain_ok;
    cert.comparison_sum = comparison.value();
    return cert;
}

LadderReport plus_space_cauchy_check(const ScalarSequence& xi, const PartitionScheme& scheme,
                                     const IsomorphFamily& fam,
                                     std::span<const std::vector<double>> w_list,
                                     const PlusSpaceLadder& ladder, Index trunc,
                                     const NormPolicy& policy) {
    LadderReport report;
    if (w_list.empty()) {
        report.vacuous = true;
        report.tails_vanish = true;
        report.coordinates_rung_independent = true;
        return report;
    }

    const std::size_t W = w_list.size();
    std::vector<double> w_norms(W);
    NeumaierSum w_l1;
    for (std::size_t i = 0; i < W; ++i) {
        w_norms[i] = l1_norm(w_list[i]);
        w_l1.add(w_norms[i]);
    }

    bool tails_ok = true;
    for (int k = 1; k <= ladder.rungs; ++k) {
        const double q = ladder.rung(k);
        RungResult rung;
        rung.q = q;

        // truncated q-norms of the block images y_j (x) w_j
        std::vector<double> term_norm_q(W);  // ||y_j (x) w_j||_q^q truncated
        for (std::size_t i = 0; i < W; ++i) {
            const Index block = static_cast<Index>(i) + 1;
            NeumaierSum qsum;
            for (Index j = 1; j <= trunc; ++j)
                qsum.add(std::pow(std::abs(xi.eval(j)) * fam.scale(scheme.encode(block, j)) * w_norms[i], q));
            term_norm_q[i] = qsum.value();
        }

        NeumaierSum norm_sum;
        for (std::size_t i = 0; i < W; ++i) norm_sum.add(std::pow(term_norm_q[i], 1.0 / q));
        rung.partial_norm_sum = norm_sum.value();

        // sum_{j<=n} ||y_j (x) w_j||_q <= delta * ||xi||_q * sum ||w_j||, with
        // ||xi||_q replaced by a certified upper value (partial + envelope)
        const double xi_qsum = lq_partial(xi, q, trunc);
        const auto env = xi.tail_envelope(q, static_cast<double>(trunc));
        const double xi_upper = std::pow(xi_qsum + env.value_or(0.0), 1.0 / q);
        rung.bound = fam.delta() * xi_upper * w_l1.value();
        rung.bound_holds = env.has_value() && rung.partial_norm_sum <= rung.bound + 1e-12 * std::max(1.0, rung.bound);

        // Cauchy tails: ||s_W - s_n||_q^q = sum_{j>n} ||y_j (x) w_j||_q^q
        rung.tail_norms.resize(W + 1);
        double tail_acc = 0.0;
        rung.tail_norms[W] = 0.0;
        for (std::size_t n = W; n-- > 0;) {
            tail_acc += term_norm_q[n];
            rung.tail_norms[n] = std::pow(tail_acc, 1.0 / q);
        }
        for (std::size_t n = 0; n < W; ++n)
            if (rung.tail_norms[n] + 1e-15 < rung.tail_norms[n + 1]) tails_ok = false;
        if (rung.tail_norms[W] != 0.0) tails_ok = false;

        report.rungs.push_back(std::move(rung));
    }
    report.tails_vanish = tails_ok;

    // The coordinatewise limit must not depend on the rung: recompute sampled
    // coordinates of s_W once per rung and demand bit equality.
    bool rung_independent = true;
    std::vector<std::vector<double>> reference;
    for (int k = 1; k <= ladder.rungs; ++k) {
        std::vector<std::vector<double>> coords;
        for (std::size_t i = 0; i < W; ++i) {
            for (Index j : {Index{1}, Index{2}, Index{5}}) {
                const Index n = scheme.encode(static_cast<Index>(i) + 1, j);
                coords.push_back(spread_operator_coord(xi, scheme, fam, w_list, n));
            }
        }
        if (k == 1)
            reference = std::move(coords);
        else if (coords != reference)
            rung_independent = false;
    }
    report.coordinates_rung_independent = rung_independent;

    report.limit_divergence = range_divergence_certificate(xi, scheme, fam, w_list, ladder.p, policy);
    return report;
}

int range_independence_rank(const ScalarSequence& xi, const PartitionScheme& scheme,
                            const IsomorphFamily& fam,
                            std::span<const std::vector<double>> basis_w) {
    const std::size_t k = basis_w.size();
    if (k < 1) throw std::domain_error("need at least one basis vector");

    // column c: range element with basis_w[c] in slot c+1; row r: l1 norm of
    // its coordinate at the first element of block r+1
    std::vector<std::vector<double>> mat(k, std::vector<double>(k, 0.0));
    for (std::size_t c = 0; c < k; ++c) {
        std::vector<std::vector<double>> slots(k, std::vector<double>(static_cast<std::size_t>(fam.model_dim()), 0.0));
        slots[c] = basis_w[c];
        for (std::size_t r = 0; r < k; ++r) {
            const Index n = scheme.encode(static_cast<Index>(r) + 1, 1);
            mat[r][c] = l1_norm(spread_operator_coord(xi, scheme, fam, slots, n));
        }
    }
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < k && row < k; ++col) {
        std::size_t pivot = row;
        for (std::size_t r = row + 1; r < k; ++r)
            if (std::abs(mat[r][col]) > std::abs(mat[pivot][col])) pivot = r;
        if (std::abs(mat[pivot][col]) < 1e-300) continue;
        std::swap(mat[pivot], mat[row]);
        for (std::size_t r = row + 1; r < k; ++r) {
            const double f = mat[r][col] / mat[row][col];
            for (std::size_t c2 = col; c2 < k; ++c2) mat[r][c2] -= f * mat[row][c2];
        }
        ++row;
        ++rank;
    }
    return rank;
}

}  // namespace seqlab
