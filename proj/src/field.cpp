#include "seqlab/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace seqlab {

double TruncatedPoint::coord(Index n) const {
    if (n < 1) throw std::domain_error("coordinate index must be >= 1");
    if (n > truncation()) return 0.0;
    return coords_[static_cast<std::size_t>(n - 1)];
}

double TruncatedPoint::sup_norm() const {
    double m = 0.0;
    for (double c : coords_) m = std::max(m, std::abs(c));
    return m;
}

SummableCoefficients SummableCoefficients::finite(std::vector<double> values) {
    NeumaierSum abs_sum;
    for (double v : values) abs_sum.add(std::abs(v));
    const double bound = abs_sum.value();
    auto shared = std::make_shared<std::vector<double>>(std::move(values));
    ScalarSequence seq("coefficients", [shared](double j) {
        const auto i = static_cast<std::size_t>(j);
        if (j < 1.0 || j != std::floor(j) || i > shared->size()) return 0.0;
        return (*shared)[i - 1];
    });
    return SummableCoefficients(std::move(seq), bound);
}

SummableCoefficients SummableCoefficients::certified(ScalarSequence seq,
                                                     const ConvergenceVerdict& abs_sum) {
    if (!abs_sum.is_converged())
        throw std::invalid_argument("coefficients rejected: no summability certificate");
    return SummableCoefficients(std::move(seq), abs_sum.value + abs_sum.remainder_bound);
}

double SummableCoefficients::at(Index i) const { return seq_.eval(i); }

double SummableCoefficients::partial_abs_sum(Index m) const {
    NeumaierSum acc;
    for (Index i = 1; i <= m; ++i) acc.add(std::abs(seq_.eval(i)));
    return acc.value();
}

std::optional<std::pair<Index, double>> SummableCoefficients::first_nonzero(Index scan_budget) const {
    for (Index i = 1; i <= scan_budget; ++i) {
        const double v = seq_.eval(i);
        if (v != 0.0) return std::make_pair(i, v);
    }
    return std::nullopt;
}

double dieudonne_coord(Index n, const TruncatedPoint& x) {
    if (n < 1) throw std::domain_error("coordinate index must be >= 1");
    return std::sqrt(std::abs(x.coord(n))) + 1.0 / (static_cast<double>(n) + 1.0);
}

double spread_coord(Index block, const PartitionScheme& scheme, Index n, const TruncatedPoint& x) {
    if (scheme.decode(n).block != block) return 0.0;
    return dieudonne_coord(n, x);
}

double combined_coord(const SummableCoefficients& a, const PartitionScheme& scheme, Index n,
                      const TruncatedPoint& x) {
    return a.at(scheme.decode(n).block) * dieudonne_coord(n, x);
}

BoundCheck l1_bound_check(const SummableCoefficients& a, const PartitionScheme& scheme,
                          const TruncatedPoint& x, Index m, Index trunc_n, double slack) {
    if (m < 1) throw std::domain_error("partial-sum length must be >= 1");
    double lhs = 0.0;
    double f_sup = 0.0;
    for (Index n = 1; n <= trunc_n; ++n) {
        const double fn = dieudonne_coord(n, x);
        f_sup = std::max(f_sup, fn);
        const Index block = scheme.decode(n).block;
        if (block <= m) lhs = std::max(lhs, std::abs(a.at(block) * fn));
    }
    const double rhs = f_sup * a.partial_abs_sum(m);
    return BoundCheck{lhs, rhs, lhs <= rhs + slack};
}

BoundCheck lipschitz_transfer_check(const SummableCoefficients& a, const PartitionScheme& scheme,
                                    const TruncatedPoint& x, const TruncatedPoint& y, Index m,
                                    Index trunc_n, double slack) {
    if (m < 1) throw std::domain_error("partial-sum length must be >= 1");
    double lhs = 0.0;
    double diff_sup = 0.0;
    for (Index n = 1; n <= trunc_n; ++n) {
        const double dn = std::abs(dieudonne_coord(n, x) - dieudonne_coord(n, y));
        diff_sup = std::max(diff_sup, dn);
        const Index block = scheme.decode(n).block;
        if (block <= m) lhs = std::max(lhs, std::abs(a.at(block)) * dn);
    }
    const double rhs = diff_sup * a.partial_abs_sum(m);
    return BoundCheck{lhs, rhs, lhs <= rhs + slack};
}

int spread_field_rank(const PartitionScheme& scheme, std::span<const Index> blocks,
                      const TruncatedPoint& x) {
    const std::size_t k = blocks.size();
    std::vector<std::vector<double>> mat(k, std::vector<double>(k, 0.0));
    for (std::size_t r = 0; r < k; ++r) {
        const Index n = scheme.encode(blocks[r], 1);  // one sampled coordinate per block
        for (std::size_t c = 0; c < k; ++c) mat[r][c] = spread_coord(blocks[c], scheme, n, x);
    }
    // Gaussian elimination with partial pivoting
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < k && row < k; ++col) {
        std::size_t pivot = row;
        for (std::size_t r = row + 1; r < k; ++r)
            if (std::abs(mat[r][col]) > std::abs(mat[pivot][col])) pivot = r;
        if (std::abs(mat[pivot][col]) < 1e-14) continue;
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

std::optional<BlowupWitness> peano_failure_witness(const SummableCoefficients& a,
                                                   const PartitionScheme& scheme,
                                                   std::span<const Index> block_sample,
                                                   double t0, double t_star, double y0,
                                                   double step, double tolerance) {
    if (!(t_star > t0)) throw std::domain_error("t_star must exceed t0");
    const auto nz = a.first_nonzero();
    if (!nz) return std::nullopt;  // zero field: solutions exist, nothing to refute

    const auto [block, coeff] = *nz;
    BlowupWitness w;
    w.block = block;
    w.coefficient = coeff;
    w.t0 = t0;
    w.t_star = t_star;
    w.y0 = y0;
    w.time_reversed = coeff < 0.0;
    w.guaranteed_bound = blowup_lower_bound(coeff, t0, y0, t_star);

    // For a negative coefficient, u(t0 - s) solves the reflected problem with
    // |coeff|; integrating that problem forward evaluates |u| at the mirrored
    // horizon with bit-identical arithmetic.
    const double lambda = std::abs(coeff);

    double c_min = std::numeric_limits<double>::infinity();
    bool all_hold = true;
    for (Index j : block_sample) {
        const Index mj = scheme.encode(block, j);
        ScalarCauchyProblem p{lambda, 1.0 / (static_cast<double>(mj) + 1.0), t0, y0};
        const Trajectory traj = integrate_scalar(p, step, t_star);
        const double val = std::abs(traj.u.back());
        w.sampled_positions.push_back(j);
        w.values_at_horizon.push_back(val);
        c_min = std::min(c_min, val);
        if (!(val >= w.guaranteed_bound - tolerance)) all_hold = false;
    }
    w.uniform_lower_bound = c_min;
    w.bound_holds = all_hold && c_min > 0.0;
    return w;
}

}  // namespace seqlab
