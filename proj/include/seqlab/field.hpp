#pragma once
//
// Coordinate-wise vector fields on c0 built from the square-root field
//   f_n(x) = sqrt|x_n| + 1/(n+1),
// its block spreads, and summable combinations of the spreads, together with
// the sup-norm estimates that make the combinations well defined and the
// ODE blow-up witness refuting local solvability for every nonzero
// combination.
//

#include <optional>
#include <span>
#include <vector>

#include "seqlab/norm.hpp"
#include "seqlab/ode.hpp"
#include "seqlab/partition.hpp"
#include "seqlab/sequence.hpp"

namespace seqlab {

// A point (x_1, ..., x_N, 0, 0, ...) of c0 at truncation scale.
class TruncatedPoint {
public:
    TruncatedPoint() = default;
    explicit TruncatedPoint(std::vector<double> coords) : coords_(std::move(coords)) {}
    static TruncatedPoint zero() { return TruncatedPoint(); }

    double coord(Index n) const;
    Index truncation() const { return static_cast<Index>(coords_.size()); }
    double sup_norm() const;

private:
    std::vector<double> coords_;
};

// Coefficient vectors admitted into combinations: construction requires an
// explicit summability bound, so unbounded inputs are rejected by type.
class SummableCoefficients {
public:
    static SummableCoefficients finite(std::vector<double> values);
    // Accepts a sequence only together with a convergence verdict for its
    // absolute series; anything else is rejected.
    static SummableCoefficients certified(ScalarSequence seq, const ConvergenceVerdict& abs_sum);

    double at(Index i) const;
    double l1_bound() const { return l1_bound_; }
    // sum_{i<=m} |a_i|, compensated.
    double partial_abs_sum(Index m) const;
    std::optional<std::pair<Index, double>> first_nonzero(Index scan_budget = 1'000'000) const;

private:
    SummableCoefficients(ScalarSequence seq, double bound) : seq_(std::move(seq)), l1_bound_(bound) {}
    ScalarSequence seq_;
    double l1_bound_ = 0.0;
};

// sqrt|x_n| + 1/(n+1)
double dieudonne_coord(Index n, const TruncatedPoint& x);

// Coordinate n of the block-i spread of the square-root field: the value at
// a block element is the field's own coordinate function there, and 0 off
// the block.
double spread_coord(Index block, const PartitionScheme& scheme, Index n, const TruncatedPoint& x);

// Coordinate n of sum_i a_i * (block-i spread). Blocks are disjoint, so the
// series collapses to a_{block(n)} * dieudonne_coord(n, x).
double combined_coord(const SummableCoefficients& a, const PartitionScheme& scheme, Index n,
                      const TruncatedPoint& x);

struct BoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

// || sum_{i<=m} a_i spread_i(f)(x) || <= ||f(x)|| * sum_{i<=m} |a_i|,
// sup norms truncated at trunc_n.
BoundCheck l1_bound_check(const SummableCoefficients& a, const PartitionScheme& scheme,
                          const TruncatedPoint& x, Index m, Index trunc_n, double slack = 1e-12);

// Same estimate for the difference field between two points.
BoundCheck lipschitz_transfer_check(const SummableCoefficients& a, const PartitionScheme& scheme,
                                    const TruncatedPoint& x, const TruncatedPoint& y, Index m,
                                    Index trunc_n, double slack = 1e-12);

// Rank of the k x k matrix of spread-field evaluations, one sampled
// coordinate per block; diagonal with nonzero entries by disjointness.
int spread_field_rank(const PartitionScheme& scheme, std::span<const Index> blocks,
                      const TruncatedPoint& x);

struct BlowupWitness {
    Index block = 0;           // block carrying the nonzero coefficient
    double coefficient = 0.0;  // that coefficient (the scalar problems' lambda)
    double t0 = 0.0;
    double t_star = 0.0;
    double y0 = 0.0;
    bool time_reversed = false;  // negative coefficient: witness runs the reflected problem
    std::vector<Index> sampled_positions;
    std::vector<double> values_at_horizon;  // |u at the horizon| per sampled position
    double guaranteed_bound = 0.0;          // (|lambda|(t*-t0)/2 - sqrt|y0|)_+^2
    double uniform_lower_bound = 0.0;       // min over sampled positions
    bool bound_holds = false;               // every value >= guaranteed_bound - tolerance
};

// Integrates the decoupled scalar problem at each sampled block position and
// checks the integral-inequality floor. A zero coefficient vector admits the
// zero field, which has solutions: no witness, nullopt.
std::optional<BlowupWitness> peano_failure_witness(const SummableCoefficients& a,
                                                   const PartitionScheme& scheme,
                                                   std::span<const Index> block_sample,
                                                   double t0, double t_star, double y0,
                                                   double step, double tolerance);

}  // namespace seqlab
