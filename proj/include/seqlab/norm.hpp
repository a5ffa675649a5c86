#pragma once
//
// q-sum partial sums, sup norms, decay indices, and convergence/divergence
// classification with explicit certificates.
//
// Every verdict is desk-scale checkable:
//   * Converged carries the compensated partial sum, an integral-test bound
//     on the discarded tail, and the truncation index.
//   * DivergenceCertificate pins the index at which the partial sum first
//     exceeded the stated threshold (re-checkable by plain summation).
//   * Undecided reports the exhausted budget and the partial sum reached.
//

#include <optional>
#include <string>

#include "seqlab/partition.hpp"
#include "seqlab/sequence.hpp"

namespace seqlab {

struct NormPolicy {
    Index budget = 1'000'000;            // max summation index
    double divergence_threshold = 1e6;   // partial sum level certifying divergence
    double tolerance = 1e-6;             // relative remainder target for convergence

    void validate() const;
};

struct ConvergenceVerdict {
    enum class Kind { Converged, Diverged, Undecided };

    Kind kind = Kind::Undecided;
    // Converged
    double value = 0.0;
    double remainder_bound = 0.0;
    Index at_index = 0;
    // Diverged
    double threshold = 0.0;
    Index crossing_index = 0;
    double partial_at_crossing = 0.0;
    // Undecided
    Index budget = 0;
    double partial = 0.0;

    static ConvergenceVerdict converged(double value, double remainder_bound, Index at_index);
    static ConvergenceVerdict diverged(double threshold, Index crossing_index, double partial);
    static ConvergenceVerdict undecided(Index budget, double partial);

    bool is_converged() const { return kind == Kind::Converged; }
    bool is_diverged() const { return kind == Kind::Diverged; }
    bool is_undecided() const { return kind == Kind::Undecided; }
    std::string kind_name() const;
};

// Compensated (Neumaier) accumulator; merge order fixed by index order.
struct NeumaierSum {
    double sum = 0.0;
    double compensation = 0.0;

    void add(double x);
    double value() const { return sum + compensation; }
};

// sum_{j<=n} |xi_j|^q, summed in index order with compensated summation.
double lq_partial(const ScalarSequence& seq, double q, Index n);

// Same accumulation over the first `count` positions of one partition block:
// sum_{j<=count} |seq(encode(block, j))|^q. Identical summand order makes the
// spread-norm identity bit-exact.
double lq_block_partial(const ScalarSequence& seq, const PartitionScheme& scheme, Index block,
                        double q, Index count);

// max_{j<=n} |xi_j|
double sup_norm_truncated(const ScalarSequence& seq, Index n);

ConvergenceVerdict classify(const ScalarSequence& seq, double q, const NormPolicy& policy);

// Least index J >= tail_monotone_from with |xi_J| < eps, certified for all
// later indices by monotonicity. Integer-exact up to 2^53; beyond that the
// search bisects exactly representable grid points and returns a sound real
// index bound. nullopt when no crossing is found within `max_doublings`.
std::optional<double> c0_decay_check(const ScalarSequence& seq, double eps,
                                     int max_doublings = 1024);

}  // namespace seqlab
