#pragma once
//
// Desk-scale model of weighted sums of Banach spaces and the spread operator
// acting into them.
//
// The model space X is R^model_dim with the l1 norm. Component spaces are
// R^{d_n} (d_n >= model_dim) with the same norm; the embeddings R_n scale by
// an exact power of two c_n in [1/delta, delta] and pad with zeros, so
//   ||R_n(w)|| = c_n ||w||,   ||R_n|| <= delta,   ||R_n^{-1}|| <= delta,
// and R_n^{-1}(R_n(w)) = w holds exactly in floating point.
//

#include <span>
#include <vector>

#include "seqlab/norm.hpp"
#include "seqlab/partition.hpp"
#include "seqlab/sequence.hpp"

namespace seqlab {

struct ComponentSpaceFamily {
    int base_dim = 8;
    int dim_spread = 0;  // d_n = base_dim + (n mod (dim_spread+1)); 0 = homogeneous

    int dim(Index n) const {
        return base_dim + (dim_spread > 0 ? static_cast<int>(n % (dim_spread + 1)) : 0);
    }
};

double l1_norm(std::span<const double> v);

class IsomorphFamily {
public:
    IsomorphFamily(double delta, int model_dim, std::uint64_t seed,
                   ComponentSpaceFamily components = {});

    double delta() const { return delta_; }
    int model_dim() const { return model_dim_; }
    int component_dim(Index n) const { return components_.dim(n); }

    // Exact power-of-two scale c_n in [1/delta, delta], deterministic in (seed, n).
    double scale(Index n) const;

    std::vector<double> forward(Index n, std::span<const double> w) const;   // R_n
    std::vector<double> backward(Index n, std::span<const double> v) const;  // R_n^{-1} on the range

private:
    double delta_ = 1.0;
    int model_dim_ = 8;
    int max_exponent_ = 0;  // floor(log2 delta)
    std::uint64_t seed_ = 0;
    ComponentSpaceFamily components_;
};

// s-tilde exponent: 1 for p >= 1, p for 0 < p < 1.
double tilde_exponent(double p);

// Block-i spread of xi: coordinate n carries xi_j when n is the j-th element
// of block i, and 0 otherwise.
ScalarSequence make_spread(Index block, const ScalarSequence& xi, const PartitionScheme& scheme);

// Coordinate n of x (tensor) w: x_n * R_n(w).
std::vector<double> tensor_coord(const ScalarSequence& x, std::span<const double> w,
                                 const IsomorphFamily& fam, Index n);

// Coordinate n of the spread operator applied to finitely many model vectors:
// with n the j-th element of block i, xi_j * R_n(w_i) (zero when i exceeds
// the populated slots).
std::vector<double> spread_operator_coord(const ScalarSequence& xi, const PartitionScheme& scheme,
                                          const IsomorphFamily& fam,
                                          std::span<const std::vector<double>> w_list, Index n);

struct NormBoundCheck {
    std::vector<double> term_lhs;  // truncated p-norm of each block image
    std::vector<double> term_rhs;  // delta * ||w_j|| * truncated-upper p-norm of xi
    double aggregate_lhs = 0.0;    // sum of term_lhs^{s-tilde}
    double aggregate_rhs = 0.0;    // delta^{s} * ||xi||_p^{s} * sum ||w_j||^{s}
    bool holds = false;
};

// The two displayed estimates controlling the operator: per-term
// ||y_j (x) w_j||_p <= delta ||w_j|| ||xi||_p and their s-tilde aggregation.
NormBoundCheck spread_operator_norm_bound(const ScalarSequence& xi, const PartitionScheme& scheme,
                                          const IsomorphFamily& fam,
                                          std::span<const std::vector<double>> w_list, double p,
                                          Index trunc, double slack = 1e-12);

struct RangeCertificate {
    ConvergenceVerdict verdict;
    Index block = 0;           // block of the first nonzero model vector
    double witness_norm = 0.0; // ||w_m||
    double scaled_threshold = 0.0;
    bool term_chain_ok = false;     // per-term ||z_n||^q >= delta^{-q} ||w_m||^q |xi_j|^q
    double comparison_sum = 0.0;    // delta^{-q} ||w_m||^q * sum_{j<=J} |xi_j|^q
    Index terms_used = 0;
};

// q-sum of the range element over the block of a nonzero model vector. For
// q below the mother's summability exponent the partial sums cross the
// scaled threshold (divergence certificate); where the mother carries an
// envelope at q the verdict is Converged instead.
RangeCertificate range_divergence_certificate(const ScalarSequence& xi, const PartitionScheme& scheme,
                                              const IsomorphFamily& fam,
                                              std::span<const std::vector<double>> w_list, double q,
                                              const NormPolicy& policy);

struct PlusSpaceLadder {
    double p = 1.0;
    int rungs = 6;
    double rung(int k) const { return p + 1.0 / static_cast<double>(k); }  // k >= 1
};

struct RungResult {
    double q = 0.0;
    double partial_norm_sum = 0.0;  // sum_{j<=n} ||y_j (x) w_j||_q, truncated
    double bound = 0.0;             // delta * upper(||xi||_q) * sum_j ||w_j||
    bool bound_holds = false;
    std::vector<double> tail_norms;  // || s_W - s_n ||_q for n = 0..W
};

struct LadderReport {
    std::vector<RungResult> rungs;
    bool tails_vanish = false;               // each rung's tail norms decrease to 0
    bool coordinates_rung_independent = false;
    RangeCertificate limit_divergence;       // q = p certificate on the limit element
    bool vacuous = false;                    // empty slot list
};

LadderReport plus_space_cauchy_check(const ScalarSequence& xi, const PartitionScheme& scheme,
                                     const IsomorphFamily& fam,
                                     std::span<const std::vector<double>> w_list,
                                     const PlusSpaceLadder& ladder, Index trunc,
                                     const NormPolicy& policy);

// Rank of the k x k matrix built from one sampled coordinate per block of the
// range elements with each basis vector in its own slot.
int range_independence_rank(const ScalarSequence& xi, const PartitionScheme& scheme,
                            const IsomorphFamily& fam,
                            std::span<const std::vector<double>> basis_w);

}  // namespace seqlab
