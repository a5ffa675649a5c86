#pragma once
//
// Formula-defined infinite real sequences with deterministic evaluation.
//
// A ScalarSequence is a pure map j >= 1 -> xi_j. Built-in sequences carry
// two optional pieces of analytic metadata used by the norm engine:
//
//   * tail_monotone_from: an index m with |xi_{j+1}| <= |xi_j| for all j >= m,
//   * a tail envelope: for an exponent q, an upper bound on the series tail
//     sum_{j>N} |xi_j|^q (nullopt where no finite bound is registered).
//
// Envelopes are registered per built-in sequence from integral-test closed
// forms; they are never derived automatically.
//

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace seqlab {

using Index = std::int64_t;

class ScalarSequence {
public:
    // Generators take a real index so that certificates may sample the
    // closed form at exact power-of-two grid points beyond 2^53.
    using Generator = std::function<double(double)>;
    using TailEnvelope = std::function<std::optional<double>(double, double)>;

    ScalarSequence(std::string label, Generator gen);
    ScalarSequence(std::string label, Generator gen, Index tail_monotone_from);
    ScalarSequence(std::string label, Generator gen, Index tail_monotone_from, TailEnvelope envelope);

    // xi_j at an integer index; index 0 or negative is a domain error.
    double eval(Index j) const;

    // xi at a real grid point j >= 1 (decay searches only).
    double eval_at(double j) const;

    const std::string& label() const { return label_; }
    std::optional<Index> tail_monotone_from() const { return tail_monotone_from_; }

    bool has_tail_envelope() const { return static_cast<bool>(envelope_); }
    // Upper bound on sum_{j>n} |xi_j|^q, if one is registered and finite.
    std::optional<double> tail_envelope(double q, double n) const;

private:
    std::string label_;
    Generator gen_;
    std::optional<Index> tail_monotone_from_;
    TailEnvelope envelope_;
};

// Canonical unit vector e_m as an indicator sequence.
ScalarSequence unit_sequence(Index m);

ScalarSequence zero_sequence();

// xi_j = (j log^2(j+1))^{-1/p}: summable at exponent p, divergent below it.
ScalarSequence mother_ell_p(double p);

// xi_j = 1/log(j+1): null sequence, q-divergent for every q > 0.
ScalarSequence mother_c0();

// xi_j = j^{-1/p}, p >= 1: divergent at p, summable at every q > p.
ScalarSequence mother_ell_p_plus(double p);

// Pointwise linear combination; empty input yields the zero sequence.
ScalarSequence lin_comb(std::vector<std::pair<double, ScalarSequence>> terms);

}  // namespace seqlab
