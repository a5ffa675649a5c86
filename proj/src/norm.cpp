#include "seqlab/norm.hpp"

#include <cmath>
#include <stdexcept>

namespace seqlab {

void NormPolicy::validate() const {
    if (budget < 1) throw std::domain_error("policy budget must be >= 1");
    if (!(divergence_threshold > 0.0)) throw std::domain_error("divergence threshold must be > 0");
    if (!(tolerance > 0.0)) throw std::domain_error("tolerance must be > 0");
}

ConvergenceVerdict ConvergenceVerdict::converged(double value, double remainder_bound, Index at_index) {
    ConvergenceVerdict v;
    v.kind = Kind::Converged;
    v.value = value;
    v.remainder_bound = remainder_bound;
    v.at_index = at_index;
    return v;
}

ConvergenceVerdict ConvergenceVerdict::diverged(double threshold, Index crossing_index, double partial) {
    ConvergenceVerdict v;
    v.kind = Kind::Diverged;
    v.threshold = threshold;
    v.crossing_index = crossing_index;
    v.partial_at_crossing = partial;
    return v;
}

ConvergenceVerdict ConvergenceVerdict::undecided(Index budget, double partial) {
    ConvergenceVerdict v;
    v.kind = Kind::Undecided;
    v.budget = budget;
    v.partial = partial;
    return v;
}

std::string ConvergenceVerdict::kind_name() const {
    switch (kind) {
        case Kind::Converged: return "converged";
        case Kind::Diverged: return "diverged";
        case Kind::Undecided: return "undecided";
    }
    return "undecided";
}

void NeumaierSum::add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
        compensation += (sum - t) + x;
    else
        compensation += (x - t) + sum;
    sum = t;
}

double lq_partial(const ScalarSequence& seq, double q, Index n) {
    if (!(q > 0.0)) throw std::domain_error("exponent q must be > 0");
    if (n < 1) throw std::domain_error("truncation index must be >= 1");
    NeumaierSum acc;
    for (Index j = 1; j <= n; ++j) acc.add(std::pow(std::abs(seq.eval(j)), q));
    return acc.value();
}

double lq_block_partial(const ScalarSequence& seq, const PartitionScheme& scheme, Index block,
                        double q, Index count) {
    if (!(q > 0.0)) throw std::domain_error("exponent q must be > 0");
    if (count < 1) throw std::domain_error("truncation index must be >= 1");
    NeumaierSum acc;
    for (Index j = 1; j <= count; ++j)
        acc.add(std::pow(std::abs(seq.eval(scheme.encode(block, j))), q));
    return acc.value();
}

double sup_norm_truncated(const ScalarSequence& seq, Index n) {
    if (n < 1) throw std::domain_error("truncation index must be >= 1");
    double m = 0.0;
    for (Index j = 1; j <= n; ++j) m = std::max(m, std::abs(seq.eval(j)));
    return m;
}

ConvergenceVerdict classify(const ScalarSequence& seq, double q, const NormPolicy& policy) {
    if (!(q > 0.0)) throw std::domain_error("exponent q must be > 0");
    policy.validate();

    const bool may_converge = seq.has_tail_envelope() && seq.tail_monotone_from().has_value();
    const Index monotone_from = seq.tail_monotone_from().value_or(0);

    NeumaierSum acc;
    for (Index j = 1; j <= policy.budget; ++j) {
        acc.add(std::pow(std::abs(seq.eval(j)), q));
        const double partial = acc.value();
        if (partial > policy.divergence_threshold)
            return ConvergenceVerdict::diverged(policy.divergence_threshold, j, partial);
        if (may_converge && j >= monotone_from) {
            const auto rb = seq.tail_envelope(q, static_cast<double>(j));
            if (rb && *rb <= policy.tolerance * partial)
                return ConvergenceVerdict::converged(partial, *rb, j);
        }
    }
    return ConvergenceVerdict::undecided(policy.budget, acc.value());
}

std::optional<double> c0_decay_check(const ScalarSequence& seq, double eps, int max_doublings) {
    if (!(eps > 0.0)) throw std::domain_error("eps must be > 0");
    const auto from = seq.tail_monotone_from();
    if (!from) throw std::invalid_argument("c0_decay_check requires a monotone tail");

    const double start = static_cast<double>(*from);
    auto below = [&](double j) { return std::abs(seq.eval_at(j)) < eps; };

    if (below(start)) return start;

    // Geometric bracket [lo, hi] with |xi_lo| >= eps, |xi_hi| < eps.
    double lo = start;
    double hi = start;
    int doublings = 0;
    do {
        lo = hi;
        hi = hi * 2.0;
        if (++doublings > max_doublings || !std::isfinite(hi)) return std::nullopt;
    } while (!below(hi));

    // Bisect. Over the integer-exact range the result is the least integer
    // crossing; beyond 2^53 the midpoints are exact doubles and the returned
    // value is a sound (near-minimal) real index.
    const double integer_exact = 9007199254740992.0;  // 2^53
    while (true) {
        double mid;
        if (hi <= integer_exact) {
            if (hi - lo <= 1.0) return hi;
            mid = std::floor((lo + hi) / 2.0);
        } else {
            if (hi <= lo * (1.0 + 1e-15)) return hi;
            mid = lo + (hi - lo) / 2.0;
        }
        if (mid <= lo || mid >= hi) return hi;
        if (below(mid))
            hi = mid;
        else
            lo = mid;
    }
}

}  // namespace seqlab
