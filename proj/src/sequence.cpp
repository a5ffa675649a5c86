#include "seqlab/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace seqlab {

ScalarSequence::ScalarSequence(std::string label, Generator gen)
    : label_(std::move(label)), gen_(std::move(gen)) {}

ScalarSequence::ScalarSequence(std::string label, Generator gen, Index tail_monotone_from)
    : label_(std::move(label)), gen_(std::move(gen)), tail_monotone_from_(tail_monotone_from) {}

ScalarSequence::ScalarSequence(std::string label, Generator gen, Index tail_monotone_from,
                               TailEnvelope envelope)
    : label_(std::move(label)),
      gen_(std::move(gen)),
      tail_monotone_from_(tail_monotone_from),
      envelope_(std::move(envelope)) {}

double ScalarSequence::eval(Index j) const {
    if (j < 1) throw std::domain_error("sequence index must be >= 1");
    return gen_(static_cast<double>(j));
}

double ScalarSequence::eval_at(double j) const {
    if (!(j >= 1.0)) throw std::domain_error("sequence index must be >= 1");
    return gen_(j);
}

std::optional<double> ScalarSequence::tail_envelope(double q, double n) const {
    if (!envelope_) return std::nullopt;
    return envelope_(q, n);
}

ScalarSequence unit_sequence(Index m) {
    if (m < 1) throw std::domain_error("unit vector index must be >= 1");
    const double md = static_cast<double>(m);
    return ScalarSequence(
        "e_" + std::to_string(m), [md](double j) { return j == md ? 1.0 : 0.0; }, m,
        [md](double, double n) -> std::optional<double> {
            if (n >= md) return 0.0;
            return std::nullopt;
        });
}

ScalarSequence zero_sequence() {
    return ScalarSequence(
        "zero", [](double) { return 0.0; }, 1,
        [](double, double) -> std::optional<double> { return 0.0; });
}

ScalarSequence mother_ell_p(double p) {
    if (!(p > 0.0)) throw std::domain_error("mother_ell_p requires p > 0");
    return ScalarSequence(
        "mother_ell_p(" + std::to_string(p) + ")",
        [p](double j) {
            const double lg = std::log(j + 1.0);
            return std::pow(j * lg * lg, -1.0 / p);
        },
        1,
        [p](double q, double n) -> std::optional<double> {
            if (q < p || n < 2.0) return std::nullopt;
            // Integral test on |xi_j|^q = (j log^2(j+1))^{-q/p}:
            //   q = p: tail <= int_n^inf dx / (x log^2 x) = 1/log n.
            //   q > p: terms shrink with q for j >= 2, and the log factor can be
            //          dropped, so both 1/log n and n^{1-q/p}/(q/p-1) bound the tail.
            const double log_bound = 1.0 / std::log(n);
            if (q == p) return log_bound;
            const double r = q / p;
            return std::min(log_bound, std::pow(n, 1.0 - r) / (r - 1.0));
        });
}

ScalarSequence mother_c0() {
    // No envelope: the q-series diverges for every q > 0.
    return ScalarSequence(
        "mother_c0", [](double j) { return 1.0 / std::log(j + 1.0); }, 1);
}

ScalarSequence mother_ell_p_plus(double p) {
    if (!(p >= 1.0)) throw std::domain_error("mother_ell_p_plus requires p >= 1");
    return ScalarSequence(
        "mother_ell_p_plus(" + std::to_string(p) + ")",
        [p](double j) { return std::pow(j, -1.0 / p); }, 1,
        [p](double q, double n) -> std::optional<double> {
            if (q <= p || n < 1.0) return std::nullopt;
            // sum_{j>n} j^{-q/p} <= int_n^inf x^{-q/p} dx = n^{1-q/p}/(q/p-1)
            const double r = q / p;
            return std::pow(n, 1.0 - r) / (r - 1.0);
        });
}

ScalarSequence lin_comb(std::vector<std::pair<double, ScalarSequence>> terms) {
    if (terms.empty()) return zero_sequence();
    std::string label = "lin_comb(";
    for (std::size_t k = 0; k < terms.size(); ++k) {
        if (k > 0) label += ", ";
        label += std::to_string(terms[k].first) + "*" + terms[k].second.label();
    }
    label += ")";
    auto shared = std::make_shared<std::vector<std::pair<double, ScalarSequence>>>(std::move(terms));
    return ScalarSequence(std::move(label), [shared](double j) {
        double acc = 0.0;
        for (const auto& [c, seq] : *shared) acc += c * seq.eval_at(j);
        return acc;
    });
}

}  // namespace seqlab
