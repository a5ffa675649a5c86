#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "seqlab/rng.hpp"
#include "seqlab/sequence.hpp"

using namespace seqlab;

namespace {

// adaptive Simpson quadrature, used as an independent oracle for the
// registered integral-test envelopes
double simpson(double (*f)(double), double a, double b) {
    const double m = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

double integrate(double (*f)(double), double a, double b, double tol, int depth = 0) {
    const double m = 0.5 * (a + b);
    const double whole = simpson(f, a, b);
    const double halves = simpson(f, a, m) + simpson(f, m, b);
    if (depth > 40 || std::abs(whole - halves) < 15.0 * tol) return halves;
    return integrate(f, a, m, tol / 2, depth + 1) + integrate(f, m, b, tol / 2, depth + 1);
}

}  // namespace

TEST_SUITE("sequence") {

TEST_CASE("unit vectors are indicators") {
    const auto e3 = unit_sequence(3);
    CHECK(e3.eval(3) == 1.0);
    CHECK(e3.eval(5) == 0.0);
    CHECK(e3.eval(1) == 0.0);
    CHECK(e3.tail_monotone_from() == 3);
}

TEST_CASE("mother vector closed forms at pinned indices") {
    const auto xi2 = mother_ell_p(2.0);
    const double lg2 = std::log(2.0);
    CHECK(xi2.eval(1) == doctest::Approx(std::pow(lg2 * lg2, -0.5)).epsilon(1e-15));

    const auto xi1 = mother_ell_p(1.0);
    CHECK(xi1.eval(1) == doctest::Approx(1.0 / (lg2 * lg2)).epsilon(1e-15));
    CHECK(xi1.eval(1) == doctest::Approx(2.0813689810056077).epsilon(1e-12));

    CHECK(mother_c0().eval(1) == doctest::Approx(1.0 / lg2).epsilon(1e-15));
    CHECK(mother_ell_p_plus(2.0).eval(4) == 0.5);
    CHECK(mother_ell_p_plus(1.0).eval(7) == doctest::Approx(1.0 / 7.0).epsilon(1e-16));
}

TEST_CASE("domain errors on invalid construction and evaluation") {
    CHECK_THROWS_AS(mother_ell_p(0.0), std::domain_error);
    CHECK_THROWS_AS(mother_ell_p(-2.0), std::domain_error);
    CHECK_THROWS_AS(mother_ell_p_plus(0.5), std::domain_error);
    CHECK_THROWS_AS(unit_sequence(0), std::domain_error);
    const auto xi = mother_c0();
    CHECK_THROWS_AS(xi.eval(0), std::domain_error);
    CHECK_THROWS_AS(xi.eval(-1), std::domain_error);
    CHECK_THROWS_AS(xi.eval_at(0.5), std::domain_error);
}

TEST_CASE("linear combinations evaluate pointwise") {
    const auto combo = lin_comb({{1.0, unit_sequence(1)}, {2.0, unit_sequence(2)}});
    CHECK(combo.eval(2) == 2.0);
    CHECK(combo.eval(1) == 1.0);
    CHECK(combo.eval(3) == 0.0);

    const auto xi = mother_ell_p(2.0);
    const auto zero_scaled = lin_comb({{0.0, xi}});
    const auto cancel = lin_comb({{1.0, xi}, {-1.0, xi}});
    for (Index j : {Index{1}, Index{5}, Index{1000}}) {
        CHECK(zero_scaled.eval(j) == 0.0);
        CHECK(cancel.eval(j) == 0.0);
    }
    CHECK(lin_comb({}).eval(42) == 0.0);
}

TEST_CASE("evaluation is deterministic bit for bit") {
    SplitMix rng(11);
    const ScalarSequence seqs[] = {mother_ell_p(2.0), mother_ell_p(0.7), mother_c0(),
                                   mother_ell_p_plus(1.0), unit_sequence(9)};
    for (const auto& seq : seqs)
        for (int t = 0; t < 200; ++t) {
            const Index j = rng.range(1, 1'000'000);
            const double a = seq.eval(j);
            const double b = seq.eval(j);
            REQUIRE(std::memcmp(&a, &b, sizeof a) == 0);
        }
}

TEST_CASE("built-in tails are nonincreasing in absolute value") {
    SplitMix rng(23);
    const ScalarSequence seqs[] = {mother_ell_p(2.0), mother_ell_p(0.5), mother_c0(),
                                   mother_ell_p_plus(1.0), mother_ell_p_plus(3.0),
                                   unit_sequence(4)};
    for (const auto& seq : seqs) {
        const Index from = *seq.tail_monotone_from();
        for (int t = 0; t < 300; ++t) {
            const Index j = std::max(from, rng.range(1, 1'000'000));
            REQUIRE(std::abs(seq.eval(j + 1)) <= std::abs(seq.eval(j)));
        }
    }
}

TEST_CASE("registered envelopes match the quadrature oracle") {
    // sum_{j>N} 1/(j log^2(j+1)) <= int_N^inf dx/(x log^2 x) = 1/log N
    const auto xi = mother_ell_p(2.0);
    for (double n : {10.0, 100.0, 4096.0}) {
        const auto env = xi.tail_envelope(2.0, n);
        REQUIRE(env.has_value());
        CHECK(*env == doctest::Approx(1.0 / std::log(n)).epsilon(1e-15));
        // antiderivative check: quadrature of the envelope integrand over
        // [n, 10^6 n] must equal 1/log n - 1/log(10^6 n)
        const double head = integrate([](double x) { return 1.0 / (x * std::log(x) * std::log(x)); },
                                      n, 1e6 * n, 1e-12);
        CHECK(head == doctest::Approx(1.0 / std::log(n) - 1.0 / std::log(1e6 * n)).epsilon(1e-8));
    }
    CHECK_FALSE(xi.tail_envelope(1.0, 100.0).has_value());   // divergent below p
    CHECK_FALSE(mother_c0().has_tail_envelope());            // divergent everywhere

    // plus mother: sum_{j>N} j^{-2} <= 1/N
    const auto plus = mother_ell_p_plus(1.0);
    const auto env = plus.tail_envelope(2.0, 100.0);
    REQUIRE(env.has_value());
    CHECK(*env == doctest::Approx(0.01).epsilon(1e-15));
    CHECK_FALSE(plus.tail_envelope(1.0, 100.0).has_value());

    // envelopes really bound the tails (compare against a long partial sum)
    double tail = 0.0;
    for (Index j = 2'000'000; j > 100; --j) tail += std::pow(static_cast<double>(j), -2.0);
    CHECK(tail <= *env);
}

TEST_CASE("real-index evaluation extends the closed forms") {
    const auto xi = mother_c0();
    const double big = std::ldexp(1.0, 200);  // 2^200
    CHECK(xi.eval_at(big) == doctest::Approx(1.0 / std::log(big + 1.0)).epsilon(1e-15));
    CHECK(xi.eval_at(big) < xi.eval_at(big / 2.0));
}

}  // TEST_SUITE
