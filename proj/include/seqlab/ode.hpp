#pragma once
//
// Scalar Cauchy problems u' = lambda (sqrt|u| + gamma), u(t0) = y0, their
// fixed-step RK4 trajectories, and the closed-form time oracle obtained from
// the antiderivative of 1/(sqrt u + gamma) on the nonnegative branch.
//

#include <cstddef>
#include <optional>
#include <vector>

namespace seqlab {

struct ScalarCauchyProblem {
    double lambda = 0.0;  // field coefficient
    double gamma = 0.0;   // additive offset, > 0
    double t0 = 0.0;
    double y0 = 0.0;

    void validate() const;
};

struct Trajectory {
    double t0 = 0.0;
    double step = 0.0;
    std::vector<double> u;  // u[k] = value at t0 + k*step

    double t_at(std::size_t k) const { return t0 + static_cast<double>(k) * step; }
};

// Classical RK4 with fixed step from (t0, y0) to t_end.
Trajectory integrate_scalar(const ScalarCauchyProblem& p, double step, double t_end);

// t0 + (1/lambda) * [F(u_target) - F(y0)] with F(u) = 2 sqrt u - 2 gamma log(sqrt u + gamma).
// Requires lambda != 0 and the path to stay on the branch u >= 0.
double analytic_time(const ScalarCauchyProblem& p, double u_target);

// First time at which the RK4 flow reaches u_target (last step resolved by
// bisection on the partial step). nullopt if not reached by t_max.
std::optional<double> time_to_reach(const ScalarCauchyProblem& p, double u_target, double step,
                                    double t_max);

// (max(|lambda| (t - t0) / 2 - sqrt|y0|, 0))^2 — the integral-inequality
// floor under any solution coordinate of the combined field.
double blowup_lower_bound(double lambda, double t0, double y0, double t);

}  // namespace seqlab
