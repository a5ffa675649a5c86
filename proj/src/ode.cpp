#include "seqlab/ode.hpp"

#include <cmath>
#include <stdexcept>

namespace seqlab {

namespace {

double rhs(const ScalarCauchyProblem& p, double u) {
    return p.lambda * (std::sqrt(std::abs(u)) + p.gamma);
}

double rk4_step(const ScalarCauchyProblem& p, double u, double h) {
    const double k1 = rhs(p, u);
    const double k2 = rhs(p, u + 0.5 * h * k1);
    const double k3 = rhs(p, u + 0.5 * h * k2);
    const double k4 = rhs(p, u + h * k3);
    return u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

void ScalarCauchyProblem::validate() const {
    if (!(gamma > 0.0)) throw std::domain_error("gamma must be > 0");
}

Trajectory integrate_scalar(const ScalarCauchyProblem& p, double step, double t_end) {
    p.validate();
    if (!(step > 0.0)) throw std::domain_error("step must be > 0");
    if (!(t_end > p.t0)) throw std::domain_error("t_end must exceed t0");

    const auto n_steps = static_cast<std::size_t>(std::ceil((t_end - p.t0) / step - 1e-12));
    Trajectory traj;
    traj.t0 = p.t0;
    traj.step = step;
    traj.u.reserve(n_steps + 1);
    double u = p.y0;
    traj.u.push_back(u);
    for (std::size_t k = 0; k < n_steps; ++k) {
        u = rk4_step(p, u, step);
        traj.u.push_back(u);
    }
    return traj;
}

double analytic_time(const ScalarCauchyProblem& p, double u_target) {
    p.validate();
    if (p.lambda == 0.0) throw std::domain_error("analytic_time requires lambda != 0");
    if (p.y0 < 0.0 || u_target < 0.0)
        throw std::invalid_argument("sign-crossing path unsupported: branch must satisfy u >= 0");
    auto antiderivative = [&](double u) {
        const double r = std::sqrt(u);
        return 2.0 * r - 2.0 * p.gamma * std::log(r + p.gamma);
    };
    return p.t0 + (antiderivative(u_target) - antiderivative(p.y0)) / p.lambda;
}

std::optional<double> time_to_reach(const ScalarCauchyProblem& p, double u_target, double step,
                                    double t_max) {
    p.validate();
    if (!(step > 0.0)) throw std::domain_error("step must be > 0");
    if (p.y0 >= u_target) return p.t0;

    double t = p.t0;
    double u = p.y0;
    while (t < t_max) {
        const double un = rk4_step(p, u, step);
        if (un >= u_target) {
            // resolve the crossing inside the final step
            double lo = 0.0, hi = step;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (rk4_step(p, u, mid) >= u_target)
                    hi = mid;
                else
                    lo = mid;
            }
            return t + hi;
        }
        u = un;
        t += step;
    }
    return std::nullopt;
}

double blowup_lower_bound(double lambda, double t0, double y0, double t) {
    const double g = std::max(std::abs(lambda) * (t - t0) / 2.0 - std::sqrt(std::abs(y0)), 0.0);
    return g * g;
}

}  // namespace seqlab
