#include "siqrb/ocp.hpp"

#include <algorithm>
#include <cmath>

#include "siqrb/errors.hpp"

namespace siqrb {

double control_update(const State& x, const AdjointState& l, const ValidatedParams& p, double W)
{
    if (!(W > 0.0)) {
        throw NonPositiveWeight("control_update: W must be strictly positive");
    }
    const double unconstrained = p.delta * x.I * (l.lambda2 - l.lambda3) / W;
    return std::min(std::max(0.0, unconstrained), 1.0);
}

Trajectory integrate_controlled(const ValidatedParams& p, const State& x0,
                                const ControlSignal& control)
{
    const TimeGrid& grid = control.grid;
    Trajectory out{grid, {}, 0.0};
    out.states.reserve(static_cast<std::size_t>(grid.n_points()));
    out.states.push_back(x0);
    State x = x0;
    const double h = grid.h();
    for (int i = 0; i < grid.n_steps; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const double u0 = control.values[k];
        const double u1 = control.values[k + 1];
        const double um = 0.5 * (u0 + u1);
        const State k1 = controlled_rhs(x, u0, p);
        const State k2 = controlled_rhs(x + 0.5 * h * k1, um, p);
        const State k3 = controlled_rhs(x + 0.5 * h * k2, um, p);
        const State k4 = controlled_rhs(x + h * k3, u1, p);
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!all_finite(x)) {
            throw NonFiniteState("integrate_controlled: nonfinite state at t = " +
                                 std::to_string(grid.time(i + 1)));
        }
        for (double* c : {&x.S, &x.I, &x.Q, &x.R, &x.B}) {
            if (*c < 0.0) {
                out.worst_undershoot = std::min(out.worst_undershoot, *c);
                *c = 0.0;
            }
        }
        out.states.push_back(x);
    }
    return out;
}

namespace {

void validate_config(const OcpConfig& config)
{
    if (!(config.W > 0.0)) {
        throw NonPositiveWeight("forward_backward_sweep: W must be strictly positive");
    }
    if (!(config.sweep_tolerance > 0.0)) {
        throw DomainError("forward_backward_sweep: sweep_tolerance must be positive");
    }
    if (config.max_iterations < 1) {
        throw DomainError("forward_backward_sweep: max_iterations must be at least 1");
    }
    if (!(config.relaxation > 0.0 && config.relaxation <= 1.0)) {
        throw DomainError("forward_backward_sweep: relaxation must lie in (0, 1]");
    }
    if (!(config.initial_control >= 0.0 && config.initial_control <= 1.0)) {
        throw ControlOutOfRange("forward_backward_sweep: initial control outside [0, 1]");
    }
}

AdjointTrajectory sweep_adjoint(const ValidatedParams& p, const Trajectory& state_traj,
                                const ControlSignal& control)
{
    return integrate_adjoint(
        [&p](const AdjointState& l, const State& x, double u) { return adjoint_rhs(l, x, u, p); },
        AdjointState{}, state_traj, control);
}

} // namespace

OcpSolution forward_backward_sweep(const OcpConfig& config)
{
    validate_config(config);
    const ValidatedParams& p = config.params;
    const int n_points = config.grid.n_points();

    OcpSolution solution;
    solution.control = ControlSignal::constant(config.initial_control, config.grid);

    for (int iter = 1; iter <= config.max_iterations; ++iter) {
        solution.state_traj = integrate_controlled(p, config.x0, solution.control);
        solution.adjoint_traj = sweep_adjoint(p, solution.state_traj, solution.control);
        const double J = total_cost(solution.state_traj, solution.control, config.W);

        double change = 0.0;
        ControlSignal next = solution.control;
        for (int i = 0; i < n_points; ++i) {
            const std::size_t k = static_cast<std::size_t>(i);
            const double formula = control_update(solution.state_traj.states[k],
                                                  solution.adjoint_traj.states[k], p, config.W);
            double value = config.relaxation * formula +
                           (1.0 - config.relaxation) * solution.control.values[k];
            value = std::min(std::max(0.0, value), 1.0);
            change = std::max(change, std::abs(value - solution.control.values[k]));
            next.values[k] = value;
        }
        solution.history.push_back({J, change});
        solution.control = next;
        solution.iterations = iter;
        if (change <= config.sweep_tolerance * std::max(1.0, solution.control.max_abs_value())) {
            solution.converged = true;
            break;
        }
    }

    // Re-integrate so the reported trajectories and cost belong to the final control.
    solution.state_traj = integrate_controlled(p, config.x0, solution.control);
    solution.adjoint_traj = sweep_adjoint(p, solution.state_traj, solution.control);
    solution.cost = total_cost(solution.state_traj, solution.control, config.W);
    return solution;
}

GradientCheck cost_gradient_check(const OcpConfig& config, const ControlSignal& u,
                                  const ControlSignal& direction, double eps)
{
    validate_config(config);
    if (!(u.grid == config.grid) || !(direction.grid == config.grid)) {
        throw GridMismatch("cost_gradient_check: control grids do not match the config grid");
    }
    const std::size_t n_points = u.values.size();
    for (std::size_t i = 0; i < n_points; ++i) {
        if (direction.values[i] != 0.0 && !(u.values[i] > 0.01 && u.values[i] < 0.99)) {
            throw ProjectionActive(
                "cost_gradient_check: control touches a bound on the perturbation support");
        }
    }

    const ValidatedParams& p = config.params;
    const Trajectory traj = integrate_controlled(p, config.x0, u);
    const AdjointTrajectory adj = sweep_adjoint(p, traj, u);

    std::vector<double> integrand(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double grad = config.W * u.values[i] -
                            p.delta * traj.states[i].I *
                                (adj.states[i].lambda2 - adj.states[i].lambda3);
        integrand[i] = grad * direction.values[i];
    }

    GradientCheck check;
    check.analytic = integrate_samples(config.grid, integrand);

    ControlSignal plus = u;
    ControlSignal minus = u;
    for (std::size_t i = 0; i < n_points; ++i) {
        plus.values[i] += eps * direction.values[i];
        minus.values[i] -= eps * direction.values[i];
    }
    const double J_plus = total_cost(integrate_controlled(p, config.x0, plus), plus, config.W);
    const double J_minus = total_cost(integrate_controlled(p, config.x0, minus), minus, config.W);
    check.numeric = (J_plus - J_minus) / (2.0 * eps);
    return check;
}

} // namespace siqrb
