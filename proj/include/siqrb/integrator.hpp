#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "siqrb/errors.hpp"
#include "siqrb/state.hpp"

namespace siqrb {

/// Uniform time grid with n_steps steps of width h = (t_final - t0) / n_steps.
struct TimeGrid {
    double t0 = 0.0;
    double t_final = 0.0;
    int n_steps = 0;

    TimeGrid() = default;
    TimeGrid(double t0_, double t_final_, int n_steps_) : t0(t0_), t_final(t_final_), n_steps(n_steps_)
    {
        if (!(t_final > t0)) {
            throw DomainError("TimeGrid: t_final must exceed t0");
        }
        if (n_steps < 1) {
            throw DomainError("TimeGrid: n_steps must be at least 1");
        }
    }

    double h() const { return (t_final - t0) / n_steps; }
    double time(int i) const { return t0 + i * h(); }
    int n_points() const { return n_steps + 1; }

    bool operator==(const TimeGrid&) const = default;
};

/// Grid plus one state per grid point. worst_undershoot records the most
/// negative pre-clamp component seen when nonnegativity clamping is active
/// (0 otherwise).
template <class S>
struct BasicTrajectory {
    TimeGrid grid;
    std::vector<S> states;
    double worst_undershoot = 0.0;

    /// Linear interpolation between grid points; t is clamped to the grid
    /// span and snapped to a node when within rounding distance of one.
    S at(double t) const
    {
        const double h = grid.h();
        int i = static_cast<int>((t - grid.t0) / h);
        if (i < 0) i = 0;
        if (i > grid.n_steps - 1) i = grid.n_steps - 1;
        const double s = (t - grid.time(i)) / h;
        if (s <= 1e-9) return states[static_cast<std::size_t>(i)];
        if (s >= 1.0 - 1e-9) return states[static_cast<std::size_t>(i) + 1];
        return states[static_cast<std::size_t>(i)] +
               s * (states[static_cast<std::size_t>(i) + 1] - states[static_cast<std::size_t>(i)]);
    }
};

using Trajectory = BasicTrajectory<State>;
using AdjointTrajectory = BasicTrajectory<AdjointState>;

/// Piecewise-linear control u(t) sampled on a uniform grid, values in [0, 1].
struct ControlSignal {
    TimeGrid grid;
    std::vector<double> values;

    static ControlSignal constant(double u, const TimeGrid& grid)
    {
        return {grid, std::vector<double>(static_cast<std::size_t>(grid.n_points()), u)};
    }

    double at(double t) const
    {
        const double h = grid.h();
        int i = static_cast<int>((t - grid.t0) / h);
        if (i < 0) i = 0;
        if (i > grid.n_steps - 1) i = grid.n_steps - 1;
        const double s = (t - grid.time(i)) / h;
        if (s <= 1e-9) return values[static_cast<std::size_t>(i)];
        if (s >= 1.0 - 1e-9) return values[static_cast<std::size_t>(i) + 1];
        const double a = values[static_cast<std::size_t>(i)];
        return a + s * (values[static_cast<std::size_t>(i) + 1] - a);
    }

    double max_abs_value() const
    {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
};

/// One classical Runge-Kutta step of width h (h may be negative).
template <class S, class Rhs>
S rk4_step(Rhs&& rhs, double t, const S& x, double h)
{
    const S k1 = rhs(t, x);
    const S k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1);
    const S k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2);
    const S k4 = rhs(t + h, x + h * k3);
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Fixed-step RK4 from grid.t0 to grid.t_final. rhs is called as rhs(t, x).
/// Throws NonFiniteState as soon as a component leaves the finite range.
template <class S, class Rhs>
BasicTrajectory<S> integrate_forward(Rhs&& rhs, const S& x0, const TimeGrid& grid)
{
    BasicTrajectory<S> out{grid, {}, 0.0};
    out.states.reserve(static_cast<std::size_t>(grid.n_points()));
    out.states.push_back(x0);
    S x = x0;
    const double h = grid.h();
    for (int i = 0; i < grid.n_steps; ++i) {
        x = rk4_step(rhs, grid.time(i), x, h);
        if (!all_finite(x)) {
            throw NonFiniteState("integrate_forward: nonfinite state at t = " +
                                 std::to_string(grid.time(i + 1)));
        }
        out.states.push_back(x);
    }
    return out;
}

/// Forward RK4 for the model state with components clamped to zero after
/// each step. Exact solutions stay nonnegative; the clamp only absorbs
/// floating-point undershoot, whose worst value is recorded.
template <class Rhs>
Trajectory integrate_forward_clamped(Rhs&& rhs, const State& x0, const TimeGrid& grid)
{
    Trajectory out{grid, {}, 0.0};
    out.states.reserve(static_cast<std::size_t>(grid.n_points()));
    out.states.push_back(x0);
    State x = x0;
    const double h = grid.h();
    for (int i = 0; i < grid.n_steps; ++i) {
        x = rk4_step(rhs, grid.time(i), x, h);
        if (!all_finite(x)) {
            throw NonFiniteState("integrate_forward_clamped: nonfinite state at t = " +
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

/// Fixed-step RK4 from grid.t_final down to grid.t0, given the terminal
/// value. The result is stored in ascending time order, so
/// states.back() == terminal exactly.
template <class S, class Rhs>
BasicTrajectory<S> integrate_backward(Rhs&& rhs, const S& terminal, const TimeGrid& grid)
{
    BasicTrajectory<S> out{grid, {}, 0.0};
    out.states.assign(static_cast<std::size_t>(grid.n_points()), terminal);
    S x = terminal;
    const double h = grid.h();
    for (int i = grid.n_steps; i > 0; --i) {
        x = rk4_step(rhs, grid.time(i), x, -h);
        if (!all_finite(x)) {
            throw NonFiniteState("integrate_backward: nonfinite state at t = " +
                                 std::to_string(grid.time(i - 1)));
        }
        out.states[static_cast<std::size_t>(i) - 1] = x;
    }
    return out;
}

/// Backward RK4 sweep of the costate system against a stored state
/// trajectory and control. At the half-step stages the state and control
/// are linearly interpolated between the bracketing grid points. rhs is
/// called as rhs(l, x, u).
///
/// Throws GridMismatch if the state and control grids differ.
template <class AdjRhs>
AdjointTrajectory integrate_adjoint(AdjRhs&& rhs, const AdjointState& terminal,
                                    const Trajectory& state_traj, const ControlSignal& control)
{
    if (!(state_traj.grid == control.grid)) {
        throw GridMismatch("integrate_adjoint: state and control grids differ");
    }
    const TimeGrid& grid = state_traj.grid;
    AdjointTrajectory out{grid, {}, 0.0};
    out.states.assign(static_cast<std::size_t>(grid.n_points()), terminal);
    AdjointState l = terminal;
    const double h = grid.h();
    for (int i = grid.n_steps; i > 0; --i) {
        const std::size_t hi = static_cast<std::size_t>(i);
        const State& x1 = state_traj.states[hi];
        const State& x0 = state_traj.states[hi - 1];
        const State xm = 0.5 * (x0 + x1);
        const double u1 = control.values[hi];
        const double u0 = control.values[hi - 1];
        const double um = 0.5 * (u0 + u1);
        const AdjointState k1 = rhs(l, x1, u1);
        const AdjointState k2 = rhs(l - 0.5 * h * k1, xm, um);
        const AdjointState k3 = rhs(l - 0.5 * h * k2, xm, um);
        const AdjointState k4 = rhs(l - h * k3, x0, u0);
        l = l - (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!all_finite(l)) {
            throw NonFiniteState("integrate_adjoint: nonfinite costate at t = " +
                                 std::to_string(grid.time(i - 1)));
        }
        out.states[hi - 1] = l;
    }
    return out;
}

/// Composite Simpson quadrature of per-grid-point samples; when the number
/// of intervals is odd the final interval is handled by the trapezoid rule.
double integrate_samples(const TimeGrid& grid, const std::vector<double>& samples);

/// Objective value J = integral of I(t) + B(t) + (W/2) u(t)^2 over the grid.
/// Throws GridMismatch if trajectory and control grids differ.
double total_cost(const Trajectory& traj, const ControlSignal& control, double W);

} // namespace siqrb
