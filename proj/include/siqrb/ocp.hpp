#pragma once

#include <vector>

#include "siqrb/integrator.hpp"
#include "siqrb/model.hpp"

namespace siqrb {

/// Fixed-horizon quarantine control problem plus solver knobs.
struct OcpConfig {
    ValidatedParams params;
    State x0;
    double W = 0.0; ///< quadratic control-cost weight, > 0
    TimeGrid grid;
    double sweep_tolerance = 1e-4; ///< relative max-norm control change at which to stop
    int max_iterations = 500;
    double relaxation = 0.5;      ///< convex-combination weight on the new control, in (0, 1]
    double initial_control = 0.5; ///< constant initial guess for u
};

struct SweepIteration {
    double cost = 0.0;           ///< J of the iterate entering this iteration
    double control_change = 0.0; ///< max-norm change applied by this iteration
};

struct OcpSolution {
    ControlSignal control;
    Trajectory state_traj;
    AdjointTrajectory adjoint_traj;
    double cost = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<SweepIteration> history;
};

/// Pointwise minimizer of the Hamiltonian over [0, 1]:
/// u = clamp(delta * I * (lambda2 - lambda3) / W, 0, 1).
/// Throws NonPositiveWeight for W <= 0.
double control_update(const State& x, const AdjointState& l, const ValidatedParams& p, double W);

/// RK4 integration of the controlled system with the control linearly
/// interpolated at the half steps; components are clamped to zero after
/// each step (floating-point undershoot only).
Trajectory integrate_controlled(const ValidatedParams& p, const State& x0,
                                const ControlSignal& control);

/// Forward-backward sweep: integrate the state forward under the current
/// control, the costate backward from zero terminal data, apply the
/// projected control law, and relax. Stops when the max-norm control change
/// drops below sweep_tolerance * max(1, max|u|) or max_iterations is hit;
/// in the latter case the best iterate is still returned with
/// converged = false.
OcpSolution forward_backward_sweep(const OcpConfig& config);

struct GradientCheck {
    double analytic = 0.0; ///< adjoint-based directional derivative of J
    double numeric = 0.0;  ///< central difference of J along the direction
};

/// Directional-derivative cross-check of J at an interior control. The
/// analytic value integrates (W*u - delta*I*(lambda2 - lambda3)) * direction
/// over the grid; the numeric one is a central difference with step eps.
///
/// Throws ProjectionActive if u leaves (0.01, 0.99) anywhere the direction
/// is nonzero, and GridMismatch for inconsistent grids.
GradientCheck cost_gradient_check(const OcpConfig& config, const ControlSignal& u,
                                  const ControlSignal& direction, double eps = 1e-5);

} // namespace siqrb
