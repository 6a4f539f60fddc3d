#pragma once

#include "siqrb/params.hpp"
#include "siqrb/state.hpp"

namespace siqrb {

/// Per-capita infection rate beta*B/(kappa+B); saturates at beta for large B.
/// Throws DomainError for B < 0.
double force_of_infection(double B, const ValidatedParams& p);

/// Right-hand side of the uncontrolled SIQRB system.
State uncontrolled_rhs(const State& x, const ValidatedParams& p);

/// Right-hand side of the quarantine-controlled system: the quarantine
/// inflow delta*I is scaled by the fraction u of infectious individuals
/// actually placed in quarantine. controlled_rhs(x, 1, p) equals
/// uncontrolled_rhs(x, p) exactly, component by component.
/// Throws ControlOutOfRange for u outside [0, 1].
State controlled_rhs(const State& x, double u, const ValidatedParams& p);

/// Costate derivatives -dH/dx of the Hamiltonian below, including the
/// unit source terms in lambda2' and lambda5' coming from the running
/// cost I + B.
AdjointState adjoint_rhs(const AdjointState& l, const State& x, double u, const ValidatedParams& p);

/// Integrand of the objective: I + B + (W/2) u^2.
double running_cost(const State& x, double u, double W);

/// H = I + B + (W/2) u^2 + <lambda, f(x, u)>.
/// Throws NonPositiveWeight for W <= 0 and ControlOutOfRange for u outside [0, 1].
double hamiltonian(const State& x, double u, const AdjointState& l, double W,
                   const ValidatedParams& p);

} // namespace siqrb
