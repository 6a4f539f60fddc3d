#pragma once

#include <array>
#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "siqrb/params.hpp"
#include "siqrb/state.hpp"

namespace siqrb {

using Matrix5 = Eigen::Matrix<double, 5, 5>;
using Vector5 = Eigen::Matrix<double, 5, 1>;

enum class EquilibriumKind { disease_free, endemic };

/// A steady state together with the evidence that it is one: the max-norm
/// of the vector field at the state, relative to the state scale. Reports
/// are only emitted when this residual is below 1e-8.
struct EquilibriumReport {
    EquilibriumKind kind = EquilibriumKind::disease_free;
    State state;
    double residual_norm = 0.0;
    double lambda_star = 0.0; ///< infection rate beta*B*/(kappa+B*); zero for the disease-free state
    double R0 = 0.0;
};

enum class Stability { locally_asymptotically_stable, unstable, critical };

/// Stability of the disease-free equilibrium, decided by the sign of
/// routh_margin = a1*d - beta*Lambda*eta/(mu*kappa).
struct StabilityVerdict {
    Stability classification = Stability::critical;
    double routh_margin = 0.0;
};

/// Center-manifold coefficients at the transcritical bifurcation beta = beta*,
/// with the zero-eigenvalue eigenvectors normalized to w2 = v2 = 1.
/// a < 0 together with b > 0 means the endemic branch emerging at R0 = 1
/// is locally asymptotically stable.
struct BifurcationReport {
    double a = 0.0;
    double b = 0.0;
    double beta_star = 0.0;
    Vector5 right_eigenvector; ///< w, with J*w = 0
    Vector5 left_eigenvector;  ///< v, with v^T J* = 0
};

/// R0 = beta*Lambda*eta / (mu*kappa*d*a1).
double basic_reproduction_number(const ValidatedParams& p);

/// E0 = (Lambda/mu, 0, 0, 0, 0).
EquilibriumReport disease_free_equilibrium(const ValidatedParams& p);

/// The positive steady state; exists exactly when R0 > 1, so absence is a
/// value rather than an error.
std::optional<EquilibriumReport> endemic_equilibrium(const ValidatedParams& p);

StabilityVerdict dfe_stability(const ValidatedParams& p);

/// Closed-form Jacobian of the uncontrolled vector field at x.
Matrix5 jacobian_at(const State& x, const ValidatedParams& p);

/// Eigenvalues of the Jacobian at the disease-free equilibrium via the
/// characteristic-polynomial factorization: -mu, -a2, -a3 and the two roots
/// of chi^2 + (a1+d) chi + a1*d - beta*Lambda*eta/(mu*kappa).
std::array<std::complex<double>, 5> dfe_eigenvalues(const ValidatedParams& p);

/// Eigenvalues of the Jacobian at an arbitrary state (dense solver).
std::array<std::complex<double>, 5> eigenvalues_at(const State& x, const ValidatedParams& p);

/// Throws DegenerateEigenstructure if the zero eigenvalue of the Jacobian
/// at beta = beta* is not simple within 1e-8.
BifurcationReport bifurcation_coefficients(const ValidatedParams& p);

} // namespace siqrb
