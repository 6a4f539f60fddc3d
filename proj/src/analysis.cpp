#include "siqrb/analysis.hpp"

#include <cmath>

#include "siqrb/errors.hpp"
#include "siqrb/model.hpp"

namespace siqrb {

namespace {

double relative_residual(const State& x, const ValidatedParams& p)
{
    return max_abs(uncontrolled_rhs(x, p)) / std::max(1.0, max_abs(x));
}

} // namespace

double basic_reproduction_number(const ValidatedParams& p)
{
    return p.beta * p.Lambda * p.eta / (p.mu * p.kappa * p.d * p.a1);
}

EquilibriumReport disease_free_equilibrium(const ValidatedParams& p)
{
    EquilibriumReport report;
    report.kind = EquilibriumKind::disease_free;
    report.state = State{p.Lambda / p.mu, 0.0, 0.0, 0.0, 0.0};
    report.residual_norm = relative_residual(report.state, p);
    report.lambda_star = 0.0;
    report.R0 = basic_reproduction_number(p);
    return report;
}

std::optional<EquilibriumReport> endemic_equilibrium(const ValidatedParams& p)
{
    const double R0 = basic_reproduction_number(p);
    if (!(R0 > 1.0)) {
        return std::nullopt;
    }
    const double a123 = p.a1 * p.a2 * p.a3;
    const double lambda_star = p.mu * p.kappa * p.d * a123 * (R0 - 1.0) /
                               (p.kappa * (a123 - p.delta * p.epsilon * p.omega) * p.d +
                                p.Lambda * p.eta * p.a2 * p.a3);
    const double D = a123 * (lambda_star + p.mu) - p.delta * p.epsilon * p.omega * lambda_star;

    EquilibriumReport report;
    report.kind = EquilibriumKind::endemic;
    report.state = State{p.Lambda * a123 / D,
                         p.Lambda * p.a2 * p.a3 * lambda_star / D,
                         p.Lambda * p.delta * p.a3 * lambda_star / D,
                         p.Lambda * p.delta * p.epsilon * lambda_star / D,
                         p.Lambda * p.eta * p.a2 * p.a3 * lambda_star / (D * p.d)};
    report.residual_norm = relative_residual(report.state, p);
    report.lambda_star = lambda_star;
    report.R0 = R0;
    return report;
}

StabilityVerdict dfe_stability(const ValidatedParams& p)
{
    StabilityVerdict verdict;
    verdict.routh_margin = p.a1 * p.d - p.beta * p.Lambda * p.eta / (p.mu * p.kappa);
    const double critical_band = 1e-12 * p.a1 * p.d;
    if (std::abs(verdict.routh_margin) <= critical_band) {
        verdict.classification = Stability::critical;
    } else if (verdict.routh_margin > 0.0) {
        verdict.classification = Stability::locally_asymptotically_stable;
    } else {
        verdict.classification = Stability::unstable;
    }
    return verdict;
}

Matrix5 jacobian_at(const State& x, const ValidatedParams& p)
{
    const double foi = force_of_infection(x.B, p);
    const double dfoi_dB = p.beta * p.kappa / ((p.kappa + x.B) * (p.kappa + x.B));
    Matrix5 J = Matrix5::Zero();
    // row S
    J(0, 0) = -foi - p.mu;
    J(0, 3) = p.omega;
    J(0, 4) = -dfoi_dB * x.S;
    // row I
    J(1, 0) = foi;
    J(1, 1) = -p.a1;
    J(1, 4) = dfoi_dB * x.S;
    // row Q
    J(2, 1) = p.delta;
    J(2, 2) = -p.a2;
    // row R
    J(3, 2) = p.epsilon;
    J(3, 3) = -p.a3;
    // row B
    J(4, 1) = p.eta;
    J(4, 4) = -p.d;
    return J;
}

std::array<std::complex<double>, 5> dfe_eigenvalues(const ValidatedParams& p)
{
    // chi^2 + (a1+d) chi + a1*d - beta*Lambda*eta/(mu*kappa) = 0
    const std::complex<double> half_trace{-0.5 * (p.a1 + p.d), 0.0};
    const std::complex<double> discriminant{0.25 * (p.a1 + p.d) * (p.a1 + p.d) -
                                                (p.a1 * p.d - p.beta * p.Lambda * p.eta / (p.mu * p.kappa)),
                                            0.0};
    const std::complex<double> root = std::sqrt(discriminant);
    return {std::complex<double>{-p.mu, 0.0}, std::complex<double>{-p.a2, 0.0},
            std::complex<double>{-p.a3, 0.0}, half_trace + root, half_trace - root};
}

std::array<std::complex<double>, 5> eigenvalues_at(const State& x, const ValidatedParams& p)
{
    const Eigen::EigenSolver<Matrix5> solver(jacobian_at(x, p), false);
    std::array<std::complex<double>, 5> out;
    for (int i = 0; i < 5; ++i) {
        out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    }
    return out;
}

BifurcationReport bifurcation_coefficients(const ValidatedParams& p)
{
    // At beta = beta* the Jacobian spectrum is {0, -(a1+d), -mu, -a2, -a3};
    // zero stops being simple only if another eigenvalue collapses onto it.
    const double separation = std::min(std::min(p.mu, p.a2), std::min(p.a3, p.a1 + p.d));
    if (separation <= 1e-8) {
        throw DegenerateEigenstructure(
            "bifurcation_coefficients: zero eigenvalue not simple within 1e-8");
    }

    BifurcationReport report;
    report.beta_star = p.mu * p.kappa * p.d * p.a1 / (p.Lambda * p.eta);

    // Right and left null vectors of the Jacobian at beta*, normalized w2 = v2 = 1.
    report.right_eigenvector << (p.delta * p.epsilon * p.omega / (p.a2 * p.a3) - p.a1) / p.mu, 1.0,
        p.delta / p.a2, p.delta * p.epsilon / (p.a2 * p.a3), p.eta / p.d;
    report.left_eigenvector << 0.0, 1.0, 0.0, 0.0, p.a1 / p.eta;

    report.a = 2.0 * p.eta * report.beta_star / (p.d * p.kappa * p.mu) *
               ((p.delta * p.epsilon * p.omega - p.a1 * p.a2 * p.a3) / (p.a2 * p.a3) -
                p.Lambda * p.eta / (p.d * p.kappa));
    report.b = p.Lambda * p.eta / (p.mu * p.kappa * p.d);
    return report;
}

} // namespace siqrb
