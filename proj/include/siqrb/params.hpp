#pragma once

namespace siqrb {

/// The eleven rate constants of the SIQRB model, in day-based units.
struct ModelParams {
    double Lambda = 0.0;  ///< recruitment rate (person/day)
    double mu = 0.0;      ///< natural death rate (1/day)
    double beta = 0.0;    ///< ingestion rate (1/day)
    double kappa = 0.0;   ///< half-saturation constant (cell/ml)
    double omega = 0.0;   ///< immunity waning rate (1/day)
    double delta = 0.0;   ///< quarantine rate (1/day)
    double epsilon = 0.0; ///< recovery rate of quarantined (1/day)
    double alpha1 = 0.0;  ///< disease death rate, infectious (1/day)
    double alpha2 = 0.0;  ///< disease death rate, quarantined (1/day)
    double eta = 0.0;     ///< shedding rate (cell/ml/day/person)
    double d = 0.0;       ///< bacteria death rate (1/day)
};

/// Parameters that passed validate_params, with the composite outflow
/// rates a1 = delta+alpha1+mu, a2 = epsilon+alpha2+mu, a3 = omega+mu
/// precomputed since every equilibrium formula uses them.
struct ValidatedParams {
    double Lambda, mu, beta, kappa, omega, delta, epsilon, alpha1, alpha2, eta, d;
    double a1, a2, a3;
};

/// Recruitment rate from the initial population size: 24.4 * n0 / 365000.
double recruitment_from_population(double n0);

/// Checks positivity invariants (Lambda, mu, beta, kappa, eta, d strictly
/// positive; omega, delta, epsilon, alpha1, alpha2 nonnegative) and returns
/// the parameters with composites attached.
///
/// Throws NonPositiveRequiredRate or NegativeOptionalRate naming the field.
ValidatedParams validate_params(const ModelParams& raw);

} // namespace siqrb
