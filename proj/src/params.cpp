#include "siqrb/params.hpp"

#include <cmath>

#include "siqrb/errors.hpp"

namespace siqrb {

double recruitment_from_population(double n0)
{
    return 24.4 * n0 / 365000.0;
}

namespace {

void require_positive(double value, const char* name)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw NonPositiveRequiredRate(name);
    }
}

void require_nonnegative(double value, const char* name)
{
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw NegativeOptionalRate(name);
    }
}

} // namespace

ValidatedParams validate_params(const ModelParams& raw)
{
    require_positive(raw.Lambda, "Lambda");
    require_positive(raw.mu, "mu");
    require_positive(raw.beta, "beta");
    require_positive(raw.kappa, "kappa");
    require_positive(raw.eta, "eta");
    require_positive(raw.d, "d");
    require_nonnegative(raw.omega, "omega");
    require_nonnegative(raw.delta, "delta");
    require_nonnegative(raw.epsilon, "epsilon");
    require_nonnegative(raw.alpha1, "alpha1");
    require_nonnegative(raw.alpha2, "alpha2");

    ValidatedParams p{raw.Lambda, raw.mu,     raw.beta,   raw.kappa, raw.omega, raw.delta,
                      raw.epsilon, raw.alpha1, raw.alpha2, raw.eta,   raw.d,
                      0.0,         0.0,        0.0};
    p.a1 = raw.delta + raw.alpha1 + raw.mu;
    p.a2 = raw.epsilon + raw.alpha2 + raw.mu;
    p.a3 = raw.omega + raw.mu;
    return p;
}

} // namespace siqrb
