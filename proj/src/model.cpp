#include "siqrb/model.hpp"

#include <string>

#include "siqrb/errors.hpp"

namespace siqrb {

namespace {

void require_admissible(double u)
{
    if (!(u >= 0.0 && u <= 1.0)) {
        throw ControlOutOfRange("control u = " + std::to_string(u) + " outside [0, 1]");
    }
}

} // namespace

double force_of_infection(double B, const ValidatedParams& p)
{
    if (!(B >= 0.0)) {
        throw DomainError("force_of_infection: B must be nonnegative");
    }
    return p.beta * B / (p.kappa + B);
}

State uncontrolled_rhs(const State& x, const ValidatedParams& p)
{
    const double foi = force_of_infection(x.B, p);
    State dx;
    dx.S = p.Lambda - foi * x.S + p.omega * x.R - p.mu * x.S;
    dx.I = foi * x.S - p.a1 * x.I;
    dx.Q = p.delta * x.I - p.a2 * x.Q;
    dx.R = p.epsilon * x.Q - p.a3 * x.R;
    dx.B = p.eta * x.I - p.d * x.B;
    return dx;
}

State controlled_rhs(const State& x, double u, const ValidatedParams& p)
{
    require_admissible(u);
    const double foi = force_of_infection(x.B, p);
    State dx;
    dx.S = p.Lambda - foi * x.S + p.omega * x.R - p.mu * x.S;
    dx.I = foi * x.S - (p.delta * u + p.alpha1 + p.mu) * x.I;
    dx.Q = p.delta * u * x.I - p.a2 * x.Q;
    dx.R = p.epsilon * x.Q - p.a3 * x.R;
    dx.B = p.eta * x.I - p.d * x.B;
    return dx;
}

AdjointState adjoint_rhs(const AdjointState& l, const State& x, double u, const ValidatedParams& p)
{
    require_admissible(u);
    if (!(x.B >= 0.0)) {
        throw DomainError("adjoint_rhs: B must be nonnegative");
    }
    const double foi = p.beta * x.B / (p.kappa + x.B);
    const double dfoi_dB = p.beta * p.kappa / ((p.kappa + x.B) * (p.kappa + x.B));
    AdjointState dl;
    dl.lambda1 = l.lambda1 * (foi + p.mu) - l.lambda2 * foi;
    dl.lambda2 = -1.0 + l.lambda2 * (u * p.delta + p.alpha1 + p.mu) - l.lambda3 * u * p.delta -
                 l.lambda5 * p.eta;
    dl.lambda3 = l.lambda3 * p.a2 - l.lambda4 * p.epsilon;
    dl.lambda4 = -l.lambda1 * p.omega + l.lambda4 * p.a3;
    dl.lambda5 = -1.0 + l.lambda1 * dfoi_dB * x.S - l.lambda2 * dfoi_dB * x.S + l.lambda5 * p.d;
    return dl;
}

double running_cost(const State& x, double u, double W)
{
    return x.I + x.B + 0.5 * W * u * u;
}

double hamiltonian(const State& x, double u, const AdjointState& l, double W,
                   const ValidatedParams& p)
{
    if (!(W > 0.0)) {
        throw NonPositiveWeight("hamiltonian: W must be strictly positive");
    }
    const State f = controlled_rhs(x, u, p);
    return running_cost(x, u, W) + l.lambda1 * f.S + l.lambda2 * f.I + l.lambda3 * f.Q +
           l.lambda4 * f.R + l.lambda5 * f.B;
}

} // namespace siqrb
