#pragma once

#include <cmath>

namespace siqrb {

/// One point (S, I, Q, R, B) of the five-dimensional phase space:
/// susceptible, infectious, quarantined and recovered individuals,
/// plus the bacterial concentration in cell/ml.
struct State {
    double S = 0.0;
    double I = 0.0;
    double Q = 0.0;
    double R = 0.0;
    double B = 0.0;
};

inline State operator+(const State& a, const State& b)
{
    return {a.S + b.S, a.I + b.I, a.Q + b.Q, a.R + b.R, a.B + b.B};
}

inline State operator-(const State& a, const State& b)
{
    return {a.S - b.S, a.I - b.I, a.Q - b.Q, a.R - b.R, a.B - b.B};
}

inline State operator*(double c, const State& a)
{
    return {c * a.S, c * a.I, c * a.Q, c * a.R, c * a.B};
}

inline bool all_finite(const State& x)
{
    return std::isfinite(x.S) && std::isfinite(x.I) && std::isfinite(x.Q) && std::isfinite(x.R) &&
           std::isfinite(x.B);
}

inline double max_abs(const State& x)
{
    double m = std::abs(x.S);
    m = std::max(m, std::abs(x.I));
    m = std::max(m, std::abs(x.Q));
    m = std::max(m, std::abs(x.R));
    m = std::max(m, std::abs(x.B));
    return m;
}

/// Costate vector (lambda1..lambda5) of the adjoint system, ordered as the state.
struct AdjointState {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda3 = 0.0;
    double lambda4 = 0.0;
    double lambda5 = 0.0;
};

inline AdjointState operator+(const AdjointState& a, const AdjointState& b)
{
    return {a.lambda1 + b.lambda1, a.lambda2 + b.lambda2, a.lambda3 + b.lambda3,
            a.lambda4 + b.lambda4, a.lambda5 + b.lambda5};
}

inline AdjointState operator-(const AdjointState& a, const AdjointState& b)
{
    return {a.lambda1 - b.lambda1, a.lambda2 - b.lambda2, a.lambda3 - b.lambda3,
            a.lambda4 - b.lambda4, a.lambda5 - b.lambda5};
}

inline AdjointState operator*(double c, const AdjointState& a)
{
    return {c * a.lambda1, c * a.lambda2, c * a.lambda3, c * a.lambda4, c * a.lambda5};
}

inline bool all_finite(const AdjointState& l)
{
    return std::isfinite(l.lambda1) && std::isfinite(l.lambda2) && std::isfinite(l.lambda3) &&
           std::isfinite(l.lambda4) && std::isfinite(l.lambda5);
}

inline double max_abs(const AdjointState& l)
{
    double m = std::abs(l.lambda1);
    m = std::max(m, std::abs(l.lambda2));
    m = std::max(m, std::abs(l.lambda3));
    m = std::max(m, std::abs(l.lambda4));
    m = std::max(m, std::abs(l.lambda5));
    return m;
}

// Scalar "states" are used by the integrator tests.
inline bool all_finite(double x)
{
    return std::isfinite(x);
}

inline double max_abs(double x)
{
    return std::abs(x);
}

} // namespace siqrb
