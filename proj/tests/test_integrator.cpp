#include <doctest.h>

#include <array>
#include <cmath>
#include <cstring>

#include "siqrb/integrator.hpp"
#include "siqrb/model.hpp"
#include "test_support.hpp"

using namespace siqrb;
using namespace testutil;

namespace {

// 3-component toy state for the duality check
struct Vec3 {
    double a = 0.0, b = 0.0, c = 0.0;
};
Vec3 operator+(const Vec3& x, const Vec3& y)
{
    return {x.a + y.a, x.b + y.b, x.c + y.c};
}
Vec3 operator-(const Vec3& x, const Vec3& y)
{
    return {x.a - y.a, x.b - y.b, x.c - y.c};
}
Vec3 operator*(double s, const Vec3& x)
{
    return {s * x.a, s * x.b, s * x.c};
}
bool all_finite(const Vec3& x)
{
    return std::isfinite(x.a) && std::isfinite(x.b) && std::isfinite(x.c);
}

} // namespace

TEST_CASE("TimeGrid validates its invariants")
{
    CHECK_THROWS_AS(TimeGrid(1.0, 1.0, 10), DomainError);
    CHECK_THROWS_AS(TimeGrid(0.0, 10.0, 0), DomainError);
    const TimeGrid grid(0.0, 182.0, 3640);
    CHECK(grid.h() == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(grid.n_points() == 3641);
    CHECK(grid.time(0) == 0.0);
    CHECK(grid.time(3640) == doctest::Approx(182.0).epsilon(1e-15));
}

TEST_CASE("a fixed point stays fixed: constant trajectory from the DFE")
{
    const ValidatedParams p = validate_params(haiti_params());
    const State dfe{p.Lambda / p.mu, 0.0, 0.0, 0.0, 0.0};
    const TimeGrid grid(0.0, 50.0, 1000);
    const Trajectory traj =
        integrate_forward([&p](double, const State& x) { return uncontrolled_rhs(x, p); }, dfe, grid);
    CHECK(traj.states.front().S == dfe.S);
    double worst = 0.0;
    for (const State& x : traj.states) {
        worst = std::max(worst, max_abs(x - dfe) / max_abs(dfe));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("exponential decay: x' = -x reproduces exp(-1) at h = 0.01")
{
    const TimeGrid grid(0.0, 1.0, 100);
    const auto traj = integrate_forward([](double, double x) { return -x; }, 1.0, grid);
    CHECK(std::abs(traj.states.back() - std::exp(-1.0)) < 1e-8);
}

TEST_CASE("observed convergence order on x' = -x is 4.0 +- 0.2")
{
    const auto error_at = [](int n) {
        const TimeGrid grid(0.0, 1.0, n);
        const auto traj = integrate_forward([](double, double x) { return -x; }, 1.0, grid);
        return std::abs(traj.states.back() - std::exp(-1.0));
    };
    const double e1 = error_at(10);
    const double e2 = error_at(20);
    const double e3 = error_at(40);
    const double order12 = std::log2(e1 / e2);
    const double order23 = std::log2(e2 / e3);
    CHECK(order12 == doctest::Approx(4.0).epsilon(0.05));
    CHECK(order23 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("grid refinement: outbreak terminal state agrees between h and h/2")
{
    const ValidatedParams p = validate_params(haiti_params());
    const auto rhs = [&p](double, const State& x) { return uncontrolled_rhs(x, p); };
    const State x0 = haiti_initial_state();
    const Trajectory coarse = integrate_forward(rhs, x0, TimeGrid(0.0, 182.0, 3640));
    const Trajectory fine = integrate_forward(rhs, x0, TimeGrid(0.0, 182.0, 7280));
    const double dev = max_abs(coarse.states.back() - fine.states.back()) /
                       max_abs(fine.states.back());
    CHECK(dev < 1e-6);
}

TEST_CASE("integrate_forward throws NonFiniteState on blow-up")
{
    const TimeGrid grid(0.0, 2.0, 200); // x' = x^2 from 1 escapes at t = 1
    CHECK_THROWS_AS(integrate_forward([](double, double x) { return x * x; }, 1.0, grid),
                    NonFiniteState);
}

TEST_CASE("clamped integration records the undershoot and floors at zero")
{
    // S decays linearly through zero; the clamp must engage
    const auto rhs = [](double, const State&) { return State{-1.0, 0.0, 0.0, 0.0, 0.0}; };
    const TimeGrid grid(0.0, 1.0, 10);
    const Trajectory traj = integrate_forward_clamped(rhs, State{0.05, 0.0, 0.0, 0.0, 0.0}, grid);
    CHECK(traj.worst_undershoot < 0.0);
    CHECK(traj.states.back().S == 0.0);
    for (const State& x : traj.states) {
        CHECK(x.S >= 0.0);
    }
}

TEST_CASE("integrate_backward: terminal condition is stored exactly")
{
    const TimeGrid grid(0.0, 4.0, 400);
    const auto traj = integrate_backward([](double, double x) { return -0.7 * x; }, 2.5, grid);
    CHECK(traj.states.back() == 2.5);
    // backward solution of x' = -0.7x with x(T) = 2.5 is x(t) = 2.5 exp(0.7 (T - t))
    const double expected_at_0 = 2.5 * std::exp(0.7 * 4.0);
    CHECK(traj.states.front() == doctest::Approx(expected_at_0).epsilon(1e-8));
}

TEST_CASE("forward-backward duality holds on a 3-state linear system")
{
    // x' = A x, lambda' = -A^T lambda  =>  <lambda, x> is conserved
    const double A[3][3] = {{-0.3, 0.1, 0.0}, {0.2, -0.4, 0.05}, {0.0, 0.1, -0.2}};
    const auto fwd = [&](double, const Vec3& x) {
        return Vec3{A[0][0] * x.a + A[0][1] * x.b + A[0][2] * x.c,
                    A[1][0] * x.a + A[1][1] * x.b + A[1][2] * x.c,
                    A[2][0] * x.a + A[2][1] * x.b + A[2][2] * x.c};
    };
    const auto adj = [&](double, const Vec3& l) {
        return Vec3{-(A[0][0] * l.a + A[1][0] * l.b + A[2][0] * l.c),
                    -(A[0][1] * l.a + A[1][1] * l.b + A[2][1] * l.c),
                    -(A[0][2] * l.a + A[1][2] * l.b + A[2][2] * l.c)};
    };
    const TimeGrid grid(0.0, 10.0, 2000);
    const auto x_traj = integrate_forward(fwd, Vec3{1.0, 2.0, 3.0}, grid);
    const auto l_traj = integrate_backward(adj, Vec3{0.3, -1.0, 2.0}, grid);
    const auto pairing = [](const Vec3& l, const Vec3& x) {
        return l.a * x.a + l.b * x.b + l.c * x.c;
    };
    const double at_start = pairing(l_traj.states.front(), x_traj.states.front());
    const double at_end = pairing(l_traj.states.back(), x_traj.states.back());
    CHECK(at_start == doctest::Approx(at_end).epsilon(1e-6));
}

TEST_CASE("integrate_adjoint: zero sources and zero terminal data give the zero costate")
{
    const ValidatedParams p = validate_params(haiti_params());
    const TimeGrid grid(0.0, 20.0, 400);
    const Trajectory traj = integrate_forward_clamped(
        [&p](double, const State& x) { return uncontrolled_rhs(x, p); }, haiti_initial_state(),
        grid);
    const ControlSignal u = ControlSignal::constant(0.5, grid);
    // adjoint field with the two unit cost sources removed: homogeneous linear system
    const auto homogeneous = [&p](const AdjointState& l, const State& x, double uu) {
        AdjointState dl = adjoint_rhs(l, x, uu, p);
        dl.lambda2 += 1.0;
        dl.lambda5 += 1.0;
        return dl;
    };
    const AdjointTrajectory adj = integrate_adjoint(homogeneous, AdjointState{}, traj, u);
    for (const AdjointState& l : adj.states) {
        CHECK(max_abs(l) == 0.0);
    }
}

TEST_CASE("integrate_adjoint: transversality holds exactly and grids must match")
{
    const ValidatedParams p = validate_params(haiti_params());
    const TimeGrid grid(0.0, 20.0, 400);
    const Trajectory traj = integrate_forward_clamped(
        [&p](double, const State& x) { return uncontrolled_rhs(x, p); }, haiti_initial_state(),
        grid);
    const ControlSignal u = ControlSignal::constant(0.3, grid);
    const auto rhs = [&p](const AdjointState& l, const State& x, double uu) {
        return adjoint_rhs(l, x, uu, p);
    };
    const AdjointTrajectory adj = integrate_adjoint(rhs, AdjointState{}, traj, u);
    CHECK(adj.states.back().lambda1 == 0.0);
    CHECK(adj.states.back().lambda2 == 0.0);
    CHECK(adj.states.back().lambda3 == 0.0);
    CHECK(adj.states.back().lambda4 == 0.0);
    CHECK(adj.states.back().lambda5 == 0.0);

    const ControlSignal other = ControlSignal::constant(0.3, TimeGrid(0.0, 20.0, 500));
    CHECK_THROWS_AS(integrate_adjoint(rhs, AdjointState{}, traj, other), GridMismatch);
}

TEST_CASE("integrate_adjoint: costate at t0 agrees between h and h/2")
{
    const ValidatedParams p = validate_params(haiti_params());
    const auto rhs = [&p](const AdjointState& l, const State& x, double uu) {
        return adjoint_rhs(l, x, uu, p);
    };
    const auto costate_at_0 = [&](int n) {
        const TimeGrid grid(0.0, 182.0, n);
        const Trajectory traj = integrate_forward_clamped(
            [&p](double, const State& x) { return uncontrolled_rhs(x, p); },
            haiti_initial_state(), grid);
        const ControlSignal u = ControlSignal::constant(1.0, grid);
        return integrate_adjoint(rhs, AdjointState{}, traj, u).states.front();
    };
    const AdjointState coarse = costate_at_0(3640);
    const AdjointState fine = costate_at_0(7280);
    CHECK(max_abs(coarse - fine) / max_abs(fine) < 1e-5);
}

TEST_CASE("total_cost: constant and polynomial integrands")
{
    // I = 1, B = 0, u = 0 over [0, 10] -> J = 10
    {
        const TimeGrid grid(0.0, 10.0, 50);
        Trajectory traj{grid, std::vector<State>(51, State{0.0, 1.0, 0.0, 0.0, 0.0}), 0.0};
        const ControlSignal u = ControlSignal::constant(0.0, grid);
        CHECK(std::abs(total_cost(traj, u, 2000.0) - 10.0) < 1e-12);
    }
    // u = 1, I = B = 0, W = 2000, T = 1 -> J = (W/2) T = 1000
    {
        const TimeGrid grid(0.0, 1.0, 40);
        Trajectory traj{grid, std::vector<State>(41), 0.0};
        const ControlSignal u = ControlSignal::constant(1.0, grid);
        CHECK(std::abs(total_cost(traj, u, 2000.0) - 1000.0) < 1e-12);
    }
    // I(t) = t^2 over [0, 1] -> 1/3; Simpson integrates quadratics exactly
    {
        const TimeGrid grid(0.0, 1.0, 100);
        Trajectory traj{grid, {}, 0.0};
        for (int i = 0; i <= 100; ++i) {
            const double t = grid.time(i);
            traj.states.push_back(State{0.0, t * t, 0.0, 0.0, 0.0});
        }
        const ControlSignal u = ControlSignal::constant(0.0, grid);
        CHECK(std::abs(total_cost(traj, u, 1.0) - 1.0 / 3.0) < 1e-10);
    }
    // odd interval count falls back to a trapezoid on the final segment
    {
        const TimeGrid grid(0.0, 1.0, 3);
        Trajectory traj{grid, std::vector<State>(4, State{0.0, 2.0, 0.0, 0.0, 0.0}), 0.0};
        const ControlSignal u = ControlSignal::constant(0.0, grid);
        CHECK(std::abs(total_cost(traj, u, 1.0) - 2.0) < 1e-12);
    }
    // grids must match
    {
        const TimeGrid grid(0.0, 1.0, 10);
        Trajectory traj{grid, std::vector<State>(11), 0.0};
        const ControlSignal u = ControlSignal::constant(0.0, TimeGrid(0.0, 1.0, 20));
        CHECK_THROWS_AS(total_cost(traj, u, 1.0), GridMismatch);
    }
}

TEST_CASE("repeated integration is bit-identical")
{
    const ValidatedParams p = validate_params(haiti_params());
    const auto rhs = [&p](double, const State& x) { return uncontrolled_rhs(x, p); };
    const TimeGrid grid(0.0, 182.0, 3640);
    const Trajectory first = integrate_forward(rhs, haiti_initial_state(), grid);
    const Trajectory second = integrate_forward(rhs, haiti_initial_state(), grid);
    REQUIRE(first.states.size() == second.states.size());
    CHECK(std::memcmp(first.states.data(), second.states.data(),
                      first.states.size() * sizeof(State)) == 0);
}

TEST_CASE("trajectory interpolation is exact at nodes and linear between them")
{
    const TimeGrid grid(0.0, 1.0, 4);
    Trajectory traj{grid, {}, 0.0};
    for (int i = 0; i <= 4; ++i) {
        traj.states.push_back(State{static_cast<double>(i), 0.0, 0.0, 0.0, 0.0});
    }
    CHECK(traj.at(0.5).S == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(traj.at(0.375).S == doctest::Approx(1.5).epsilon(1e-14));
    const ControlSignal u{grid, {0.0, 1.0, 0.0, 1.0, 0.0}};
    CHECK(u.at(0.125) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(u.at(0.25) == doctest::Approx(1.0).epsilon(1e-12));
}
