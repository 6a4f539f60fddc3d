#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "siqrb/integrator.hpp"
#include "siqrb/params.hpp"
#include "siqrb/state.hpp"

namespace siqrb {

/// A parsed scenario file: model parameters, initial state, horizon and
/// (optionally) the control-problem settings.
struct ScenarioConfig {
    ModelParams params; ///< Lambda already resolved from n0 when given that way
    State initial_state;
    TimeGrid horizon;
    std::optional<double> ocp_W;
    double ocp_tolerance = 1e-4;
    double ocp_relaxation = 0.5;
    int ocp_max_iterations = 500;
    std::string label;
};

/// Observed infectious counts at strictly increasing day offsets.
struct ObservationSeries {
    std::vector<double> times;
    std::vector<double> infectious;
};

/// Reads a `key = value` scenario file (# starts a comment). Required keys:
/// beta, kappa, mu, omega, delta, epsilon, alpha1, alpha2, eta, d,
/// S0, I0, Q0, R0_state, B0, t_final, n_steps, and exactly one of
/// {lambda, n0}. Optional: label, ocp.W, ocp.tolerance, ocp.relaxation,
/// ocp.max_iterations. Parameters are validated before returning.
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Reads a `day,infectious` CSV (# comment lines allowed).
ObservationSeries load_observations(const std::filesystem::path& path);

} // namespace siqrb
