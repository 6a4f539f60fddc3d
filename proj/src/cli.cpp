#include "siqrb/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "siqrb/analysis.hpp"
#include "siqrb/errors.hpp"
#include "siqrb/integrator.hpp"
#include "siqrb/model.hpp"
#include "siqrb/ocp.hpp"
#include "siqrb/scenario.hpp"
#include "siqrb/svg_plot.hpp"
#include "siqrb/trajectory_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace siqrb::cli {

namespace {

/// Wrong invocation rather than bad data; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v)
{
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

struct Report {
    bool quiet = false;
    bool as_json = false;
    std::ostream& out;
    json doc = json::object();
    CommandOutcome outcome;

    explicit Report(std::ostream& stream) : out(stream) {}

    void line(const std::string& text)
    {
        outcome.summary.push_back(text);
        if (!quiet && !as_json) {
            out << text << '\n';
        }
    }

    void artifact(const fs::path& path)
    {
        outcome.artifacts.push_back(path.string());
        line("wrote " + path.string());
    }

    void finish()
    {
        if (as_json) {
            doc["artifacts"] = outcome.artifacts;
            out << doc.dump(2) << '\n';
        }
    }
};

struct GlobalFlags {
    std::string out_dir;
    double step = 0.0;
    bool json_output = false;
    bool quiet = false;
};

fs::path resolve_out_dir(const GlobalFlags& flags, const ScenarioConfig& scenario,
                         const fs::path& scenario_path)
{
    if (!flags.out_dir.empty()) {
        return flags.out_dir;
    }
    const std::string label =
        scenario.label.empty() ? scenario_path.stem().string() : scenario.label;
    return fs::path("out") / label;
}

TimeGrid resolve_grid(const GlobalFlags& flags, const ScenarioConfig& scenario)
{
    if (flags.step <= 0.0) {
        return scenario.horizon;
    }
    const double span = scenario.horizon.t_final - scenario.horizon.t0;
    const int n = std::max(1, static_cast<int>(std::llround(span / flags.step)));
    return TimeGrid(scenario.horizon.t0, scenario.horizon.t_final, n);
}

const char* stability_name(Stability s)
{
    switch (s) {
    case Stability::locally_asymptotically_stable: return "locally asymptotically stable";
    case Stability::unstable: return "unstable";
    case Stability::critical: return "critical";
    }
    return "?";
}

json state_to_json(const State& x)
{
    return json{{"S", x.S}, {"I", x.I}, {"Q", x.Q}, {"R", x.R}, {"B", x.B}};
}

void plot_compartment(const Trajectory& traj, double State::* member, const std::string& name,
                      const std::string& unit, const fs::path& path)
{
    PlotSeries series;
    series.label = name;
    series.x.reserve(traj.states.size());
    series.y.reserve(traj.states.size());
    for (int i = 0; i < traj.grid.n_points(); ++i) {
        series.x.push_back(traj.grid.time(i));
        series.y.push_back(traj.states[static_cast<std::size_t>(i)].*member);
    }
    PlotSpec spec;
    spec.title = name + " over time";
    spec.x_label = "time (day)";
    spec.y_label = unit;
    spec.series.push_back(std::move(series));
    render_plot(spec, path);
}

// ---------------------------------------------------------------- analyze

void run_analyze(const fs::path& scenario_path, bool with_bifurcation, Report& report)
{
    const ScenarioConfig scenario = load_scenario(scenario_path);
    const ValidatedParams p = validate_params(scenario.params);

    report.line("scenario: " + (scenario.label.empty() ? scenario_path.stem().string()
                                                       : scenario.label));
    const double r0 = basic_reproduction_number(p);
    report.line("R0 = " + fmt(r0));
    report.doc["label"] = scenario.label;
    report.doc["R0"] = r0;

    const EquilibriumReport dfe = disease_free_equilibrium(p);
    report.line("DFE: S0 = " + fmt(dfe.state.S) + ", I0 = Q0 = R0 = B0 = 0");
    report.doc["dfe"] = {{"state", state_to_json(dfe.state)}, {"residual", dfe.residual_norm}};

    const StabilityVerdict verdict = dfe_stability(p);
    report.line(std::string("DFE stability: ") + stability_name(verdict.classification) +
                " (routh margin = " + fmt(verdict.routh_margin) + ")");
    report.doc["dfe_stability"] = {{"classification", stability_name(verdict.classification)},
                                   {"routh_margin", verdict.routh_margin}};

    if (const auto endemic = endemic_equilibrium(p)) {
        const State& e = endemic->state;
        report.line("endemic equilibrium: S* = " + fmt(e.S) + ", I* = " + fmt(e.I) +
                    ", Q* = " + fmt(e.Q) + ", R* = " + fmt(e.R) + ", B* = " + fmt(e.B));
        report.line("  lambda* = " + fmt(endemic->lambda_star) +
                    ", residual = " + fmt(endemic->residual_norm));
        report.doc["endemic"] = {{"exists", true},
                                 {"state", state_to_json(e)},
                                 {"lambda_star", endemic->lambda_star},
                                 {"residual", endemic->residual_norm}};
    } else {
        report.line("endemic equilibrium: none (R0 <= 1)");
        report.doc["endemic"] = {{"exists", false}};
    }

    if (with_bifurcation) {
        const BifurcationReport bif = bifurcation_coefficients(p);
        report.line("bifurcation at beta* = " + fmt(bif.beta_star) + ": a = " + fmt(bif.a) +
                    ", b = " + fmt(bif.b));
        report.doc["bifurcation"] = {{"beta_star", bif.beta_star}, {"a", bif.a}, {"b", bif.b}};
    }
}

// --------------------------------------------------------------- simulate

void run_simulate(const fs::path& scenario_path, std::optional<double> control_constant,
                  bool with_plots, const GlobalFlags& flags, Report& report)
{
    const ScenarioConfig scenario = load_scenario(scenario_path);
    const ValidatedParams p = validate_params(scenario.params);
    const TimeGrid grid = resolve_grid(flags, scenario);

    Trajectory traj;
    std::optional<ControlSignal> control;
    if (control_constant) {
        control = ControlSignal::constant(*control_constant, grid);
        traj = integrate_controlled(p, scenario.initial_state, *control);
    } else {
        traj = integrate_forward_clamped(
            [&p](double, const State& x) { return uncontrolled_rhs(x, p); },
            scenario.initial_state, grid);
    }

    report.line("grid: t in [" + fmt(grid.t0) + ", " + fmt(grid.t_final) + "], h = " +
                fmt(grid.h()) + ", " + std::to_string(grid.n_points()) + " points");
    const State& xf = traj.states.back();
    report.line("terminal state: S = " + fmt(xf.S) + ", I = " + fmt(xf.I) + ", Q = " + fmt(xf.Q) +
                ", R = " + fmt(xf.R) + ", B = " + fmt(xf.B));
    report.doc["grid"] = {{"t0", grid.t0}, {"t_final", grid.t_final}, {"n_steps", grid.n_steps}};
    report.doc["terminal_state"] = state_to_json(xf);
    if (control_constant) {
        report.doc["control_constant"] = *control_constant;
    }
    if (traj.worst_undershoot < 0.0) {
        report.line("worst pre-clamp undershoot: " + fmt(traj.worst_undershoot));
    }
    report.doc["worst_undershoot"] = traj.worst_undershoot;

    const fs::path out_dir = resolve_out_dir(flags, scenario, scenario_path);
    fs::create_directories(out_dir);
    const fs::path csv_path = out_dir / "trajectory.csv";
    write_trajectory(traj, control ? &*control : nullptr, nullptr, csv_path);
    report.artifact(csv_path);

    if (with_plots) {
        const std::pair<double State::*, const char*> panels[] = {
            {&State::S, "S"}, {&State::I, "I"}, {&State::Q, "Q"}, {&State::R, "R"}, {&State::B, "B"}};
        for (const auto& [member, name] : panels) {
            const fs::path path = out_dir / (std::string(name) + ".svg");
            const bool is_bacteria = std::string(name) == "B";
            plot_compartment(traj, member, name,
                             is_bacteria ? "concentration (cell/ml)" : "individuals (person)",
                             path);
            report.artifact(path);
        }
    }
}

// --------------------------------------------------------------- optimize

void run_optimize(const fs::path& scenario_path, const GlobalFlags& flags, Report& report)
{
    const ScenarioConfig scenario = load_scenario(scenario_path);
    if (!scenario.ocp_W) {
        throw UsageError("optimize requires ocp.W in the scenario file");
    }
    OcpConfig config;
    config.params = validate_params(scenario.params);
    config.x0 = scenario.initial_state;
    config.W = *scenario.ocp_W;
    config.grid = resolve_grid(flags, scenario);
    config.sweep_tolerance = scenario.ocp_tolerance;
    config.max_iterations = scenario.ocp_max_iterations;
    config.relaxation = scenario.ocp_relaxation;

    const OcpSolution solution = forward_backward_sweep(config);

    // Last grid time at which the control sits at its maximum; the projected
    // value never equals 1.0 exactly after relaxation, hence the 0.999 gate.
    std::optional<double> t_s;
    for (int i = 0; i < config.grid.n_points(); ++i) {
        if (solution.control.values[static_cast<std::size_t>(i)] > 0.999) {
            t_s = config.grid.time(i);
        }
    }

    report.line("iterations: " + std::to_string(solution.iterations) +
                (solution.converged ? " (converged)" : " (NOT converged)"));
    report.line("t_s = " + (t_s ? fmt(*t_s) : std::string("none")));
    report.line("u(T) = " + fmt(solution.control.values.back()));
    report.line("I(T) = " + fmt(solution.state_traj.states.back().I));
    report.line("J = " + fmt(solution.cost));
    report.doc["iterations"] = solution.iterations;
    report.doc["converged"] = solution.converged;
    report.doc["t_s"] = t_s ? json(*t_s) : json(nullptr);
    report.doc["u_terminal"] = solution.control.values.back();
    report.doc["I_terminal"] = solution.state_traj.states.back().I;
    report.doc["J"] = solution.cost;
    report.doc["W"] = config.W;

    const fs::path out_dir = resolve_out_dir(flags, scenario, scenario_path);
    fs::create_directories(out_dir);

    const fs::path solution_path = out_dir / "solution.csv";
    write_trajectory(solution.state_traj, &solution.control, &solution.adjoint_traj,
                     solution_path);
    report.artifact(solution_path);

    const fs::path history_path = out_dir / "history.csv";
    {
        std::ostringstream text;
        text << "iteration,cost,control_change\n";
        for (std::size_t i = 0; i < solution.history.size(); ++i) {
            text << (i + 1) << ',' << format_double(solution.history[i].cost) << ','
                 << format_double(solution.history[i].control_change) << '\n';
        }
        std::ofstream file(history_path, std::ios::binary);
        if (!file) {
            throw IoError("cannot open for writing: " + history_path.string());
        }
        file << text.str();
    }
    report.artifact(history_path);

    PlotSeries u_series;
    u_series.label = "u";
    for (int i = 0; i < config.grid.n_points(); ++i) {
        u_series.x.push_back(config.grid.time(i));
        u_series.y.push_back(solution.control.values[static_cast<std::size_t>(i)]);
    }
    PlotSpec u_spec;
    u_spec.title = "optimal quarantine fraction";
    u_spec.x_label = "time (day)";
    u_spec.y_label = "u";
    u_spec.series.push_back(std::move(u_series));
    const fs::path control_path = out_dir / "control.svg";
    render_plot(u_spec, control_path);
    report.artifact(control_path);

    const fs::path infectious_path = out_dir / "infectious.svg";
    plot_compartment(solution.state_traj, &State::I, "I", "individuals (person)", infectious_path);
    report.artifact(infectious_path);

    const fs::path bacteria_path = out_dir / "bacteria.svg";
    plot_compartment(solution.state_traj, &State::B, "B", "concentration (cell/ml)", bacteria_path);
    report.artifact(bacteria_path);

    if (!solution.converged) {
        report.outcome.exit_code = 1;
        report.line("error: sweep did not converge within " +
                    std::to_string(config.max_iterations) + " iterations");
    }
}

// ---------------------------------------------------------------- compare

void run_compare(const fs::path& scenario_path, const fs::path& observations_path,
                 const GlobalFlags& flags, Report& report)
{
    const ScenarioConfig scenario = load_scenario(scenario_path);
    const ObservationSeries observations = load_observations(observations_path);
    const ValidatedParams p = validate_params(scenario.params);
    const TimeGrid grid = resolve_grid(flags, scenario);

    if (observations.times.back() > grid.t_final) {
        throw Error("observation at day " + fmt(observations.times.back()) +
                    " lies beyond the scenario horizon t_final = " + fmt(grid.t_final));
    }

    const Trajectory traj = integrate_forward_clamped(
        [&p](double, const State& x) { return uncontrolled_rhs(x, p); }, scenario.initial_state,
        grid);

    double squared_sum = 0.0;
    double max_abs_dev = 0.0;
    for (std::size_t i = 0; i < observations.times.size(); ++i) {
        const double model = traj.at(observations.times[i]).I;
        const double dev = model - observations.infectious[i];
        squared_sum += dev * dev;
        max_abs_dev = std::max(max_abs_dev, std::abs(dev));
    }
    const double rmse = std::sqrt(squared_sum / static_cast<double>(observations.times.size()));

    report.line("observations: " + std::to_string(observations.times.size()) + " points, last day " +
                fmt(observations.times.back()));
    report.line("RMSE = " + fmt(rmse));
    report.line("max abs deviation = " + fmt(max_abs_dev));
    report.doc["n_observations"] = observations.times.size();
    report.doc["rmse"] = rmse;
    report.doc["max_abs_deviation"] = max_abs_dev;

    const fs::path out_dir = resolve_out_dir(flags, scenario, scenario_path);
    fs::create_directories(out_dir);

    PlotSeries model_series;
    model_series.label = "model";
    for (int i = 0; i < grid.n_points(); ++i) {
        model_series.x.push_back(grid.time(i));
        model_series.y.push_back(traj.states[static_cast<std::size_t>(i)].I);
    }
    PlotSeries observed_series;
    observed_series.label = "observed";
    observed_series.x = observations.times;
    observed_series.y = observations.infectious;
    observed_series.markers = true;

    PlotSpec spec;
    spec.title = "infectious: model vs observations";
    spec.x_label = "time (day)";
    spec.y_label = "individuals (person)";
    spec.series.push_back(std::move(model_series));
    spec.series.push_back(std::move(observed_series));
    const fs::path overlay_path = out_dir / "overlay.svg";
    render_plot(spec, overlay_path);
    report.artifact(overlay_path);
}

// ------------------------------------------------------------------ sweep

double* param_field(ModelParams& params, const std::string& name)
{
    if (name == "lambda") return &params.Lambda;
    if (name == "mu") return &params.mu;
    if (name == "beta") return &params.beta;
    if (name == "kappa") return &params.kappa;
    if (name == "omega") return &params.omega;
    if (name == "delta") return &params.delta;
    if (name == "epsilon") return &params.epsilon;
    if (name == "alpha1") return &params.alpha1;
    if (name == "alpha2") return &params.alpha2;
    if (name == "eta") return &params.eta;
    if (name == "d") return &params.d;
    return nullptr;
}

void run_sweep(const fs::path& scenario_path, const std::string& param_name, double from,
               double to, int steps, const GlobalFlags& flags, Report& report)
{
    const ScenarioConfig scenario = load_scenario(scenario_path);
    ModelParams params = scenario.params;
    double* field = param_field(params, param_name);
    if (field == nullptr) {
        throw UsageError("unknown parameter name '" + param_name + "'");
    }
    if (steps < 1) {
        throw UsageError("--steps must be at least 1");
    }

    std::ostringstream text;
    text << "value,R0,endemic_exists,dfe_stability\n";
    int endemic_count = 0;
    for (int i = 0; i < steps; ++i) {
        const double value =
            (steps == 1) ? from : from + (to - from) * static_cast<double>(i) / (steps - 1);
        *field = value;
        const ValidatedParams p = validate_params(params);
        const double r0 = basic_reproduction_number(p);
        const bool endemic = endemic_equilibrium(p).has_value();
        endemic_count += endemic ? 1 : 0;
        const StabilityVerdict verdict = dfe_stability(p);
        text << format_double(value) << ',' << format_double(r0) << ',' << (endemic ? 1 : 0) << ','
             << stability_name(verdict.classification) << '\n';
        report.doc["rows"].push_back({{"value", value},
                                      {"R0", r0},
                                      {"endemic_exists", endemic},
                                      {"dfe_stability", stability_name(verdict.classification)}});
    }

    report.line("sweep " + param_name + " over [" + fmt(from) + ", " + fmt(to) + "], " +
                std::to_string(steps) + " points; endemic at " + std::to_string(endemic_count) +
                " of them");
    report.doc["param"] = param_name;
    report.doc["from"] = from;
    report.doc["to"] = to;
    report.doc["steps"] = steps;
    report.doc["endemic_count"] = endemic_count;

    const fs::path out_dir = resolve_out_dir(flags, scenario, scenario_path);
    fs::create_directories(out_dir);
    const fs::path csv_path = out_dir / "sweep.csv";
    std::ofstream file(csv_path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open for writing: " + csv_path.string());
    }
    file << text.str();
    file.close();
    report.artifact(csv_path);
}

} // namespace

CommandOutcome run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"SIQRB cholera model: analysis, simulation and quarantine optimal control"};
    app.name("siqrb");
    app.fallthrough();
    app.require_subcommand(1);

    GlobalFlags flags;
    app.add_option("--out", flags.out_dir, "output directory (default out/<label>)");
    app.add_option("--step", flags.step, "override the grid step h (day)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--json", flags.json_output, "emit a JSON report on stdout");
    app.add_flag("--quiet", flags.quiet, "suppress the text summary");

    std::string scenario_path;
    std::string observations_path;
    bool with_bifurcation = false;
    bool with_plots = false;
    std::optional<double> control_constant;
    std::string sweep_param;
    double sweep_from = 0.0;
    double sweep_to = 0.0;
    int sweep_steps = 0;

    CLI::App* analyze = app.add_subcommand("analyze", "R0, equilibria and stability");
    analyze->add_option("scenario", scenario_path, "scenario file")->required();
    analyze->add_flag("--bifurcation", with_bifurcation, "also report the coefficients a and b");

    CLI::App* simulate = app.add_subcommand("simulate", "integrate the model over the horizon");
    simulate->add_option("scenario", scenario_path, "scenario file")->required();
    simulate->add_flag("--plot", with_plots, "write one SVG per compartment");
    simulate
        ->add_option("--control-constant", control_constant,
                     "integrate the controlled system with this constant u")
        ->check(CLI::Range(0.0, 1.0));

    CLI::App* optimize = app.add_subcommand("optimize", "solve the quarantine control problem");
    optimize->add_option("scenario", scenario_path, "scenario file (must set ocp.W)")->required();

    CLI::App* compare = app.add_subcommand("compare", "overlay the model on observed counts");
    compare->add_option("scenario", scenario_path, "scenario file")->required();
    compare->add_option("observations", observations_path, "CSV with day,infectious")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "tabulate R0 and equilibria over a parameter range");
    sweep->add_option("scenario", scenario_path, "scenario file")->required();
    sweep->add_option("--param", sweep_param, "parameter to vary")->required();
    sweep->add_option("--from", sweep_from, "first value")->required();
    sweep->add_option("--to", sweep_to, "last value")->required();
    sweep->add_option("--steps", sweep_steps, "number of points")->required();

    std::vector<const char*> argv;
    argv.push_back("siqrb");
    for (const auto& arg : args) {
        argv.push_back(arg.c_str());
    }

    Report report(out);
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        report.quiet = flags.quiet;
        report.as_json = flags.json_output;

        if (analyze->parsed()) {
            run_analyze(scenario_path, with_bifurcation, report);
        } else if (simulate->parsed()) {
            run_simulate(scenario_path, control_constant, with_plots, flags, report);
        } else if (optimize->parsed()) {
            run_optimize(scenario_path, flags, report);
        } else if (compare->parsed()) {
            run_compare(scenario_path, observations_path, flags, report);
        } else if (sweep->parsed()) {
            run_sweep(scenario_path, sweep_param, sweep_from, sweep_to, sweep_steps, flags,
                      report);
        }
        report.finish();
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        report.outcome.exit_code = 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        report.outcome.exit_code = 2;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        report.outcome.exit_code = 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        report.outcome.exit_code = 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        report.outcome.exit_code = 1;
    }
    return report.outcome;
}

} // namespace siqrb::cli
