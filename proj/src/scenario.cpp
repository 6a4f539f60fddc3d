#include "siqrb/scenario.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "siqrb/errors.hpp"

namespace siqrb {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& text, const std::string& where)
{
    const std::string t = trim(text);
    const char* begin = t.data();
    const char* end = begin + t.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || t.empty()) {
        throw ParseError(where + ": not a number: '" + t + "'");
    }
    return value;
}

struct KeyValue {
    std::string value;
    int line = 0;
    bool used = false;
};

} // namespace

ScenarioConfig load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open scenario file: " + path.string());
    }

    std::map<std::string, KeyValue> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string stripped = trim(line);
        if (stripped.empty()) {
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ParseError(path.filename().string() + ":" + std::to_string(line_no) +
                             ": expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ParseError(path.filename().string() + ":" + std::to_string(line_no) +
                             ": expected 'key = value'");
        }
        if (entries.count(key) != 0) {
            throw ParseError(path.filename().string() + ":" + std::to_string(line_no) +
                             ": duplicate key '" + key + "'");
        }
        entries[key] = KeyValue{value, line_no, false};
    }

    auto take = [&](const std::string& key) -> std::optional<std::string> {
        auto it = entries.find(key);
        if (it == entries.end()) {
            return std::nullopt;
        }
        it->second.used = true;
        return it->second.value;
    };
    auto require_number = [&](const std::string& key) {
        const auto text = take(key);
        if (!text) {
            throw ParseError(key + ": required");
        }
        return parse_number(*text, key);
    };

    ScenarioConfig config;
    config.params.beta = require_number("beta");
    config.params.kappa = require_number("kappa");
    config.params.mu = require_number("mu");
    config.params.omega = require_number("omega");
    config.params.delta = require_number("delta");
    config.params.epsilon = require_number("epsilon");
    config.params.alpha1 = require_number("alpha1");
    config.params.alpha2 = require_number("alpha2");
    config.params.eta = require_number("eta");
    config.params.d = require_number("d");

    const auto lambda_text = take("lambda");
    const auto n0_text = take("n0");
    if (lambda_text && n0_text) {
        throw ParseError("lambda and n0 are mutually exclusive; give exactly one");
    }
    if (lambda_text) {
        config.params.Lambda = parse_number(*lambda_text, "lambda");
    } else if (n0_text) {
        config.params.Lambda = recruitment_from_population(parse_number(*n0_text, "n0"));
    } else {
        throw ParseError("one of lambda or n0 is required");
    }

    config.initial_state.S = require_number("S0");
    config.initial_state.I = require_number("I0");
    config.initial_state.Q = require_number("Q0");
    config.initial_state.R = require_number("R0_state");
    config.initial_state.B = require_number("B0");

    const double t_final = require_number("t_final");
    const double n_steps = require_number("n_steps");
    if (n_steps < 1.0 || n_steps != static_cast<double>(static_cast<int>(n_steps))) {
        throw ParseError("n_steps: must be a positive integer");
    }
    config.horizon = TimeGrid(0.0, t_final, static_cast<int>(n_steps));

    if (const auto w = take("ocp.W")) {
        config.ocp_W = parse_number(*w, "ocp.W");
    }
    if (const auto tol = take("ocp.tolerance")) {
        config.ocp_tolerance = parse_number(*tol, "ocp.tolerance");
    }
    if (const auto relax = take("ocp.relaxation")) {
        config.ocp_relaxation = parse_number(*relax, "ocp.relaxation");
    }
    if (const auto max_iter = take("ocp.max_iterations")) {
        config.ocp_max_iterations = static_cast<int>(parse_number(*max_iter, "ocp.max_iterations"));
    }
    if (const auto label = take("label")) {
        config.label = *label;
    }

    for (const auto& [key, entry] : entries) {
        if (!entry.used) {
            throw ParseError(path.filename().string() + ":" + std::to_string(entry.line) +
                             ": unknown key '" + key + "'");
        }
    }

    // Surfaces NonPositiveRequiredRate / NegativeOptionalRate early, with the
    // field named, rather than at first use.
    validate_params(config.params);

    const State& x0 = config.initial_state;
    for (const auto& [value, name] :
         {std::pair{x0.S, "S0"}, {x0.I, "I0"}, {x0.Q, "Q0"}, {x0.R, "R0_state"}, {x0.B, "B0"}}) {
        if (!(value >= 0.0)) {
            throw ValidationError(std::string(name) + ": initial value must be nonnegative");
        }
    }
    return config;
}

ObservationSeries load_observations(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open observations file: " + path.string());
    }

    ObservationSeries series;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') {
            continue;
        }
        if (!header_seen) {
            std::string compact;
            for (char c : stripped) {
                if (c != ' ' && c != '\t') compact += c;
            }
            if (compact != "day,infectious") {
                throw ParseError(path.filename().string() + ":" + std::to_string(line_no) +
                                 ": expected header 'day,infectious'");
            }
            header_seen = true;
            continue;
        }
        const auto comma = stripped.find(',');
        if (comma == std::string::npos) {
            throw ParseError(path.filename().string() + ":" + std::to_string(line_no) +
                             ": expected 'day,infectious' row");
        }
        const std::string where = path.filename().string() + ":" + std::to_string(line_no);
        const double day = parse_number(stripped.substr(0, comma), where);
        const double count = parse_number(stripped.substr(comma + 1), where);
        if (!series.times.empty() && !(day > series.times.back())) {
            throw NonMonotoneTime(where + ": day values must be strictly increasing");
        }
        if (count < 0.0) {
            throw ParseError(where + ": infectious count must be nonnegative");
        }
        series.times.push_back(day);
        series.infectious.push_back(count);
    }
    if (!header_seen) {
        throw ParseError(path.filename().string() + ": missing 'day,infectious' header");
    }
    if (series.times.empty()) {
        throw ParseError(path.filename().string() + ": no rows");
    }
    return series;
}

} // namespace siqrb
