#include "qrelax/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "qrelax/coordinate_space/dispersion.hpp"
#include "qrelax/core/grid.hpp"
#include "qrelax/moments/coefficients.hpp"
#include "qrelax/operator_space/master_equation.hpp"
#include "qrelax/phase_space/evolve.hpp"
#include "qrelax/phase_space/field.hpp"

namespace qrelax::cli {

namespace {

constexpr Scenario kScenarios[] = {Scenario::OperatorRelax,  Scenario::WignerRelax,      Scenario::MomentsSweep,
                                   Scenario::Smoluchowski,   Scenario::FreeDiffusion,    Scenario::EquilibriumCheck,
                                   Scenario::CoefficientTable};

std::optional<Scenario> parse_scenario(std::string_view name) {
    for (auto s : kScenarios) {
        if (scenario_name(s) == name) return s;
    }
    return std::nullopt;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

// A setter parses one value into the config and returns an error message,
// or an empty string on success.
using Setter = std::function<std::string(ScenarioConfig&, const std::string&)>;

std::string parse_real(const std::string& text, double& out) {
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    if (ec != std::errc() || ptr != end) return "'" + text + "' is not a number";
    if (!std::isfinite(out)) return "'" + text + "' is not finite";
    return {};
}

template <class Count>
std::string parse_count(const std::string& text, Count& out) {
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    if (ec != std::errc() || ptr != end) return "'" + text + "' is not a non-negative integer";
    return {};
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <class Section>
Setter real(Section ScenarioConfig::*section, double Section::*field) {
    return [=](ScenarioConfig& c, const std::string& v) { return parse_real(v, c.*section.*field); };
}

template <class Section, class Count>
Setter count(Section ScenarioConfig::*section, Count Section::*field) {
    return [=](ScenarioConfig& c, const std::string& v) { return parse_count(v, c.*section.*field); };
}

Setter text(std::string RunSection::*field) {
    return [=](ScenarioConfig& c, const std::string& v) {
        c.run.*field = v;
        return std::string();
    };
}

Setter list(std::vector<std::string> RunSection::*field) {
    return [=](ScenarioConfig& c, const std::string& v) {
        c.run.*field = split_list(v);
        return std::string();
    };
}

Setter physics(double PhysParams::*field) {
    return [=](ScenarioConfig& c, const std::string& v) { return parse_real(v, c.physics.*field); };
}

Setter moment(double moments::MomentState::*field) {
    return [=](ScenarioConfig& c, const std::string& v) { return parse_real(v, c.run.initial.*field); };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"physics.mass", physics(&PhysParams::mass)},
        {"physics.omega0", physics(&PhysParams::omega0)},
        {"physics.friction", physics(&PhysParams::friction)},
        {"physics.temperature", physics(&PhysParams::temperature)},
        {"physics.hbar", physics(&PhysParams::hbar)},
        {"physics.boltzmann", physics(&PhysParams::boltzmann)},
        {"grid.x_min", real(&ScenarioConfig::grid, &GridSection::x_min)},
        {"grid.x_max", real(&ScenarioConfig::grid, &GridSection::x_max)},
        {"grid.x_points", count(&ScenarioConfig::grid, &GridSection::x_points)},
        {"grid.p_min", real(&ScenarioConfig::grid, &GridSection::p_min)},
        {"grid.p_max", real(&ScenarioConfig::grid, &GridSection::p_max)},
        {"grid.p_points", count(&ScenarioConfig::grid, &GridSection::p_points)},
        {"grid.dimension", count(&ScenarioConfig::grid, &GridSection::dimension)},
        {"run.t_end", real(&ScenarioConfig::run, &RunSection::t_end)},
        {"run.dt", real(&ScenarioConfig::run, &RunSection::dt)},
        {"run.stride", count(&ScenarioConfig::run, &RunSection::stride)},
        {"run.models", list(&RunSection::models)},
        {"run.kernels", list(&RunSection::kernels)},
        {"run.law", text(&RunSection::law)},
        {"run.potential", text(&RunSection::potential)},
        {"run.quartic", real(&ScenarioConfig::run, &RunSection::quartic)},
        {"run.mean_x", moment(&moments::MomentState::mean_x)},
        {"run.mean_p", moment(&moments::MomentState::mean_p)},
        {"run.var_x", moment(&moments::MomentState::var_x)},
        {"run.var_p", moment(&moments::MomentState::var_p)},
        {"run.cov_xp", moment(&moments::MomentState::cov_xp)},
        {"run.initial", text(&RunSection::initial_state)},
        {"run.alpha", real(&ScenarioConfig::run, &RunSection::alpha)},
        {"run.seed", count(&ScenarioConfig::run, &RunSection::seed)},
        {"run.log_floor", real(&ScenarioConfig::run, &RunSection::log_floor)},
        {"run.beta_min", real(&ScenarioConfig::run, &RunSection::beta_min)},
        {"run.beta_max", real(&ScenarioConfig::run, &RunSection::beta_max)},
        {"run.points", count(&ScenarioConfig::run, &RunSection::points)},
        {"run.var0", real(&ScenarioConfig::run, &RunSection::var0)},
        {"run.t0", real(&ScenarioConfig::run, &RunSection::t0)},
        {"run.modes", count(&ScenarioConfig::run, &RunSection::modes)},
        {"output.directory",
         [](ScenarioConfig& c, const std::string& v) {
             if (v.empty()) return std::string("must not be empty");
             c.output.directory = v;
             return std::string();
         }},
        {"output.format", [](ScenarioConfig& c, const std::string& v) {
             return parse_format(v, c.output.svg) ? std::string() : "'" + v + "' is not csv or csv+svg";
         }},
    };
    return table;
}

struct Schema {
    std::vector<std::string> keys;                              // grid.* / run.* keys accepted
    std::vector<std::pair<std::string, std::string>> defaults;  // applied before user values
};

const Schema& schema(Scenario s) {
    static const std::map<Scenario, Schema> table = {
        {Scenario::OperatorRelax,
         {{"grid.dimension", "run.t_end", "run.dt", "run.stride", "run.kernels", "run.initial", "run.alpha",
           "run.seed", "run.log_floor"},
          {{"run.t_end", "60"}, {"run.dt", "0.005"}, {"run.stride", "200"}, {"run.kernels", "CL2,NL7"}}}},
        {Scenario::WignerRelax,
         {{"grid.x_min", "grid.x_max", "grid.x_points", "grid.p_min", "grid.p_max", "grid.p_points", "run.t_end",
           "run.dt", "run.stride", "run.models", "run.mean_x", "run.mean_p", "run.var_x", "run.var_p", "run.cov_xp"},
          {{"run.t_end", "16"}, {"run.models", "EFFECTIVE_5,QUANTUM_10"}}}},
        {Scenario::MomentsSweep,
         {{"run.t_end", "run.dt", "run.models", "run.beta_min", "run.beta_max", "run.points", "run.mean_x",
           "run.mean_p", "run.var_x", "run.var_p", "run.cov_xp"},
          {{"run.t_end", "150"},
           {"run.dt", "0.005"},
           {"run.models", "CLASSICAL_1,EFFECTIVE_5,QUANTUM_10,MAXWELL_HEISENBERG_14"}}}},
        {Scenario::Smoluchowski,
         {{"grid.x_min", "grid.x_max", "grid.x_points", "run.t_end", "run.dt", "run.stride", "run.potential",
           "run.quartic", "run.mean_x", "run.var_x"},
          {{"grid.x_min", "-6"},
           {"grid.x_max", "6"},
           {"grid.x_points", "1025"},
           {"run.t_end", "20"},
           {"run.dt", "0.01"},
           {"run.stride", "50"},
           {"run.mean_x", "0"},
           {"run.var_x", "0.1"}}}},
        {Scenario::FreeDiffusion,
         {{"run.law", "run.var0", "run.t_end", "run.dt", "run.t0"}, {{"run.t_end", "1e4"}, {"run.dt", "1"}}}},
        {Scenario::EquilibriumCheck,
         {{"grid.dimension", "grid.x_min", "grid.x_max", "grid.x_points", "run.modes"},
          {{"grid.dimension", "40"}, {"grid.x_min", "-10"}, {"grid.x_max", "10"}, {"grid.x_points", "401"}}}},
        {Scenario::CoefficientTable, {{"run.beta_min", "run.beta_max", "run.points"}, {{"run.points", "50"}}}},
    };
    return table.at(s);
}

bool accepted(const Schema& s, const std::string& key) {
    const auto section = key.substr(0, key.find('.'));
    if (section == "physics" || section == "output") return true;
    return std::find(s.keys.begin(), s.keys.end(), key) != s.keys.end();
}

void positive(std::vector<std::string>& out, const char* key, double v) {
    if (!(v > 0.0)) out.push_back(std::string(key) + " = " + std::to_string(v) + " must be > 0");
}

void grid_checks(std::vector<std::string>& out, const char* axis, double lo, double hi, std::size_t n) {
    if (!(hi > lo)) out.push_back(std::string("grid.") + axis + "_max must exceed grid." + axis + "_min");
    if (n < CoordGrid::kMinPoints) {
        out.push_back(std::string("grid.") + axis + "_points = " + std::to_string(n) + " must be at least " +
                      std::to_string(CoordGrid::kMinPoints));
    }
}

void model_checks(std::vector<std::string>& out, const std::vector<std::string>& tags) {
    if (tags.empty()) out.push_back("run.models must name at least one model");
    for (const auto& tag : tags) {
        if (!moments::parse_model(tag)) out.push_back("run.models: unknown model '" + tag + "'");
    }
}

}  // namespace

std::string_view scenario_name(Scenario s) {
    switch (s) {
        case Scenario::OperatorRelax: return "operator-relax";
        case Scenario::WignerRelax: return "wigner-relax";
        case Scenario::MomentsSweep: return "moments-sweep";
        case Scenario::Smoluchowski: return "smoluchowski";
        case Scenario::FreeDiffusion: return "free-diffusion";
        case Scenario::EquilibriumCheck: return "equilibrium-check";
        case Scenario::CoefficientTable: return "coefficient-table";
    }
    return "unknown";
}

ConfigError::ConfigError(std::vector<std::string> violations)
    : ConfigurationError([&] {
          std::string msg = "invalid configuration:";
          for (const auto& v : violations) msg += "\n  " + v;
          return msg;
      }()),
      violations_(std::move(violations)) {}

std::vector<double> sweep_betas(const RunSection& run) {
    std::vector<double> out(run.points);
    for (std::size_t k = 0; k < run.points; ++k) {
        const double f = run.points > 1 ? static_cast<double>(k) / static_cast<double>(run.points - 1) : 0.0;
        out[k] = run.beta_min * std::pow(run.beta_max / run.beta_min, f);
    }
    return out;
}

bool parse_format(const std::string& format, bool& svg) {
    if (format == "csv") {
        svg = false;
    } else if (format == "csv+svg") {
        svg = true;
    } else {
        return false;
    }
    return true;
}

std::vector<std::string> precondition_violations(const ScenarioConfig& c) {
    std::vector<std::string> out;
    for (const auto& v : c.physics.violations()) out.push_back("physics." + v);
    if (!out.empty()) return out;  // everything below assumes sane physics
    const PhysParams& p = c.physics;
    const RunSection& r = c.run;
    const GridSection& g = c.grid;

    auto needs_temperature = [&] {
        if (!(p.temperature > 0.0)) out.push_back("physics.temperature must be > 0 for " +
                                                  std::string(scenario_name(c.scenario)));
    };
    auto needs_friction = [&] {
        if (!(p.friction > 0.0)) out.push_back("physics.friction must be > 0 for " +
                                               std::string(scenario_name(c.scenario)));
    };
    auto time_span = [&] {
        if (!(r.t_end >= 0.0)) out.push_back("run.t_end must be >= 0");
        if (r.stride == 0) out.push_back("run.stride must be >= 1");
    };
    auto beta_range = [&] {
        positive(out, "run.beta_min", r.beta_min);
        if (!(r.beta_max >= r.beta_min)) out.push_back("run.beta_max must be >= run.beta_min");
        if (r.points < 2) out.push_back("run.points must be >= 2");
    };

    switch (c.scenario) {
        case Scenario::OperatorRelax: {
            needs_temperature();
            time_span();
            positive(out, "run.dt", r.dt);
            positive(out, "run.log_floor", r.log_floor);
            if (g.dimension < 2) out.push_back("grid.dimension must be >= 2");
            if (r.kernels.empty()) out.push_back("run.kernels must name at least one kernel");
            for (const auto& k : r.kernels) {
                if (!opspace::parse_kernel(k)) out.push_back("run.kernels: unknown kernel '" + k + "'");
            }
            if (r.initial_state != "thermal" && r.initial_state != "random") {
                out.push_back("run.initial = '" + r.initial_state + "' must be thermal or random");
            }
            const double heuristic = r.dt * (p.friction / p.mass + p.omega0);
            if (r.dt > 0.0 && !(heuristic < 0.1)) {
                out.push_back("run.dt: dt*(b/m + omega0) = " + std::to_string(heuristic) + " must be below 0.1");
            }
            break;
        }
        case Scenario::WignerRelax: {
            needs_temperature();
            time_span();
            grid_checks(out, "x", g.x_min, g.x_max, g.x_points);
            grid_checks(out, "p", g.p_min, g.p_max, g.p_points);
            model_checks(out, r.models);
            if (!(r.dt >= 0.0)) out.push_back("run.dt must be >= 0 (0 selects the stability bound)");
            if (!r.initial.valid()) out.push_back("run: initial moments must satisfy var_x, var_p > 0 and det > 0");
            if (!out.empty()) break;
            const PhaseGrid grid{CoordGrid(g.x_min, g.x_max, g.x_points), CoordGrid(g.p_min, g.p_max, g.p_points)};
            const auto w0 = phase::gaussian_wigner(r.initial, grid, p);
            for (const auto& tag : r.models) {
                const auto dyn = phase::PhaseDynamics::harmonic(*moments::parse_model(tag), p.beta());
                const double limit = phase::cfl_limit(dyn, w0);
                if (r.dt > limit) {
                    out.push_back("run.dt = " + std::to_string(r.dt) + " exceeds the " + tag + " stability bound " +
                                  std::to_string(limit));
                }
            }
            break;
        }
        case Scenario::MomentsSweep: {
            time_span();
            positive(out, "run.dt", r.dt);
            beta_range();
            model_checks(out, r.models);
            if (!r.initial.valid()) out.push_back("run: initial moments must satisfy var_x, var_p > 0 and det > 0");
            if (!out.empty()) break;
            // The explicit step bound of the moment ODE, at the worst beta of the sweep.
            for (const auto& tag : r.models) {
                const auto model = *moments::parse_model(tag);
                const auto var_x = model == moments::RelaxationModel::MaxwellHeisenberg
                                       ? std::optional<double>(r.initial.var_x)
                                       : std::nullopt;
                double worst = 0.0;
                for (double beta : sweep_betas(r)) {
                    const double gamma = moments::relaxation_coefficients(model, beta, p, var_x).gamma;
                    worst = std::max(worst, r.dt * std::max(gamma, p.omega0));
                }
                if (!(worst < 0.1)) {
                    out.push_back("run.dt: " + tag + " needs dt*max(gamma, omega0) < 0.1, got " +
                                  std::to_string(worst));
                }
            }
            break;
        }
        case Scenario::Smoluchowski:
            needs_friction();
            time_span();
            positive(out, "run.dt", r.dt);
            positive(out, "run.var_x", r.initial.var_x);
            grid_checks(out, "x", g.x_min, g.x_max, g.x_points);
            if (r.potential != "harmonic" && r.potential != "anharmonic" && r.potential != "quartic" &&
                r.potential != "free") {
                out.push_back("run.potential = '" + r.potential + "' must be harmonic, anharmonic, quartic or free");
            }
            break;
        case Scenario::FreeDiffusion:
            needs_friction();
            positive(out, "run.var0", r.var0);
            positive(out, "run.dt", r.dt);
            if (!(r.t_end >= 0.0)) out.push_back("run.t_end must be >= 0");
            if (!(r.t0 >= 0.0)) out.push_back("run.t0 must be >= 0");
            try {
                coord::parse_law(r.law);
            } catch (const ArgumentError& e) {
                out.push_back(std::string("run.law: ") + e.what());
            }
            break;
        case Scenario::EquilibriumCheck:
            needs_temperature();
            grid_checks(out, "x", g.x_min, g.x_max, g.x_points);
            if (g.dimension < 21) out.push_back("grid.dimension must be >= 21 (residuals use the n,m < 20 block)");
            if (r.modes < 1) out.push_back("run.modes must be >= 1");
            break;
        case Scenario::CoefficientTable: beta_range(); break;
    }
    return out;
}

ScenarioConfig parse_config_text(const std::string& text, const std::string& origin) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError({origin + ":" + std::to_string(e.line()) + ": " + e.message()});
    }

    std::vector<std::string> errors;
    const auto name = tree.get_optional<std::string>("scenario.name");
    if (!name) throw ConfigError({"[scenario] name is required"});
    ScenarioConfig config;
    if (const auto s = parse_scenario(trim(*name))) {
        config.scenario = *s;
    } else {
        std::string known;
        for (auto k : kScenarios) known += (known.empty() ? "" : ", ") + std::string(scenario_name(k));
        throw ConfigError({"unknown scenario '" + *name + "' (expected one of " + known + ")"});
    }

    const Schema& sch = schema(config.scenario);
    for (const auto& [key, value] : sch.defaults) {
        if (auto err = setters().at(key)(config, value); !err.empty()) throw InternalError(key + ": " + err);
    }

    for (const auto& [section, body] : tree) {
        if (!body.data().empty()) {
            errors.push_back("key '" + section + "' outside any [section]");
            continue;
        }
        for (const auto& [k, node] : body) {
            const std::string key = section + "." + k;
            if (key == "scenario.name") continue;
            const auto it = setters().find(key);
            if (it == setters().end() || !accepted(sch, key)) {
                errors.push_back("unknown key '" + key + "' for scenario " + std::string(scenario_name(config.scenario)));
                continue;
            }
            if (auto err = it->second(config, trim(node.data())); !err.empty()) errors.push_back(key + ": " + err);
        }
    }
    // Preconditions are checked even when some keys were rejected, so one
    // pass reports everything; a rejected value leaves its default in place.
    for (auto& v : precondition_violations(config)) errors.push_back(std::move(v));
    if (!errors.empty()) throw ConfigError(std::move(errors));
    return config;
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot read config file '" + path.string() + "'"});
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path.string());
}

}  // namespace qrelax::cli
