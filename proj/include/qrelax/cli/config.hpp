#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "qrelax/core/errors.hpp"
#include "qrelax/core/params.hpp"
#include "qrelax/moments/closure.hpp"

namespace qrelax::cli {

enum class Scenario {
    OperatorRelax,
    WignerRelax,
    MomentsSweep,
    Smoluchowski,
    FreeDiffusion,
    EquilibriumCheck,
    CoefficientTable,
};

std::string_view scenario_name(Scenario s);

struct GridSection {
    double x_min = -8.0;
    double x_max = 8.0;
    std::size_t x_points = 97;
    double p_min = -8.0;
    double p_max = 8.0;
    std::size_t p_points = 97;
    std::size_t dimension = 24;  // operator basis size
};

struct RunSection {
    double t_end = 10.0;
    double dt = 0.0;  // 0 selects the solver's stability-derived step where one exists
    std::size_t stride = 100;
    std::vector<std::string> models;   // moment / Wigner model tags
    std::vector<std::string> kernels;  // operator kernel tags
    std::string law = "QUANTUM_EINSTEIN_17";
    std::string potential = "harmonic";
    double quartic = 0.0;
    moments::MomentState initial{0.5, 0.0, 1.3, 1.3, 0.0};
    std::string initial_state = "thermal";  // operator-relax: thermal | random
    double alpha = 1.0;
    unsigned seed = 1;
    double log_floor = 1e-30;
    double beta_min = 0.1;
    double beta_max = 10.0;
    std::size_t points = 25;
    double var0 = 1e-6;
    double t0 = 0.0;  // QUANTUM_BATH start; 0 selects 1e-3 m/b
    std::size_t modes = 20;
};

struct OutputSection {
    std::filesystem::path directory = "qrelax-out";
    bool svg = false;
};

struct ScenarioConfig {
    Scenario scenario = Scenario::FreeDiffusion;
    PhysParams physics;
    GridSection grid;
    RunSection run;
    OutputSection output;
};

/// Every problem found in a configuration, reported together.
class ConfigError : public ConfigurationError {
public:
    explicit ConfigError(std::vector<std::string> violations);
    [[nodiscard]] const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// INI text: [section] headers, key = value lines, ';' comments. Keys not
/// accepted by the named scenario are rejected; missing keys take
/// per-scenario defaults in natural units. Solver preconditions are checked
/// here, so a returned config can run without argument errors.
ScenarioConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");
ScenarioConfig parse_config(const std::filesystem::path& path);

/// Re-runs the precondition checks, e.g. after command-line overrides.
std::vector<std::string> precondition_violations(const ScenarioConfig& config);

/// Log-spaced inverse temperatures of a moments-sweep.
std::vector<double> sweep_betas(const RunSection& run);

/// `--format` value: "csv" or "csv+svg".
bool parse_format(const std::string& format, bool& svg);

}  // namespace qrelax::cli
