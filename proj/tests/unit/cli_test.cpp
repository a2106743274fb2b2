#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "qrelax/cli/config.hpp"
#include "qrelax/cli/scenarios.hpp"
#include "qrelax/cli/svg.hpp"

using namespace qrelax;
using namespace qrelax::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("qrelax_cli_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<std::string> violations_of(const std::string& text) {
    try {
        parse_config_text(text);
    } catch (const ConfigError& e) {
        return e.violations();
    }
    return {};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(path));
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

int exit_code(const std::string& args) {
    const std::string cmd = std::string(QRELAX_BINARY) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, MinimalFreeDiffusionFillsNaturalUnitDefaults) {
    const ScenarioConfig c = parse_config_text("[scenario]\nname = free-diffusion\n");
    EXPECT_EQ(c.scenario, Scenario::FreeDiffusion);
    EXPECT_EQ(c.physics.mass, 1.0);
    EXPECT_EQ(c.physics.hbar, 1.0);
    EXPECT_EQ(c.physics.temperature, 1.0);
    EXPECT_EQ(c.run.law, "QUANTUM_EINSTEIN_17");
    EXPECT_GT(c.run.var0, 0.0);
    EXPECT_GT(c.run.dt, 0.0);
    EXPECT_FALSE(c.output.svg);
}

TEST(Config, NegativeTemperatureIsOneNamedError) {
    const auto v = violations_of("[scenario]\nname = free-diffusion\n[physics]\ntemperature = -1\n");
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].find("temperature"), std::string::npos);
    EXPECT_NE(v[0].find("T >= 0"), std::string::npos);
}

TEST(Config, UnknownKeyRejectedBesideValidPhysics) {
    const auto v = violations_of("[scenario]\nname = free-diffusion\n[physics]\nfriction = 2\n[run]\nspeed = 3\n");
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].find("run.speed"), std::string::npos);
    // Keys that exist but belong to another scenario are unknown here too.
    EXPECT_EQ(violations_of("[scenario]\nname = free-diffusion\n[grid]\ndimension = 10\n").size(), 1u);
}

TEST(Config, ReportsEveryViolation) {
    const auto v = violations_of(
        "[scenario]\nname = free-diffusion\n[run]\nlaw = NOPE\nvar0 = -1\ndt = abc\nfoo = 1\n");
    EXPECT_EQ(v.size(), 4u);
}

TEST(Config, SyntaxErrorCarriesLineNumber) {
    const auto v = violations_of("[scenario]\nname = free-diffusion\n\nnot a pair\n");
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].find(":4:"), std::string::npos) << v[0];
}

TEST(Config, ScenarioNameRequiredAndChecked) {
    EXPECT_EQ(violations_of("[physics]\nmass = 1\n").size(), 1u);
    EXPECT_NE(violations_of("[scenario]\nname = relax\n")[0].find("unknown scenario"), std::string::npos);
}

TEST(Config, MissingFile) { EXPECT_THROW(parse_config("/nonexistent/qrelax.ini"), ConfigError); }

TEST(Config, SolverStepBoundsCheckedUpFront) {
    EXPECT_EQ(violations_of("[scenario]\nname = operator-relax\n[run]\ndt = 0.2\n").size(), 1u);
    EXPECT_EQ(violations_of("[scenario]\nname = wigner-relax\n[run]\ndt = 0.5\n").size(), 2u);  // one per model
    EXPECT_EQ(violations_of("[scenario]\nname = moments-sweep\n[run]\nmodels = QUANTUM_10\ndt = 0.05\n").size(), 1u);
    EXPECT_EQ(violations_of("[scenario]\nname = smoluchowski\n[physics]\nfriction = 0\n").size(), 1u);
}

TEST(Scenario, FreeDiffusionQuantumEinsteinColumns) {
    ScenarioConfig c = parse_config_text("[scenario]\nname = free-diffusion\n[run]\nt_end = 1e4\n");
    c.output.directory = scratch("free");
    const auto result = run_scenario(c);
    EXPECT_TRUE(result.passed());
    const auto rows = read_csv(c.output.directory / "dispersion.csv");
    ASSERT_GT(rows.size(), 100u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "sigma2_ode", "sigma2_implicit", "rel_diff"}));
    double worst = 0.0;
    for (std::size_t k = 1; k < rows.size(); ++k) worst = std::max(worst, std::abs(std::stod(rows[k][3])));
    EXPECT_LT(worst, 1e-6);
    EXPECT_NE(slurp(c.output.directory / "summary.txt").find("PASS ode_vs_closed_form"), std::string::npos);
}

TEST(Scenario, EquilibriumCheckSummaryListsModuleOracles) {
    ScenarioConfig c = parse_config_text("[scenario]\nname = equilibrium-check\n[physics]\nfriction = 0.2\n");
    c.output.directory = scratch("equilibrium");
    EXPECT_TRUE(run_scenario(c).passed());
    const std::string summary = slurp(c.output.directory / "summary.txt");
    for (const char* name : {"PASS NL7_gibbs_residual", "INFO CL2_gibbs_residual", "PASS bloch_vs_eigen_sum_L1",
                             "PASS fluctuation_dissipation"}) {
        EXPECT_NE(summary.find(name), std::string::npos) << name;
    }
}

TEST(Scenario, WignerComparisonHasBothModelsAndEquilibrium) {
    ScenarioConfig c = parse_config_text(
        "[scenario]\nname = wigner-relax\n[grid]\nx_points = 49\np_points = 49\n[run]\nt_end = 1\nstride = 50\n");
    c.output.directory = scratch("wigner");
    c.output.svg = true;
    run_scenario(c);
    const auto rows = read_csv(c.output.directory / "comparison.csv");
    EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "var_p_EFFECTIVE_5", "var_p_QUANTUM_10",
                                                 "EFFECTIVE_5_minus_QUANTUM_10", "var_p_eq_EFFECTIVE_5",
                                                 "var_p_eq_QUANTUM_10"}));
    EXPECT_NEAR(std::stod(rows[1][5]), 0.5 / std::tanh(0.5), 1e-10);
    EXPECT_TRUE(fs::exists(c.output.directory / "comparison.svg"));
}

TEST(Scenario, IdenticalConfigGivesIdenticalFiles) {
    const std::string text = "[scenario]\nname = moments-sweep\n[run]\npoints = 6\nt_end = 5\n";
    ScenarioConfig a = parse_config_text(text);
    ScenarioConfig b = a;
    a.output.directory = scratch("repro_a");
    b.output.directory = scratch("repro_b");
    const auto ra = run_scenario(a);
    run_scenario(b);
    for (const auto& f : ra.files) EXPECT_EQ(slurp(a.output.directory / f), slurp(b.output.directory / f)) << f;
    EXPECT_EQ(slurp(a.output.directory / "summary.txt"), slurp(b.output.directory / "summary.txt"));
}

TEST(Scenario, NothingWrittenWhenPreconditionsFail) {
    ScenarioConfig c = parse_config_text("[scenario]\nname = free-diffusion\n");
    c.physics.friction = 0.0;
    c.output.directory = scratch("invalid");
    EXPECT_THROW(run_scenario(c), ConfigError);
    EXPECT_FALSE(fs::exists(c.output.directory));
}

TEST(Svg, OnePolylinePerSeries) {
    const std::string svg = svg_line_plot("t,a,b\n0,1,2\n1,2,inf\n2,3,4\n", "demo");
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    std::size_t lines = 0;
    for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++lines;
    EXPECT_EQ(lines, 3u);  // b is split by its non-finite cell
}

TEST(Binary, ExitCodes) {
    const fs::path dir = scratch("binary");
    fs::create_directories(dir);
    std::ofstream(dir / "bad.ini") << "[scenario]\nname = free-diffusion\n[physics]\ntemperature = -1\n";
    std::ofstream(dir / "good.ini") << "[scenario]\nname = free-diffusion\n[run]\nt_end = 10\n";
    EXPECT_EQ(exit_code("run " + (dir / "bad.ini").string() + " --output " + (dir / "bad").string()), 2);
    EXPECT_FALSE(fs::exists(dir / "bad"));
    EXPECT_EQ(exit_code("run " + (dir / "good.ini").string() + " --output " + (dir / "good").string() +
                        " --format csv+svg --jobs 1"),
              0);
    EXPECT_TRUE(fs::exists(dir / "good" / "dispersion.svg"));
    EXPECT_EQ(exit_code("run " + (dir / "good.ini").string() + " --format pdf"), 2);
    EXPECT_EQ(exit_code("table coefficients --beta-min 0.5 --beta-max 2 --points 3"), 0);
    EXPECT_EQ(exit_code("table coefficients --beta-min 2 --beta-max 0.5"), 2);
    EXPECT_EQ(exit_code("frobnicate"), 2);
}
