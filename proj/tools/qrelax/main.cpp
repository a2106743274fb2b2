#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "qrelax/checks/checks.hpp"
#include "qrelax/cli/config.hpp"
#include "qrelax/cli/scenarios.hpp"
#include "qrelax/cli/svg.hpp"
#include "qrelax/moments/coefficients.hpp"

namespace {

constexpr int kSuccess = 0;
constexpr int kConfigError = 2;
constexpr int kInstability = 3;
constexpr int kCheckFailure = 4;
constexpr int kInternal = 1;

struct GlobalOptions {
    std::optional<std::string> output;
    std::optional<std::string> format;
    std::optional<int> jobs;
    std::optional<unsigned> seed;
};

void apply_jobs(const GlobalOptions& g) {
    if (g.jobs) omp_set_num_threads(*g.jobs);
}

int run(const std::string& path, const GlobalOptions& g) {
    using namespace qrelax::cli;
    ScenarioConfig config = parse_config(path);
    if (g.output) config.output.directory = *g.output;
    if (g.format && !parse_format(*g.format, config.output.svg)) {
        throw ConfigError({"--format '" + *g.format + "' is not csv or csv+svg"});
    }
    if (g.seed) config.run.seed = *g.seed;
    const ScenarioResult result = run_scenario(config);
    write_summary(std::cout, config, result);
    return result.passed() ? kSuccess : kCheckFailure;
}

int check(bool criteria, const GlobalOptions& g) {
    using namespace qrelax::checks;
    std::ostringstream text;
    bool passed = true;
    if (criteria) {
        for (int n = 1; n <= kCriterionCount; ++n) {
            const CriterionReport report = run_criterion(n, g.seed.value_or(5));
            write_report(text, report);
            std::cout << text.str() << std::flush;
            text.str({});
            passed = passed && report.passed();
        }
    } else {
        const auto results = invariant_checks();
        write_checks(text, results);
        for (const auto& r : results) passed = passed && r.passed;
        std::cout << text.str();
    }
    std::cout << (passed ? "status: PASS" : "status: FAIL") << '\n';
    return passed ? kSuccess : kCheckFailure;
}

int table(double beta_min, double beta_max, std::size_t points, const GlobalOptions& g) {
    using namespace qrelax;
    cli::ScenarioConfig config;
    config.scenario = cli::Scenario::CoefficientTable;
    config.run.beta_min = beta_min;
    config.run.beta_max = beta_max;
    config.run.points = points;
    if (auto v = cli::precondition_violations(config); !v.empty()) throw cli::ConfigError(std::move(v));
    if (g.format && !cli::parse_format(*g.format, config.output.svg)) {
        throw cli::ConfigError({"--format '" + *g.format + "' is not csv or csv+svg"});
    }
    if (!g.output) {
        moments::write_coefficient_table(std::cout, config.physics, beta_min, beta_max, points);
        return kSuccess;
    }
    config.output.directory = *g.output;
    cli::run_scenario(config);
    return kSuccess;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum thermodynamic relaxation solvers: scenario runs, invariant checks, tables"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    GlobalOptions g;
    app.add_option("--output", g.output, "Output directory (overrides [output] directory)");
    app.add_option("--format", g.format, "csv or csv+svg");
    app.add_option("--jobs", g.jobs, "Worker threads for RHS kernels and parameter sweeps")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "Seed for random initial states");

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "Run the scenario described by a config file");
    run_cmd->add_option("config", config_path, "Scenario config (INI)")->required();

    bool criteria = false;
    auto* check_cmd = app.add_subcommand("check", "Run the structural invariant suite");
    check_cmd->add_flag("--criteria", criteria, "Run every acceptance criterion instead, with timings");

    double beta_min = 0.1;
    double beta_max = 10.0;
    std::size_t points = 50;
    std::string table_name;
    auto* table_cmd = app.add_subcommand("table", "Print a coefficient table");
    table_cmd->add_option("name", table_name, "Table name")->required()->check(CLI::IsMember({"coefficients"}));
    table_cmd->add_option("--beta-min", beta_min, "Smallest beta");
    table_cmd->add_option("--beta-max", beta_max, "Largest beta");
    table_cmd->add_option("--points", points, "Number of log-spaced beta values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kConfigError;
    }

    try {
        apply_jobs(g);
        if (*run_cmd) return run(config_path, g);
        if (*check_cmd) return check(criteria, g);
        if (*table_cmd) return table(beta_min, beta_max, points, g);
    } catch (const qrelax::ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const qrelax::ConfigurationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const qrelax::InstabilityError& e) {
        std::cerr << "instability: " << e.what() << '\n';
        return kInstability;
    } catch (const qrelax::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}
