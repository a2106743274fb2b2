#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace qrelax::checks {

/// One measured quantity against its pinned bound.
struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string relation;  // "<", ">", "within"; "=" marks a reported value that never fails
    std::string note;
};

/// Pass/fail for a >/< comparison, recorded with its numbers.
CheckResult expect_below(std::string name, double measured, double threshold, std::string note = {});
CheckResult expect_above(std::string name, double measured, double threshold, std::string note = {});
/// |measured − target| ≤ tolerance; `measured` is stored, the tolerance is the threshold.
CheckResult expect_within(std::string name, double measured, double target, double tolerance, std::string note = {});

/// A group of checks with a wall-clock budget; it passes only when every
/// check passes and the run finished inside the budget.
struct CriterionReport {
    int number = 0;
    std::string title;
    std::vector<CheckResult> checks;
    double seconds = 0.0;
    double budget_seconds = 0.0;
    std::string error;  // set when the run threw instead of finishing

    [[nodiscard]] bool checks_passed() const;
    [[nodiscard]] bool within_budget() const { return seconds <= budget_seconds; }
    [[nodiscard]] bool passed() const { return error.empty() && checks_passed() && within_budget(); }
};

/// Runs `body` under a timer; exceptions are caught into `error`.
CriterionReport timed(int number, std::string title, double budget_seconds,
                      const std::function<void(std::vector<CheckResult>&)>& body);

/// Structural invariants: kernel tracelessness and Hermiticity, flux-form
/// norm conservation, frictionless reductions, the Onsager-form identity
/// and fourth-order grid convergence of stationarity residuals.
std::vector<CheckResult> invariant_checks();

/// Acceptance criteria 1–11; `seed` fixes the random state of criterion 3.
CriterionReport run_criterion(int number, unsigned seed = 5);
inline constexpr int kCriterionCount = 11;

/// "PASS name measured=… threshold=…" lines, one per check ("INFO" for
/// reported values).
void write_checks(std::ostream& out, const std::vector<CheckResult>& checks);
/// One line per criterion followed by its indented checks.
void write_report(std::ostream& out, const CriterionReport& report);

}  // namespace qrelax::checks
