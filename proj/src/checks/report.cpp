#include <chrono>
#include <cmath>
#include <exception>
#include <ostream>

#include "qrelax/checks/checks.hpp"
#include "qrelax/io/csv.hpp"

namespace qrelax::checks {

CheckResult expect_below(std::string name, double measured, double threshold, std::string note) {
    return {std::move(name), measured < threshold, measured, threshold, "<", std::move(note)};
}

CheckResult expect_above(std::string name, double measured, double threshold, std::string note) {
    return {std::move(name), measured > threshold, measured, threshold, ">", std::move(note)};
}

CheckResult expect_within(std::string name, double measured, double target, double tolerance, std::string note) {
    if (!note.empty()) note += "; ";
    note += "target " + io::format_number(target);
    return {std::move(name), std::abs(measured - target) <= tolerance, measured, tolerance, "within", std::move(note)};
}

bool CriterionReport::checks_passed() const {
    if (checks.empty()) return false;
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

CriterionReport timed(int number, std::string title, double budget_seconds,
                      const std::function<void(std::vector<CheckResult>&)>& body) {
    CriterionReport report;
    report.number = number;
    report.title = std::move(title);
    report.budget_seconds = budget_seconds;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(report.checks);
    } catch (const std::exception& e) {
        report.error = e.what();
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

void write_checks(std::ostream& out, const std::vector<CheckResult>& checks) {
    for (const auto& c : checks) {
        if (c.relation == "=") {
            out << "INFO " << c.name << " value=" << io::format_number(c.measured);
            if (!c.note.empty()) out << " (" << c.note << ')';
            out << '\n';
            continue;
        }
        out << (c.passed ? "PASS " : "FAIL ") << c.name << " measured=" << io::format_number(c.measured) << ' '
            << c.relation << " threshold=" << io::format_number(c.threshold);
        if (!c.note.empty()) out << " (" << c.note << ')';
        out << '\n';
    }
}

void write_report(std::ostream& out, const CriterionReport& report) {
    out << (report.passed() ? "PASS" : "FAIL") << " criterion " << report.number << ": " << report.title
        << " [runtime " << io::format_number(report.seconds) << " s, budget " << io::format_number(report.budget_seconds)
        << " s" << (report.within_budget() ? "" : ", OVER BUDGET") << "]\n";
    if (!report.error.empty()) out << "    error: " << report.error << '\n';
    for (const auto& c : report.checks) {
        out << "    ";
        write_checks(out, {c});
    }
}

}  // namespace qrelax::checks
