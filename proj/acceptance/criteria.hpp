#ifndef OPDOP_ACCEPTANCE_CRITERIA_HPP
#define OPDOP_ACCEPTANCE_CRITERIA_HPP

#include <functional>
#include <string>
#include <vector>

namespace opdop::acceptance {

struct CriterionResult {
    int id{0};
    std::string name;
    bool pass{false};
    std::string detail;
    double seconds{0};
    double budget_seconds{0};
};

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    /// Returns pass/fail and fills the detail line.
    std::function<bool(std::string& detail)> run;
};

const std::vector<Criterion>& criteria();

/// Runs one criterion, timing it and turning exceptions into failures.
CriterionResult run(const Criterion& c);

/// "PASS  3  name  (1.23 s)  detail"
std::string format(const CriterionResult& r);

} // namespace opdop::acceptance

#endif // OPDOP_ACCEPTANCE_CRITERIA_HPP
