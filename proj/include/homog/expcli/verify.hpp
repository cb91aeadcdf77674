#pragma once

#include <string>
#include <vector>

namespace homog::expcli {

enum class CheckKind { Ratio, Equality, Inequality, Exponent, Bound, Property };

struct CheckResult {
    std::string name;
    CheckKind kind;
    bool pass;
    double achieved;
    double target;
    double tolerance;
    std::string detail;
};

struct VerifyOptions {
    std::string filter;  // substring of the check name; empty selects all
    std::string inject;  // check whose target is deliberately perturbed
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    [[nodiscard]] bool all_pass() const;
    [[nodiscard]] std::string to_json() const;
};

[[nodiscard]] std::vector<std::string> battery_names();
[[nodiscard]] VerifyReport verify_theory(const VerifyOptions& opt = {});

}  // namespace homog::expcli
