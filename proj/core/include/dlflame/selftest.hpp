#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dlflame {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

inline constexpr int acceptance_criteria = 10;

/// Runs acceptance criterion `id` (1-based). Exceptions inside a criterion
/// become a failed result carrying the message.
[[nodiscard]] CriterionResult run_criterion(int id);

/// "PASS  3 spectral decay: ..." or "FAIL ...".
void print_result(std::ostream& out, const CriterionResult& r);

/// Runs every criterion, printing each line as soon as it finishes.
std::vector<CriterionResult> run_acceptance(std::ostream& out);

}  // namespace dlflame
