// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "dlflame/selftest.hpp"

#include <iostream>

int main() {
    const auto results = dlflame::run_acceptance(std::cout);
    int failed = 0;
    for (const auto& r : results) failed += r.pass ? 0 : 1;
    std::cout << (dlflame::acceptance_criteria - failed) << "/" << dlflame::acceptance_criteria
              << " criteria passed\n";
    return failed ? 1 : 0;
}
