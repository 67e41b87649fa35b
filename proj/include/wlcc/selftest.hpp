#pragma once

#include <iosfwd>
#include <random>

#include "wlcc/core.hpp"

namespace wlcc::selftest {

// random colored graph with vertex classes of size <= 4 and a small arrow
// palette, transpose-normalized
ColoredSquareMatrix random_colored_graph(std::mt19937& rng, int n, int arrow_colors = 2);

struct CriterionResult {
    int number = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

// Runs the ten acceptance criteria, printing one pass/fail line each.
std::vector<CriterionResult> run_all(std::ostream& log, int threads = 0);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace wlcc::selftest
