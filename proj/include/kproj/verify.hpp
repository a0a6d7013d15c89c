#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kproj {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // measured vs expected values
    double seconds = 0;
};

// Runs the full acceptance suite, printing one pass/fail line per criterion.
std::vector<CriterionResult> run_acceptance(std::ostream& os);

// All tolerance and sample-count defaults in one table.
void print_tolerance_config(std::ostream& os);

int acceptance_exit_code(const std::vector<CriterionResult>& results);

}  // namespace kproj
