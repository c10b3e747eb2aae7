#pragma once

// The acceptance suite: one quantitative check per criterion, shared by
// `semistab check` and the acceptance test binary.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace semistab::app {

enum class Suite { fast, full };

/// Parses "fast" or "full"; throws ValidationError otherwise.
Suite parse_suite(const std::string& name);

struct Measurement {
    std::string name;
    double value = 0.0;
    std::string relation; ///< e.g. "<=", ">=", "=="
    double threshold = 0.0;
    bool passed = false;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::vector<Measurement> measurements;
    std::vector<std::string> notes;
    double seconds = 0.0;
};

inline constexpr int kCriterionCount = 10;

/// Runs criterion id in [1, kCriterionCount]. Exceptions inside a criterion
/// are reported as failures, not propagated.
CriterionResult run_criterion(int id, Suite suite);

/// One line per criterion plus its measurements.
void print_result(const CriterionResult& r, std::ostream& out);

/// Runs the selected criteria (all when empty), printing as it goes.
/// Returns 0 iff every criterion passes, 1 otherwise.
int run_check(Suite suite, std::ostream& out, const std::vector<int>& only = {});

} // namespace semistab::app
