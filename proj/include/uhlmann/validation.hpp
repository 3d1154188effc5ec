#pragma once

#include <string>
#include <vector>

namespace uhlmann {

enum class ValidationLevel { quick, full };

struct ValidationOptions {
    ValidationLevel level = ValidationLevel::quick;
    // Mutation check: drops the (-1)^{2j} factor from the Chebyshev engine so the
    // phase suite must fail at half-integer j.
    bool inject_pauli_fault = false;
};

struct SuiteResult {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    int points = 0;
    int skipped = 0;  // singular or near-critical points left out
    bool passed = true;
    std::string failing_point;  // first point that broke the tolerance
};

struct ValidationReport {
    std::vector<SuiteResult> suites;
    bool passed() const;
};

/// Cross-engine equivalence suites: connection (spectral vs closed form),
/// holonomy (path-ordered vs closed form), phase (Chebyshev vs both trace
/// routes) and winding (phase unwrapping vs argument-principle root count).
ValidationReport run_validation(const ValidationOptions& options);

}  // namespace uhlmann
