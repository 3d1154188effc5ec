#pragma once

#include <stdexcept>
#include <string>

namespace uhlmann {

// Bad arguments: malformed spin, out-of-range angles, non-finite entries.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The lambda route of the trace hit z = +-1 where lambda - 1/lambda cancels.
class DegenerateEigenvalue : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A Chebyshev root had no bracketing sign change in the scan window.
class MissingRoot : public std::runtime_error {
public:
    MissingRoot(int k, const std::string& what) : std::runtime_error(what), k_(k) {}
    int k() const noexcept { return k_; }

private:
    int k_;
};

// The requested temperature sits on a phase singularity.
class SingularInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive refinement could not bring every phase step below the jump threshold.
class UnresolvedWinding : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A topological invariant came out with an impossible value (negative or > 2j).
class TopologyViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace uhlmann
