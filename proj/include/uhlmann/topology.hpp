#pragma once

#include <functional>
#include <string>
#include <vector>

#include "uhlmann/chebyshev_phase.hpp"

namespace uhlmann {

/// Left-hand side of the critical-temperature condition: cosh(x/2) cos(pi sech(x/2)).
double critical_condition(double beta_b);

struct ScanWindow {
    double lo = 0.01;
    double hi = 20.0;
};

inline constexpr int kDefaultScanSteps = 4000;
inline constexpr double kDefaultRootTolerance = 1e-12;

/// Every x in the window with critical_condition(x) == target, ascending.
/// Sign changes on a uniform grid of `scan_steps` intervals are refined by bisection to `tol`.
std::vector<double> solve_critical_condition(double target, ScanWindow window = {},
                                             int scan_steps = kDefaultScanSteps,
                                             double tol = kDefaultRootTolerance);

struct CriticalEntry {
    int k = 0;
    double beta_b = 0.0;
    double chebyshev_root = 0.0;
};

struct CriticalTable {
    SpinNumber j;
    std::vector<CriticalEntry> entries;  // sorted by beta_b ascending
    std::vector<std::string> warnings;   // one per k with more than one root
};

/// Solves the critical condition for every root cos(k pi/(2j+1)), k = 1..2j.
/// Throws MissingRoot naming the first k without a bracketing sign change,
/// InvalidInput for a bad window, scan_steps < 2 or tol > 1e-10.
CriticalTable critical_temperatures(SpinNumber j, ScanWindow window = {},
                                    int scan_steps = kDefaultScanSteps,
                                    double tol = kDefaultRootTolerance);

/// Half-width of the exclusion zone around each critical beta_b.
inline constexpr double kCriticalExclusion = 1e-6;
/// Phase steps at or above this trigger local bisection of the theta grid.
inline constexpr double kJumpThreshold = 1.5707963267948966;

struct WindingResult {
    int n_u = 0;
    double raw_integral = 0.0;
    double max_step_jump = 0.0;
};

struct PhaseAccumulation {
    double total = 0.0;     // summed unwrapped phase increments
    double max_step = 0.0;  // largest |increment| that was accepted
};

/// Unwrapped phase change of curve(theta) over theta in [0, pi].
///
/// Starts from `initial_grid` equal slices and bisects any slice whose phase
/// step reaches kJumpThreshold, at most `max_refine` levels deep. Throws
/// UnresolvedWinding when refinement runs out, SingularInput when the curve
/// passes through the origin.
PhaseAccumulation accumulate_phase(const std::function<Complex(double)>& curve, int initial_grid,
                                   int max_refine);

inline constexpr int kDefaultWindingGrid = 256;
inline constexpr int kDefaultMaxRefine = 30;

/// Winding number of (-1)^{2j} U_{2j}(z(theta)) around the origin, theta in [0, pi].
///
/// Throws SingularInput when beta_b is within kCriticalExclusion of a critical value,
/// UnresolvedWinding when the accumulated phase is not within 0.01 of a multiple of 2pi,
/// TopologyViolation when the result lies outside [0, 2j].
WindingResult winding_number(SpinNumber j, double beta_b, int initial_grid = kDefaultWindingGrid,
                             int max_refine = kDefaultMaxRefine);

/// Same, reusing a precomputed critical table for the singularity check.
WindingResult winding_number(const CriticalTable& table, double beta_b,
                             int initial_grid = kDefaultWindingGrid,
                             int max_refine = kDefaultMaxRefine);

/// Number of Chebyshev roots the closed curve z(theta) winds around (argument principle).
int roots_enclosed(SpinNumber j, double beta_b, int grid = kDefaultWindingGrid);

struct StaircasePoint {
    double beta_b = 0.0;
    WindingResult winding;
};

/// winding_number evaluated at every grid point, in grid order.
std::vector<StaircasePoint> staircase(SpinNumber j, const std::vector<double>& beta_b_grid);

}  // namespace uhlmann
