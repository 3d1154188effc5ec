#pragma once

#include "uhlmann/spin_algebra.hpp"
#include "uhlmann/thermal_state.hpp"
#include "uhlmann/uhlmann_core.hpp"

namespace uhlmann {

/// The curve variable z(theta, betaB) and its auxiliary C(theta).
struct ZPoint {
    Complex value;
    double c_factor = 1.0;
};

/// Trace of rho * holonomy up to the positive factor dropped with the partition function.
struct TraceValue {
    Complex value;
};

/// Distance from z = +-1 below which the lambda route refuses to evaluate.
inline constexpr double kDegenerateRadius = 1e-8;

/// z = cosh(x) cos(pi C) - i sinh(x) sin(pi C) cos(theta) / C, x = betaB/2,
/// C = sqrt(1 - sin^2(theta) tanh^2(x)).
ZPoint z_variable(const LoopConfig& cfg);

/// Second-kind Chebyshev polynomial U_n(z) by the three-term recurrence.
/// Throws InvalidInput for n < 0.
Complex chebyshev_u(int n, Complex z);

enum class SqrtBranch { principal, flipped };

/// (lambda^{2j+1} - lambda^{-2j-1}) / (lambda - lambda^{-1}) with lambda = z + sqrt(z^2 - 1).
/// `flipped` takes the other square root, which swaps lambda and 1/lambda.
/// Throws DegenerateEigenvalue when z is within kDegenerateRadius of +-1.
TraceValue trace_via_lambda(SpinNumber j, Complex z, SqrtBranch branch = SqrtBranch::principal);

/// (-1)^{2j} U_{2j}(z)
Complex signed_chebyshev_trace(SpinNumber j, Complex z);

/// Uhlmann phase arg[(-1)^{2j} U_{2j}(z)]; trace_magnitude is |U_{2j}(z)|.
PhaseResult uhlmann_phase_closed(SpinNumber j, const LoopConfig& cfg);

/// Zeros of U_{2j}: cos(k pi / (2j + 1)), k = 1..2j, descending.
std::vector<double> chebyshev_roots(SpinNumber j);

}  // namespace uhlmann
