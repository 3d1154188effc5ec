#pragma once

#include "uhlmann/spin_algebra.hpp"
#include "uhlmann/thermal_state.hpp"

namespace uhlmann {

/// Trace magnitudes below this mark the phase as undefined.
inline constexpr double kSingularThreshold = 1e-9;

/// The matrix multiplying d(phi) in the Uhlmann connection at one point of the loop.
struct ConnectionOneForm {
    ComplexMatrix coefficient;
};

/// Path-ordered exponential of the connection around the full loop.
struct HolonomyMatrix {
    ComplexMatrix matrix;
};

struct PhaseResult {
    double phase = 0.0;            // (-pi, pi]; meaningless when singular
    double trace_magnitude = 0.0;
    bool singular = false;
};

/// Builds a PhaseResult from a complex trace. arg(-r) maps to +pi.
PhaseResult phase_from_trace(Complex trace);

/// Wraps an angle into (-pi, pi].
double wrap_phase(double angle);

/// Distance between two angles on the circle, in [0, pi].
double circle_distance(double a, double b);

/// eta = sin(theta) [1 - sech(betaB/2)]
double eta_factor(const LoopConfig& cfg);

/// (sqrt(p_l) - sqrt(p_k))^2 / (p_l + p_k), evaluated without underflow trouble.
double probability_factor(double p_l, double p_k);

ConnectionOneForm connection_closed_form(SpinNumber j, const LoopConfig& cfg, double phi);

/// Assembles A = sum_{l,k} f(p_l, p_k) <l|d|k> |l><k| in the rotated eigenbasis, with
/// d|k>/dphi from central differences of width fd_step, and returns it in the lab basis.
///
/// `include_diagonal` = false drops the <k|d|k> terms before weighting; their
/// weight f(p_k, p_k) is zero, so both choices must agree.
ConnectionOneForm connection_spectral(SpinNumber j, const LoopConfig& cfg, double phi,
                                      double fd_step = 1e-6, bool include_diagonal = true);

/// (-1)^{2j} exp(-i 2pi [(eta sin(theta) - 1) Jz - eta cos(theta) Jx])
HolonomyMatrix holonomy_closed_form(SpinNumber j, const LoopConfig& cfg);

enum class IntegrationScheme {
    midpoint,  // product of exp(A(phi_mid) dphi), second order
    magnus4,   // two-point Gauss Magnus expansion, fourth order
};

inline constexpr int kDefaultOracleSteps = 4096;
inline constexpr int kMinOracleSteps = 16;

/// Ordered product over `steps` slices of [0, 2pi], later phi on the left.
/// Throws InvalidInput when steps < 16.
HolonomyMatrix holonomy_path_ordered(SpinNumber j, const LoopConfig& cfg,
                                     int steps = kDefaultOracleSteps,
                                     IntegrationScheme scheme = IntegrationScheme::magnus4);

enum class HolonomyMethod { closed, path_ordered };

/// arg Tr[rho(phi = 0) H] with H from the chosen holonomy route.
PhaseResult uhlmann_phase_trace(SpinNumber j, const LoopConfig& cfg,
                                HolonomyMethod method = HolonomyMethod::closed,
                                int steps = kDefaultOracleSteps);

}  // namespace uhlmann
