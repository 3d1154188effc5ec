#pragma once

#include <vector>

#include "uhlmann/spin_algebra.hpp"

namespace uhlmann {

/// The adiabatic loop: fixed polar angle theta, phi swept 0 -> 2pi, at
/// dimensionless inverse temperature times field strength beta*B.
class LoopConfig {
public:
    /// Throws InvalidInput unless beta_b is finite and > 0 and theta is in [0, pi].
    LoopConfig(double beta_b, double theta);

    double beta_b() const noexcept { return beta_b_; }
    double theta() const noexcept { return theta_; }
    SinCos trig() const noexcept { return polar_sincos(theta_); }

private:
    double beta_b_;
    double theta_;
};

/// Boltzmann weights p_m, indexed like the basis (index 0 is m = j).
struct ThermalSpectrum {
    std::vector<double> probabilities;
};

/// p_m = e^{-betaB m} / sum_m' e^{-betaB m'}, max-shifted.
ThermalSpectrum occupation_probabilities(SpinNumber j, double beta_b);

/// rho = U diag(p) U^dagger with U = rotated_eigenbasis(theta, phi).
ComplexMatrix gibbs_state(SpinNumber j, const LoopConfig& cfg, double phi);

}  // namespace uhlmann
