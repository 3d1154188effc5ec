#include "uhlmann/thermal_state.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "uhlmann/errors.hpp"

namespace uhlmann {

namespace {

void require_beta_b(double beta_b) {
    if (!std::isfinite(beta_b) || !(beta_b > 0.0)) {
        std::ostringstream msg;
        msg << "beta_b must be finite and > 0 (got " << beta_b << ")";
        throw InvalidInput(msg.str());
    }
}

}  // namespace

LoopConfig::LoopConfig(double beta_b, double theta) : beta_b_(beta_b), theta_(theta) {
    require_beta_b(beta_b);
    if (!std::isfinite(theta) || theta < 0.0 || theta > std::numbers::pi) {
        std::ostringstream msg;
        msg << "theta must lie in [0, pi] (got " << theta << ")";
        throw InvalidInput(msg.str());
    }
}

ThermalSpectrum occupation_probabilities(SpinNumber j, double beta_b) {
    require_beta_b(beta_b);
    const int dim = j.dimension();
    // Largest exponent -betaB*m belongs to m = -j.
    const double shift = beta_b * j.value();
    ThermalSpectrum out;
    out.probabilities.resize(dim);
    double total = 0.0;
    for (int i = 0; i < dim; ++i) {
        out.probabilities[i] = std::exp(-beta_b * j.m(i) - shift);
        total += out.probabilities[i];
    }
    for (double& p : out.probabilities) p /= total;
    return out;
}

ComplexMatrix gibbs_state(SpinNumber j, const LoopConfig& cfg, double phi) {
    const ThermalSpectrum spectrum = occupation_probabilities(j, cfg.beta_b());
    const ComplexMatrix u = rotated_eigenbasis(j, cfg.theta(), phi);
    Eigen::VectorXcd p(j.dimension());
    for (int i = 0; i < j.dimension(); ++i) p(i) = spectrum.probabilities[i];
    ComplexMatrix rho = u * p.asDiagonal() * u.adjoint();
    // Hermitian by construction; symmetrize away the rounding.
    return 0.5 * (rho + rho.adjoint());
}

}  // namespace uhlmann
