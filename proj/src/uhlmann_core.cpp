#include "uhlmann/uhlmann_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uhlmann/errors.hpp"

namespace uhlmann {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{-i phi Jz} X e^{i phi Jz}: entry (a, b) picks up e^{-i phi (m_a - m_b)}.
ComplexMatrix rotate_about_z(SpinNumber j, const ComplexMatrix& x, double phi) {
    ComplexMatrix out = x;
    for (int a = 0; a < j.dimension(); ++a) {
        for (int b = 0; b < j.dimension(); ++b) {
            if (a != b) out(a, b) *= std::polar(1.0, -phi * (j.m(a) - j.m(b)));
        }
    }
    return out;
}

}  // namespace

double wrap_phase(double angle) {
    double w = std::remainder(angle, kTwoPi);
    if (w <= -std::numbers::pi) w += kTwoPi;
    return w;
}

double circle_distance(double a, double b) {
    return std::abs(std::remainder(a - b, kTwoPi));
}

PhaseResult phase_from_trace(Complex trace) {
    PhaseResult r;
    r.trace_magnitude = std::abs(trace);
    r.singular = !(r.trace_magnitude >= kSingularThreshold);
    r.phase = wrap_phase(std::arg(trace));
    return r;
}

double eta_factor(const LoopConfig& cfg) {
    const double x = 0.5 * cfg.beta_b();
    // 1 - sech(x) = 2 sinh^2(x/2) / cosh(x), free of cancellation at small x.
    const double sh = std::sinh(0.5 * x);
    const double one_minus_sech = std::isfinite(std::cosh(x)) ? 2.0 * sh * sh / std::cosh(x) : 1.0;
    return cfg.trig().sin * one_minus_sech;
}

double probability_factor(double p_l, double p_k) {
    const double hi = std::max(p_l, p_k);
    const double lo = std::min(p_l, p_k);
    if (hi == lo) return 0.0;
    const double r = std::sqrt(lo / hi);
    return (1.0 - r) * (1.0 - r) / (1.0 + r * r);
}

ConnectionOneForm connection_closed_form(SpinNumber j, const LoopConfig& cfg, double phi) {
    const AngularMomentum ops = angular_momentum_matrices(j);
    const SinCos t = cfg.trig();
    const double eta = eta_factor(cfg);
    const ComplexMatrix jx_rotated = rotate_about_z(j, ops.jx, phi);
    return {Complex(0.0, -eta) * (t.sin * ops.jz - t.cos * jx_rotated)};
}

ConnectionOneForm connection_spectral(SpinNumber j, const LoopConfig& cfg, double phi,
                                      double fd_step, bool include_diagonal) {
    if (!(fd_step > 0.0)) throw InvalidInput("connection_spectral: fd_step must be > 0");
    const int dim = j.dimension();
    const ThermalSpectrum spectrum = occupation_probabilities(j, cfg.beta_b());

    const ComplexMatrix basis = rotated_eigenbasis(j, cfg.theta(), phi);
    // Divide by the spacing the doubles actually have, not 2*fd_step.
    const double phi_plus = phi + fd_step;
    const double phi_minus = phi - fd_step;
    const ComplexMatrix forward = rotated_eigenbasis(j, cfg.theta(), phi_plus);
    const ComplexMatrix backward = rotated_eigenbasis(j, cfg.theta(), phi_minus);
    const ComplexMatrix d_basis = (forward - backward) / (phi_plus - phi_minus);

    // <l| d|k> in the eigenbasis, weighted by the occupation factor. The exact
    // overlap is anti-Hermitian; keeping only that part drops most of the
    // difference-quotient error.
    ComplexMatrix overlap = basis.adjoint() * d_basis;
    overlap = (0.5 * (overlap - overlap.adjoint())).eval();
    for (int l = 0; l < dim; ++l) {
        for (int k = 0; k < dim; ++k) {
            if (l == k && !include_diagonal) {
                overlap(l, k) = 0.0;
                continue;
            }
            overlap(l, k) *= probability_factor(spectrum.probabilities[l], spectrum.probabilities[k]);
        }
    }
    const ComplexMatrix a = basis * overlap * basis.adjoint();
    return {0.5 * (a - a.adjoint())};
}

HolonomyMatrix holonomy_closed_form(SpinNumber j, const LoopConfig& cfg) {
    const AngularMomentum ops = angular_momentum_matrices(j);
    const SinCos t = cfg.trig();
    const double eta = eta_factor(cfg);
    const ComplexMatrix generator = (eta * t.sin - 1.0) * ops.jz - (eta * t.cos) * ops.jx;
    return {j.pauli_sign() * matrix_exponential(Complex(0.0, -kTwoPi) * generator)};
}

HolonomyMatrix holonomy_path_ordered(SpinNumber j, const LoopConfig& cfg, int steps,
                                     IntegrationScheme scheme) {
    if (steps < kMinOracleSteps) {
        throw InvalidInput("holonomy_path_ordered: steps must be >= " + std::to_string(kMinOracleSteps));
    }
    const double h = kTwoPi / steps;
    const int dim = j.dimension();
    ComplexMatrix product = ComplexMatrix::Identity(dim, dim);

    // Gauss-Legendre nodes on a unit slice.
    const double offset = std::sqrt(3.0) / 6.0;
    const double commutator_weight = std::sqrt(3.0) / 12.0 * h * h;

    for (int k = 0; k < steps; ++k) {
        const double start = k * h;
        ComplexMatrix omega;
        if (scheme == IntegrationScheme::midpoint) {
            omega = connection_closed_form(j, cfg, start + 0.5 * h).coefficient * h;
        } else {
            const ComplexMatrix a1 = connection_closed_form(j, cfg, start + (0.5 - offset) * h).coefficient;
            const ComplexMatrix a2 = connection_closed_form(j, cfg, start + (0.5 + offset) * h).coefficient;
            omega = (0.5 * h) * (a1 + a2) - commutator_weight * (a1 * a2 - a2 * a1);
        }
        product = matrix_exponential(omega) * product;
    }
    return {product};
}

PhaseResult uhlmann_phase_trace(SpinNumber j, const LoopConfig& cfg, HolonomyMethod method, int steps) {
    const HolonomyMatrix h = method == HolonomyMethod::closed ? holonomy_closed_form(j, cfg)
                                                              : holonomy_path_ordered(j, cfg, steps);
    const ComplexMatrix rho = gibbs_state(j, cfg, 0.0);
    return phase_from_trace((rho * h.matrix).trace());
}

}  // namespace uhlmann
