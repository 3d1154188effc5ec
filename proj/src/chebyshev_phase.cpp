#include "uhlmann/chebyshev_phase.hpp"

#include <cmath>
#include <numbers>

#include "uhlmann/errors.hpp"

namespace uhlmann {

namespace {

Complex int_power(Complex base, int n) {
    Complex out(1.0, 0.0);
    for (int i = 0; i < n; ++i) out *= base;
    return out;
}

}  // namespace

ZPoint z_variable(const LoopConfig& cfg) {
    const double x = 0.5 * cfg.beta_b();
    const SinCos t = cfg.trig();
    const double sech = 1.0 / std::cosh(x);
    const double tanh = std::tanh(x);

    // C^2 = 1 - sin^2 tanh^2 = cos^2 + sin^2 sech^2. Working with 1 - C keeps
    // sin(pi C) exactly zero at the poles and Im z exactly zero on the equator.
    const double c = std::sqrt(t.cos * t.cos + t.sin * t.sin * sech * sech);
    const double one_minus_c = t.sin * t.sin * tanh * tanh / (1.0 + c);
    const double cos_pi_c = -std::cos(std::numbers::pi * one_minus_c);
    const double sin_pi_c = std::sin(std::numbers::pi * one_minus_c);

    ZPoint out;
    out.c_factor = c;
    out.value = Complex(std::cosh(x) * cos_pi_c, -std::sinh(x) * sin_pi_c * t.cos / c);
    return out;
}

Complex chebyshev_u(int n, Complex z) {
    if (n < 0) throw InvalidInput("chebyshev_u: order must be >= 0 (got " + std::to_string(n) + ")");
    Complex prev(1.0, 0.0);
    if (n == 0) return prev;
    Complex cur = 2.0 * z;
    for (int k = 1; k < n; ++k) {
        const Complex next = 2.0 * z * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

TraceValue trace_via_lambda(SpinNumber j, Complex z, SqrtBranch branch) {
    if (std::abs(z - 1.0) <= kDegenerateRadius || std::abs(z + 1.0) <= kDegenerateRadius) {
        throw DegenerateEigenvalue("trace_via_lambda: z is within the degenerate radius of +-1");
    }
    Complex root = std::sqrt(z * z - 1.0);
    if (branch == SqrtBranch::flipped) root = -root;
    const Complex lambda = z + root;
    const Complex lambda_inv = z - root;  // lambda * (z - root) = 1
    const int n = j.two_j() + 1;
    return {(int_power(lambda, n) - int_power(lambda_inv, n)) / (lambda - lambda_inv)};
}

Complex signed_chebyshev_trace(SpinNumber j, Complex z) {
    return j.pauli_sign() * chebyshev_u(j.two_j(), z);
}

PhaseResult uhlmann_phase_closed(SpinNumber j, const LoopConfig& cfg) {
    return phase_from_trace(signed_chebyshev_trace(j, z_variable(cfg).value));
}

std::vector<double> chebyshev_roots(SpinNumber j) {
    std::vector<double> roots;
    roots.reserve(j.two_j());
    for (int k = 1; k <= j.two_j(); ++k) {
        roots.push_back(std::cos(k * std::numbers::pi / (j.two_j() + 1)));
    }
    return roots;
}

}  // namespace uhlmann
