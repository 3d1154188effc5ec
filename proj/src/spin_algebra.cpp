#include "uhlmann/spin_algebra.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "uhlmann/errors.hpp"

namespace uhlmann {

namespace {

int parse_int(std::string_view text, std::string_view whole) {
    int value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) {
        throw InvalidInput("cannot parse spin '" + std::string(whole) + "'");
    }
    return value;
}

double one_norm(const ComplexMatrix& m) {
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

SpinNumber::SpinNumber(int two_j) : two_j_(two_j) {
    if (two_j < 1) throw InvalidInput("two_j must be ≥ 1 (got " + std::to_string(two_j) + ")");
    if (two_j > kMaxTwoJ) {
        throw InvalidInput("two_j must be ≤ " + std::to_string(kMaxTwoJ) + " (got " +
                           std::to_string(two_j) + ")");
    }
}

SpinNumber SpinNumber::parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return SpinNumber(2 * parse_int(text, text));
    const int num = parse_int(text.substr(0, slash), text);
    const int den = parse_int(text.substr(slash + 1), text);
    if (den == 1) return SpinNumber(2 * num);
    if (den != 2) throw InvalidInput("spin '" + std::string(text) + "' must be an integer or n/2");
    return SpinNumber(num);
}

std::string SpinNumber::to_string() const {
    if (two_j_ % 2 == 0) return std::to_string(two_j_ / 2);
    return std::to_string(two_j_) + "/2";
}

SinCos polar_sincos(double theta) noexcept {
    constexpr double half_pi = std::numbers::pi / 2;
    // Reflections keep the arguments exactly zero at the doubles pi/2 and pi.
    const double s = theta <= half_pi ? std::sin(theta) : std::sin(std::numbers::pi - theta);
    const double c = std::sin(half_pi - theta);
    return {s, c};
}

AngularMomentum angular_momentum_matrices(SpinNumber j) {
    const int dim = j.dimension();
    const double jj1 = j.value() * (j.value() + 1.0);

    ComplexMatrix raise = ComplexMatrix::Zero(dim, dim);
    for (int col = 1; col < dim; ++col) {
        const double m = j.m(col);
        raise(col - 1, col) = std::sqrt(jj1 - m * (m + 1.0));
    }
    const ComplexMatrix lower = raise.adjoint();

    AngularMomentum out;
    out.jx = 0.5 * (raise + lower);
    out.jy = Complex(0.0, -0.5) * (raise - lower);
    out.jz = ComplexMatrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) out.jz(i, i) = j.m(i);
    return out;
}

ComplexMatrix matrix_exponential(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) throw InvalidInput("matrix_exponential: matrix must be square");
    if (!(tol > 0.0) || !std::isfinite(tol)) throw InvalidInput("matrix_exponential: tol must be > 0");
    if (!m.allFinite()) throw InvalidInput("matrix_exponential: non-finite entries");

    const Eigen::Index n = m.rows();
    const double norm = one_norm(m);
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));

    const ComplexMatrix scaled = m / std::ldexp(1.0, squarings);
    const double scaled_norm = norm / std::ldexp(1.0, squarings);

    ComplexMatrix result = ComplexMatrix::Identity(n, n);
    ComplexMatrix term = ComplexMatrix::Identity(n, n);
    // With ||A|| <= 1/2 the tail after term k is bounded by term k itself.
    const double cutoff = 1e-2 * tol * std::max(scaled_norm, 1e-300);
    for (int k = 1; k <= 60; ++k) {
        term = (term * scaled) / static_cast<double>(k);
        result += term;
        if (one_norm(term) <= cutoff) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

Eigen::VectorXcd z_rotation_phases(SpinNumber j, double phi) {
    Eigen::VectorXcd out(j.dimension());
    for (int i = 0; i < j.dimension(); ++i) out(i) = std::polar(1.0, -phi * j.m(i));
    return out;
}

ComplexMatrix rotated_eigenbasis(SpinNumber j, double theta, double phi) {
    const AngularMomentum ops = angular_momentum_matrices(j);
    ComplexMatrix u = matrix_exponential(Complex(0.0, -theta) * ops.jy);
    const int dim = j.dimension();
    // e^{-i phi Jz} d(theta) e^{i phi Jz} only dresses entry (a, b) with e^{-i phi (m_a - m_b)}.
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            if (a == b) continue;
            u(a, b) *= std::polar(1.0, -phi * (j.m(a) - j.m(b)));
        }
    }
    return u;
}

ComplexMatrix field_direction_operator(SpinNumber j, double theta, double phi) {
    const AngularMomentum ops = angular_momentum_matrices(j);
    const SinCos t = polar_sincos(theta);
    return (t.sin * std::cos(phi)) * ops.jx + (t.sin * std::sin(phi)) * ops.jy + t.cos * ops.jz;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace uhlmann
