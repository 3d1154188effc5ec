#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace uhlmann {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Spin quantum number j, stored exactly as the integer 2j.
///
/// Valid range is 1 <= 2j <= 31, i.e. Hilbert-space dimension 2..32.
class SpinNumber {
public:
    static constexpr int kMaxTwoJ = 31;

    explicit SpinNumber(int two_j);

    /// Parses "1/2", "3/2", "1", "2" (denominator must be 2 if present).
    static SpinNumber parse(std::string_view text);

    int two_j() const noexcept { return two_j_; }
    int dimension() const noexcept { return two_j_ + 1; }
    double value() const noexcept { return 0.5 * two_j_; }
    bool is_half_integer() const noexcept { return two_j_ % 2 == 1; }

    /// (-1)^{2j}
    double pauli_sign() const noexcept { return is_half_integer() ? -1.0 : 1.0; }

    /// Magnetic quantum number at basis index `index` (descending order: index 0 is m = j).
    double m(int index) const noexcept { return 0.5 * (two_j_ - 2 * index); }

    /// "1/2", "1", "3/2", ...
    std::string to_string() const;

    friend bool operator==(SpinNumber a, SpinNumber b) noexcept { return a.two_j_ == b.two_j_; }

private:
    int two_j_;
};

struct SinCos {
    double sin;
    double cos;
};

/// sin and cos of a polar angle in [0, pi], exact at 0, pi/2 and pi.
SinCos polar_sincos(double theta) noexcept;

struct AngularMomentum {
    ComplexMatrix jx;
    ComplexMatrix jy;
    ComplexMatrix jz;
};

/// Jx, Jy, Jz for spin j in the |j,m> basis with m = j, j-1, ..., -j (hbar = 1).
AngularMomentum angular_momentum_matrices(SpinNumber j);

inline constexpr double kDefaultExpTolerance = 1e-12;

/// exp(M) by scaling and squaring around a truncated Taylor series.
///
/// The series is cut once the next term falls below `tol` relative to the
/// scaled identity, so the backward error is bounded by roughly `tol`.
/// Throws InvalidInput on non-finite entries, a non-square matrix or tol <= 0.
ComplexMatrix matrix_exponential(const ComplexMatrix& m, double tol = kDefaultExpTolerance);

/// diag(e^{-i phi m}) in the descending-m basis, i.e. exp(-i phi Jz) evaluated exactly.
Eigen::VectorXcd z_rotation_phases(SpinNumber j, double phi);

/// Unitary whose column `index` is |j,m; n> = e^{-i phi Jz} e^{-i theta Jy} e^{i phi Jz} |j,m>.
ComplexMatrix rotated_eigenbasis(SpinNumber j, double theta, double phi);

/// n.J for n = (sin theta cos phi, sin theta sin phi, cos theta).
ComplexMatrix field_direction_operator(SpinNumber j, double theta, double phi);

/// Largest absolute entry of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace uhlmann
