#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "uhlmann/chebyshev_phase.hpp"
#include "uhlmann/errors.hpp"
#include "uhlmann/uhlmann_core.hpp"

using namespace uhlmann;

namespace {

constexpr double kPi = std::numbers::pi;

double anti_hermitian_defect(const ComplexMatrix& a) { return (a + a.adjoint()).cwiseAbs().maxCoeff(); }

const double kSweepThetas[] = {0.1, kPi / 4, kPi / 2, 2.7};
const double kSweepBetas[] = {0.5, 2.0, 8.0};
const double kSweepPhis[] = {0.0, 1.0, 4.0};

}  // namespace

TEST_CASE("phase helpers") {
    CHECK(phase_from_trace(Complex(-2.0, 0.0)).phase == kPi);
    CHECK(phase_from_trace(Complex(-2.0, -0.0)).phase == kPi);
    CHECK(phase_from_trace(Complex(3.0, 0.0)).phase == 0.0);
    CHECK(phase_from_trace(Complex(0.0, 1.0)).phase == doctest::Approx(kPi / 2));
    CHECK(phase_from_trace(Complex(1e-10, 0.0)).singular);
    CHECK_FALSE(phase_from_trace(Complex(1e-8, 0.0)).singular);
    CHECK(phase_from_trace(Complex(0.0, 0.0)).singular);

    CHECK(wrap_phase(3 * kPi) == doctest::Approx(kPi));
    CHECK(wrap_phase(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_phase(-3 * kPi / 2) == doctest::Approx(kPi / 2));
    for (double a = -20.0; a < 20.0; a += 0.37) {
        const double w = wrap_phase(a);
        CHECK(w > -kPi);
        CHECK(w <= kPi);
        CHECK(oracle::wrapped_distance(w, a) < 1e-12);
    }
    CHECK(circle_distance(kPi, -kPi) < 1e-15);
    CHECK(circle_distance(0.1, 2 * kPi - 0.1) == doctest::Approx(0.2));
}

TEST_CASE("probability factor matches the sech identity") {
    for (int two_j = 1; two_j <= 6; ++two_j) {
        const SpinNumber j(two_j);
        for (double bb : {0.01, 0.5, 3.0, 20.0}) {
            const auto p = occupation_probabilities(j, bb).probabilities;
            for (int l = 0; l < j.dimension(); ++l) {
                for (int k = 0; k < j.dimension(); ++k) {
                    const double expected = 1.0 - 1.0 / std::cosh(bb * (j.m(l) - j.m(k)) / 2);
                    CHECK(std::abs(probability_factor(p[l], p[k]) - expected) < 1e-14);
                }
            }
        }
    }
    CHECK(probability_factor(0.0, 0.3) == 1.0);
    CHECK(probability_factor(0.2, 0.2) == 0.0);
}

TEST_CASE("connection_closed_form examples") {
    SUBCASE("theta = 0 gives the zero matrix") {
        for (int two_j = 1; two_j <= 6; ++two_j) {
            const ConnectionOneForm a = connection_closed_form(SpinNumber(two_j), LoopConfig(2.0, 0.0), 0.8);
            CHECK(a.coefficient.cwiseAbs().maxCoeff() == 0.0);
        }
    }
    SUBCASE("equator: -i eta Jz, independent of phi") {
        for (int two_j = 1; two_j <= 6; ++two_j) {
            const SpinNumber j(two_j);
            const AngularMomentum ops = angular_momentum_matrices(j);
            const LoopConfig cfg(3.0, kPi / 2);
            const double eta = 1.0 - 1.0 / std::cosh(1.5);
            for (double phi : {0.0, 1.1, 5.9}) {
                const ComplexMatrix a = connection_closed_form(j, cfg, phi).coefficient;
                CHECK(max_abs_diff(a, Complex(0.0, -eta) * ops.jz) < 1e-15);
            }
        }
    }
    SUBCASE("high temperature kills the connection") {
        const ComplexMatrix a = connection_closed_form(SpinNumber(3), LoopConfig(1e-9, 1.0), 0.3).coefficient;
        CHECK(a.cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("connection_spectral agrees with the closed form over the sweep") {
    double worst = 0.0;
    for (int two_j = 1; two_j <= 6; ++two_j) {
        const SpinNumber j(two_j);
        for (double theta : kSweepThetas) {
            for (double bb : kSweepBetas) {
                const LoopConfig cfg(bb, theta);
                for (double phi : kSweepPhis) {
                    const ComplexMatrix spectral = connection_spectral(j, cfg, phi, 1e-6).coefficient;
                    const ComplexMatrix closed = connection_closed_form(j, cfg, phi).coefficient;
                    CAPTURE(two_j);
                    CAPTURE(theta);
                    CAPTURE(bb);
                    CAPTURE(phi);
                    const double err = max_abs_diff(spectral, closed);
                    worst = std::max(worst, err);
                    CHECK(err < 1e-9);
                    CHECK(anti_hermitian_defect(spectral) < 1e-12);
                    CHECK(anti_hermitian_defect(closed) < 1e-12);

                    const ComplexMatrix no_diag = connection_spectral(j, cfg, phi, 1e-6, false).coefficient;
                    CHECK(max_abs_diff(spectral, no_diag) < 1e-13);
                }
            }
        }
    }
    MESSAGE("max connection mismatch: " << worst);
}

TEST_CASE("connection_spectral edge cases") {
    CHECK(connection_spectral(SpinNumber(4), LoopConfig(2.0, 0.0), 1.0).coefficient.cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(connection_spectral(SpinNumber(1), LoopConfig(2.0, 1.0), 0.0, 0.0), InvalidInput);

    // Spin 1/2 on the equator: only m - m' = +-1 couples, with weight 1 - sech(betaB/2).
    for (double bb : {0.3, 2.0, 7.0}) {
        const SpinNumber j(1);
        const auto p = occupation_probabilities(j, bb).probabilities;
        CHECK(std::abs(probability_factor(p[0], p[1]) - (1.0 - 1.0 / std::cosh(bb / 2))) < 1e-15);
        const ComplexMatrix a = connection_spectral(j, LoopConfig(bb, kPi / 2), 0.0).coefficient;
        const ComplexMatrix jz = angular_momentum_matrices(j).jz;
        CHECK(max_abs_diff(a, Complex(0.0, -(1.0 - 1.0 / std::cosh(bb / 2))) * jz) < 1e-9);
    }
}

TEST_CASE("holonomy_closed_form") {
    SUBCASE("high temperature limit is the identity") {
        for (int two_j = 1; two_j <= 8; ++two_j) {
            const HolonomyMatrix h = holonomy_closed_form(SpinNumber(two_j), LoopConfig(1e-9, 1.2));
            CHECK(max_abs_diff(h.matrix, ComplexMatrix::Identity(two_j + 1, two_j + 1)) < 1e-12);
        }
    }
    SUBCASE("spin 1/2 on the equator is diagonal") {
        const double bb = 4.0;
        const double eta = 1.0 - 1.0 / std::cosh(bb / 2);
        const HolonomyMatrix h = holonomy_closed_form(SpinNumber(1), LoopConfig(bb, kPi / 2));
        // -exp(-i 2 pi (eta - 1) m) for m = +-1/2
        CHECK(std::abs(h.matrix(0, 0) + std::polar(1.0, -kPi * (eta - 1))) < 1e-13);
        CHECK(std::abs(h.matrix(1, 1) + std::polar(1.0, kPi * (eta - 1))) < 1e-13);
        CHECK(std::abs(h.matrix(0, 1)) < 1e-14);
    }
    SUBCASE("unitary with unit determinant") {
        for (int two_j = 1; two_j <= 8; ++two_j) {
            for (double theta : kSweepThetas) {
                for (double bb : {0.5, 2.0, 8.0, 30.0}) {
                    const HolonomyMatrix h = holonomy_closed_form(SpinNumber(two_j), LoopConfig(bb, theta));
                    CHECK(oracle::is_unitary(h.matrix, 1e-9));
                    CHECK(std::abs(h.matrix.determinant() - 1.0) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("holonomy_path_ordered") {
    SUBCASE("rejects too few steps") {
        CHECK_THROWS_AS(holonomy_path_ordered(SpinNumber(1), LoopConfig(1.0, 1.0), 15), InvalidInput);
        CHECK_NOTHROW(holonomy_path_ordered(SpinNumber(1), LoopConfig(1.0, 1.0), 16));
    }
    SUBCASE("equator: commuting integrand, exact at any step count") {
        for (int two_j = 1; two_j <= 4; ++two_j) {
            const SpinNumber j(two_j);
            const LoopConfig cfg(2.5, kPi / 2);
            const ComplexMatrix closed = holonomy_closed_form(j, cfg).matrix;
            for (int steps : {16, 37, 256}) {
                for (auto scheme : {IntegrationScheme::midpoint, IntegrationScheme::magnus4}) {
                    CHECK(max_abs_diff(holonomy_path_ordered(j, cfg, steps, scheme).matrix, closed) < 1e-11);
                }
            }
        }
    }
    SUBCASE("midpoint rule converges at second order") {
        const SpinNumber j(2);
        const LoopConfig cfg(3.0, kPi / 3);
        const ComplexMatrix closed = holonomy_closed_form(j, cfg).matrix;
        const auto err = [&](int steps) {
            return max_abs_diff(holonomy_path_ordered(j, cfg, steps, IntegrationScheme::midpoint).matrix, closed);
        };
        const double e512 = err(512);
        const double e1024 = err(1024);
        const double e2048 = err(2048);
        MESSAGE("midpoint errors " << e512 << " " << e1024 << " " << e2048);
        CHECK(e1024 / e2048 == doctest::Approx(4.0).epsilon(0.05));
        CHECK(std::log2(e512 / e1024) >= 1.9);
        CHECK(std::log2(e1024 / e2048) >= 1.9);
    }
    SUBCASE("Magnus scheme converges at fourth order") {
        const SpinNumber j(4);
        const LoopConfig cfg(6.0, 0.9);
        const ComplexMatrix closed = holonomy_closed_form(j, cfg).matrix;
        const auto err = [&](int steps) { return max_abs_diff(holonomy_path_ordered(j, cfg, steps).matrix, closed); };
        const double e64 = err(64);
        const double e128 = err(128);
        MESSAGE("magnus errors " << e64 << " " << e128);
        CHECK(std::log2(e64 / e128) >= 3.8);
    }
    SUBCASE("default scheme at 4096 steps matches the closed form within 1e-8") {
        for (int two_j : {1, 2, 3, 6}) {
            for (double theta : {0.1, kPi / 4, 2.7}) {
                for (double bb : {0.5, 8.0, 16.0}) {
                    const SpinNumber j(two_j);
                    const LoopConfig cfg(bb, theta);
                    const HolonomyMatrix path = holonomy_path_ordered(j, cfg);
                    CHECK(max_abs_diff(path.matrix, holonomy_closed_form(j, cfg).matrix) < 1e-8);
                    CHECK(oracle::is_unitary(path.matrix, 1e-9));
                    CHECK(std::abs(path.matrix.determinant() - 1.0) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("uhlmann_phase_trace") {
    SUBCASE("high temperature: phase vanishes") {
        const PhaseResult r = uhlmann_phase_trace(SpinNumber(1), LoopConfig(0.01, kPi / 2));
        CHECK(std::abs(r.phase) < 1e-3);
        CHECK_FALSE(r.singular);
    }
    SUBCASE("low temperature spin 1/2 on the equator: pi") {
        const PhaseResult r = uhlmann_phase_trace(SpinNumber(1), LoopConfig(10.0, kPi / 2));
        CHECK(circle_distance(r.phase, kPi) < 1e-12);
    }
    SUBCASE("closed and path-ordered routes agree") {
        for (int two_j = 1; two_j <= 4; ++two_j) {
            for (double theta : {0.3, 1.0, 2.2}) {
                for (double bb : {0.7, 3.0, 9.0}) {
                    const SpinNumber j(two_j);
                    const LoopConfig cfg(bb, theta);
                    const PhaseResult a = uhlmann_phase_trace(j, cfg, HolonomyMethod::closed);
                    const PhaseResult b = uhlmann_phase_trace(j, cfg, HolonomyMethod::path_ordered, 4096);
                    REQUIRE_FALSE(a.singular);
                    CHECK(circle_distance(a.phase, b.phase) < 1e-7);
                }
            }
        }
    }
    SUBCASE("Tr[rho H] is a positive multiple of (-1)^{2j} U_2j(z)") {
        for (int two_j = 1; two_j <= 6; ++two_j) {
            for (double theta : {0.2, 1.4, kPi / 2, 2.6}) {
                for (double bb : {0.5, 2.0, 6.0}) {
                    const SpinNumber j(two_j);
                    const LoopConfig cfg(bb, theta);
                    const Complex trace = (gibbs_state(j, cfg, 0.0) * holonomy_closed_form(j, cfg).matrix).trace();
                    const Complex ratio = signed_chebyshev_trace(j, z_variable(cfg).value) / trace;
                    CHECK(ratio.real() > 0.0);
                    CHECK(std::abs(ratio.imag()) < 1e-9 * std::abs(ratio));
                }
            }
        }
    }
}
