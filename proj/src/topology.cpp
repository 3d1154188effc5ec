#include "uhlmann/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "uhlmann/errors.hpp"
#include "uhlmann/parallel.hpp"

namespace uhlmann {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kIntegerSlack = 0.01;

double bisect(const std::function<double(double)>& g, double a, double b, double ga, double tol) {
    for (int iter = 0; iter < 200 && (b - a) > tol; ++iter) {
        const double mid = 0.5 * (a + b);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (ga < 0.0)) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

void check_not_critical(const CriticalTable& table, double beta_b) {
    for (const CriticalEntry& e : table.entries) {
        if (std::abs(beta_b - e.beta_b) < kCriticalExclusion) {
            std::ostringstream msg;
            msg.precision(12);
            msg << "beta_b = " << beta_b << " is within " << kCriticalExclusion
                << " of the critical value " << e.beta_b << " (k = " << e.k << ")";
            throw SingularInput(msg.str());
        }
    }
}

}  // namespace

double critical_condition(double beta_b) {
    const double c = std::cosh(0.5 * beta_b);
    return c * std::cos(std::numbers::pi / c);
}

std::vector<double> solve_critical_condition(double target, ScanWindow window, int scan_steps, double tol) {
    if (!(window.lo > 0.0) || !(window.hi > window.lo) || !std::isfinite(window.hi)) {
        throw InvalidInput("scan window must satisfy 0 < lo < hi");
    }
    if (scan_steps < 2) throw InvalidInput("scan_steps must be >= 2");
    if (!(tol > 0.0) || tol > 1e-10) throw InvalidInput("root tolerance must be in (0, 1e-10]");

    const auto g = [target](double x) { return critical_condition(x) - target; };
    const double h = (window.hi - window.lo) / scan_steps;

    std::vector<double> roots;
    double x0 = window.lo;
    double g0 = g(x0);
    if (g0 == 0.0) roots.push_back(x0);
    for (int i = 1; i <= scan_steps; ++i) {
        const double x1 = i == scan_steps ? window.hi : window.lo + i * h;
        const double g1 = g(x1);
        if (g1 == 0.0) {
            roots.push_back(x1);
        } else if (g0 != 0.0 && (g0 < 0.0) != (g1 < 0.0)) {
            roots.push_back(bisect(g, x0, x1, g0, tol));
        }
        x0 = x1;
        g0 = g1;
    }
    return roots;
}

CriticalTable critical_temperatures(SpinNumber j, ScanWindow window, int scan_steps, double tol) {
    CriticalTable table{j, {}, {}};
    const std::vector<double> targets = chebyshev_roots(j);
    for (int k = 1; k <= j.two_j(); ++k) {
        const double target = targets[k - 1];
        const std::vector<double> roots = solve_critical_condition(target, window, scan_steps, tol);
        if (roots.empty()) {
            std::ostringstream msg;
            msg << "no critical beta_b for k = " << k << " (root " << target << ") in ["
                << window.lo << ", " << window.hi << "]";
            throw MissingRoot(k, msg.str());
        }
        if (roots.size() > 1) {
            table.warnings.push_back("k = " + std::to_string(k) + ": " + std::to_string(roots.size()) +
                                     " roots found in the scan window");
        }
        for (double x : roots) table.entries.push_back({k, x, target});
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [](const CriticalEntry& a, const CriticalEntry& b) { return a.beta_b < b.beta_b; });
    return table;
}

PhaseAccumulation accumulate_phase(const std::function<Complex(double)>& curve, int initial_grid,
                                   int max_refine) {
    if (initial_grid < 2) throw InvalidInput("winding grid must have at least 2 intervals");
    if (max_refine < 0) throw InvalidInput("max_refine must be >= 0");

    const auto sample = [&](double theta) {
        const Complex w = curve(theta);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
            throw InvalidInput("curve value is not finite");
        }
        if (w == Complex(0.0, 0.0)) throw SingularInput("curve passes through the origin");
        return w;
    };

    PhaseAccumulation acc;
    const std::function<double(double, Complex, double, Complex, int)> segment =
        [&](double a, Complex wa, double b, Complex wb, int depth) -> double {
        const double step = std::arg(wb / wa);
        if (std::abs(step) < kJumpThreshold) {
            acc.max_step = std::max(acc.max_step, std::abs(step));
            return step;
        }
        if (depth >= max_refine) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "phase step " << step << " on theta in [" << a << ", " << b
                << "] still above threshold after " << max_refine << " refinements";
            throw UnresolvedWinding(msg.str());
        }
        const double mid = 0.5 * (a + b);
        const Complex wm = sample(mid);
        return segment(a, wa, mid, wm, depth + 1) + segment(mid, wm, b, wb, depth + 1);
    };

    const double h = std::numbers::pi / initial_grid;
    double a = 0.0;
    Complex wa = sample(a);
    for (int i = 1; i <= initial_grid; ++i) {
        const double b = i == initial_grid ? std::numbers::pi : i * h;
        const Complex wb = sample(b);
        acc.total += segment(a, wa, b, wb, 0);
        a = b;
        wa = wb;
    }
    return acc;
}

WindingResult winding_number(const CriticalTable& table, double beta_b, int initial_grid, int max_refine) {
    const SpinNumber j = table.j;
    check_not_critical(table, beta_b);

    const PhaseAccumulation acc = accumulate_phase(
        [&](double theta) { return signed_chebyshev_trace(j, z_variable(LoopConfig(beta_b, theta)).value); },
        initial_grid, max_refine);

    WindingResult r;
    r.raw_integral = acc.total / kTwoPi;
    r.max_step_jump = acc.max_step;
    const double rounded = std::round(r.raw_integral);
    if (std::abs(r.raw_integral - rounded) >= kIntegerSlack) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "winding integral " << r.raw_integral << " is not within " << kIntegerSlack << " of an integer";
        throw UnresolvedWinding(msg.str());
    }
    r.n_u = static_cast<int>(rounded);
    if (r.n_u < 0 || r.n_u > j.two_j()) {
        throw TopologyViolation("winding number " + std::to_string(r.n_u) + " outside [0, " +
                                std::to_string(j.two_j()) + "] at beta_b = " + std::to_string(beta_b));
    }
    return r;
}

WindingResult winding_number(SpinNumber j, double beta_b, int initial_grid, int max_refine) {
    return winding_number(critical_temperatures(j), beta_b, initial_grid, max_refine);
}

int roots_enclosed(SpinNumber j, double beta_b, int grid) {
    check_not_critical(critical_temperatures(j), beta_b);
    int count = 0;
    for (double root : chebyshev_roots(j)) {
        const PhaseAccumulation acc = accumulate_phase(
            [&](double theta) { return z_variable(LoopConfig(beta_b, theta)).value - root; }, grid,
            kDefaultMaxRefine);
        const double turns = acc.total / kTwoPi;
        const double rounded = std::round(turns);
        if (std::abs(turns - rounded) >= kIntegerSlack) {
            throw UnresolvedWinding("winding of z(theta) around root " + std::to_string(root) +
                                    " is not an integer");
        }
        if (std::abs(rounded) > 1.0) {
            throw TopologyViolation("z(theta) winds " + std::to_string(rounded) +
                                    " times around a root; a simple closed curve winds at most once");
        }
        if (rounded != 0.0) ++count;
    }
    return count;
}

std::vector<StaircasePoint> staircase(SpinNumber j, const std::vector<double>& beta_b_grid) {
    const CriticalTable table = critical_temperatures(j);
    std::vector<StaircasePoint> out(beta_b_grid.size());
    parallel_for(beta_b_grid.size(), [&](std::size_t i) {
        out[i] = {beta_b_grid[i], winding_number(table, beta_b_grid[i])};
    });
    return out;
}

}  // namespace uhlmann
