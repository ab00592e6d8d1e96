// integrator.hpp: Classical RK4 and step-doubling adaptive RK4 on flattened real states

#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "postmarkov/errors.hpp"
#include "postmarkov/generators.hpp"
#include "postmarkov/linalg.hpp"

namespace postmarkov {

struct OdeState {
    double t{0.0};
    Eigen::VectorXd y;
};

template <class F>
concept OdeRhs = std::invocable<const F&, double, const Eigen::VectorXd&> &&
                 std::convertible_to<std::invoke_result_t<const F&, double, const Eigen::VectorXd&>, Eigen::VectorXd>;

// Column-major (re, im) pairs.
inline Eigen::VectorXd flatten(const ComplexMatrix& m) {
    Eigen::VectorXd y(2 * m.size());
    for (Eigen::Index k = 0; k < m.size(); ++k) {
        y[2 * k] = m.data()[k].real();
        y[2 * k + 1] = m.data()[k].imag();
    }
    return y;
}

inline ComplexMatrix unflatten_matrix(const Eigen::VectorXd& y, Eigen::Index dim) {
    if (y.size() != 2 * dim * dim) throw UsageError("unflatten_matrix: coordinate count does not match dimension");
    ComplexMatrix m(dim, dim);
    for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = cplx{y[2 * k], y[2 * k + 1]};
    return m;
}

inline Eigen::VectorXd flatten(const GaussianState& s) {
    Eigen::VectorXd y(5);
    y << s.mq, s.mp, s.sqq, s.spp, s.sqp;
    return y;
}

inline GaussianState unflatten_gaussian(const Eigen::VectorXd& y) {
    if (y.size() != 5) throw UsageError("unflatten_gaussian: expected 5 coordinates");
    return {y[0], y[1], y[2], y[3], y[4]};
}

namespace detail {

template <OdeRhs F>
Eigen::VectorXd checked_eval(const F& f, double t, const Eigen::VectorXd& y) {
    Eigen::VectorXd d = f(t, y);
    if (!d.allFinite()) throw NumericalError("non-finite right-hand side at t = " + std::to_string(t), t);
    return d;
}

template <OdeRhs F>
Eigen::VectorXd rk4_advance(const F& f, double t, const Eigen::VectorXd& y, double h, const Eigen::VectorXd& k1) {
    const Eigen::VectorXd k2 = checked_eval(f, t + 0.5 * h, y + 0.5 * h * k1);
    const Eigen::VectorXd k3 = checked_eval(f, t + 0.5 * h, y + 0.5 * h * k2);
    const Eigen::VectorXd k4 = checked_eval(f, t + h, y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace detail

template <OdeRhs F>
OdeState rk4_step(const F& f, const OdeState& s, double h) {
    if (!(h > 0.0)) throw UsageError("rk4_step: step must be positive");
    const Eigen::VectorXd k1 = detail::checked_eval(f, s.t, s.y);
    return {s.t + h, detail::rk4_advance(f, s.t, s.y, h, k1)};
}

struct AdaptiveStats {
    long accepted{0};
    long rejected{0};
};

inline constexpr int kGrowAfterAccepts = 5;
inline constexpr double kGrowFactor = 1.5;
inline constexpr int kMaxStepFraction = 50; // h <= (t1 - t0) / 50
inline constexpr double kUnderflowFraction = 1e-12;

// Step-doubling RK4: a step of size h is compared against two steps of h/2 and accepted
// when the max-abs coordinate difference is within tol; the two half steps are kept.
// Steps are clipped so that every grid point is landed on exactly.
template <OdeRhs F>
std::vector<OdeState> integrate_adaptive(const F& f, const OdeState& s0, double t1, double tol,
                                         std::span<const double> grid, AdaptiveStats* stats = nullptr) {
    const double t0 = s0.t;
    if (!(t1 > t0)) throw UsageError("integrate_adaptive: t1 must exceed the initial time");
    if (!(tol > 0.0)) throw UsageError("integrate_adaptive: tolerance must be positive");
    if (!s0.y.allFinite()) throw UsageError("integrate_adaptive: non-finite initial state");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < t0 || grid[i] > t1) throw UsageError("integrate_adaptive: grid point outside [t0, t1]");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw UsageError("integrate_adaptive: grid must be strictly increasing");
    }

    const double h_max = (t1 - t0) / kMaxStepFraction;
    const double h_min = kUnderflowFraction * (t1 - t0);
    double h = h_max;
    int streak = 0;

    std::vector<OdeState> out;
    out.reserve(grid.size());
    OdeState cur = s0;

    for (double target : grid) {
        while (cur.t < target) {
            const double remaining = target - cur.t;
            const bool lands = h >= remaining;
            const double hs = lands ? remaining : h;

            const Eigen::VectorXd k1 = detail::checked_eval(f, cur.t, cur.y);
            const Eigen::VectorXd full = detail::rk4_advance(f, cur.t, cur.y, hs, k1);
            const Eigen::VectorXd mid = detail::rk4_advance(f, cur.t, cur.y, 0.5 * hs, k1);
            const double tm = cur.t + 0.5 * hs;
            const Eigen::VectorXd half =
                detail::rk4_advance(f, tm, mid, 0.5 * hs, detail::checked_eval(f, tm, mid));
            const double err = (full - half).cwiseAbs().maxCoeff();

            if (err <= tol) {
                cur.t = lands ? target : cur.t + hs;
                cur.y = half;
                if (stats) ++stats->accepted;
                if (++streak >= kGrowAfterAccepts) {
                    h = std::min(h * kGrowFactor, h_max);
                    streak = 0;
                }
            } else {
                if (stats) ++stats->rejected;
                streak = 0;
                h = 0.5 * hs;
                if (h < h_min)
                    throw StiffnessError("step size underflow at t = " + std::to_string(cur.t), cur.t);
            }
        }
        out.push_back(cur);
    }
    return out;
}

// n points spanning [t0, t1] with both ends included exactly.
inline std::vector<double> uniform_grid(double t0, double t1, std::size_t n) {
    if (n == 0) throw UsageError("uniform_grid: need at least one point");
    if (n == 1) return {t0};
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1);
    g.back() = t1;
    return g;
}

} // namespace postmarkov
