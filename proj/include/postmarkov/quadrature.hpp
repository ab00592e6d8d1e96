// quadrature.hpp: Adaptive Simpson with an absolute tolerance and a depth cap

#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "postmarkov/errors.hpp"

namespace postmarkov::quad {

inline constexpr int kMaxDepth = 30;
// Forced bisections before the error test may accept, so a lucky coarse estimate
// on a sharply decaying integrand is not taken at face value.
inline constexpr int kMinDepth = 3;

namespace detail {

template <class F, class V>
V simpson_step(const F& f, double a, double b, const V& fa, const V& fm, const V& fb, const V& whole,
               double tol, int depth, const std::string& what) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const V flm = f(lm);
    const V frm = f(rm);
    const V left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const V right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const V delta = left + right - whole;
    if (depth >= kMinDepth && std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= kMaxDepth)
        throw NumericalError("adaptive Simpson did not reach tolerance for " + what + " on [" +
                             std::to_string(a) + ", " + std::to_string(b) + "]");
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, what) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, what);
}

} // namespace detail

// Integrates f over [a, b] to absolute tolerance tol. V may be double or std::complex<double>.
template <class F>
auto adaptive_simpson(const F& f, double a, double b, double tol, const std::string& what = "integral") {
    using V = decltype(f(a));
    if (!(tol > 0.0)) throw UsageError("adaptive_simpson: tolerance must be positive");
    if (b == a) return V{};
    const V fa = f(a);
    const V fb = f(b);
    const V fm = f(0.5 * (a + b));
    const V whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, 0, what);
}

} // namespace postmarkov::quad
