// support.hpp: Random operators and small helpers shared by the test programs

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "postmarkov/postmarkov.hpp"

namespace pmtest {

using namespace postmarkov;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
    cplx complex_normal() { return {normal(), normal()}; }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

    ComplexMatrix matrix(Eigen::Index n) {
        ComplexMatrix m(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i) m(i, j) = complex_normal();
        return m;
    }

    // Exactly Hermitian: (A + A+) has conjugate-symmetric entries bit for bit.
    ComplexMatrix hermitian(Eigen::Index n) {
        const ComplexMatrix a = matrix(n);
        return a + a.adjoint();
    }

    // Full-rank density operator B B+ / Tr(B B+).
    ComplexMatrix density(Eigen::Index n) {
        const ComplexMatrix b = matrix(n);
        ComplexMatrix r = b * b.adjoint();
        r /= r.trace().real();
        return 0.5 * (r + r.adjoint());
    }

    ComplexVector unit_vector(Eigen::Index n) {
        ComplexVector v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = complex_normal();
        return v / v.norm();
    }

    CoefficientSet coefficients() { return {complex_normal(), complex_normal(), complex_normal(), 0.0}; }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline ComplexVector ket(cplx a_e, cplx a_g) {
    ComplexVector v(2);
    v << a_e, a_g;
    return v / v.norm();
}

inline ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

} // namespace pmtest
