// linalg.hpp: Dense complex operators, Pauli/oscillator constructors and Hermitian spectra

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "postmarkov/errors.hpp"

namespace postmarkov {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};

inline bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

inline void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw UsageError(std::string(what) + ": matrix must be square with dim >= 1");
}

inline void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    require_square(a, what);
    require_square(b, what);
    if (a.rows() != b.rows())
        throw UsageError(std::string(what) + ": dimension mismatch (" + std::to_string(a.rows()) +
                         " vs " + std::to_string(b.rows()) + ")");
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "commutator");
    return a * b - b * a;
}

inline ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "anticommutator");
    return a * b + b * a;
}

// max |m_ij - conj(m_ji)|
inline double hermiticity_error(const ComplexMatrix& m) {
    double err = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i; j < m.cols(); ++j)
            err = std::max(err, std::abs(m(i, j) - std::conj(m(j, i))));
    return err;
}

inline double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

namespace ops {

// Basis: index 0 = |e>, index 1 = |g>.
inline ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

inline ComplexMatrix sigma_x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

inline ComplexMatrix sigma_y() {
    ComplexMatrix m(2, 2);
    m << 0.0, -kI, kI, 0.0;
    return m;
}

inline ComplexMatrix sigma_z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

// |g><e|
inline ComplexMatrix sigma_minus() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

// |e><g|
inline ComplexMatrix sigma_plus() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

// Truncated oscillator ladder operator on levels 0..n-1.
inline ComplexMatrix annihilation(Eigen::Index n) {
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

// q = (a + a^+)/sqrt(2 w0), unit mass
inline ComplexMatrix position(Eigen::Index n, double omega0) {
    ComplexMatrix a = annihilation(n);
    return (a + a.adjoint()) / std::sqrt(2.0 * omega0);
}

// p = i sqrt(w0/2) (a^+ - a)
inline ComplexMatrix momentum(Eigen::Index n, double omega0) {
    ComplexMatrix a = annihilation(n);
    return kI * std::sqrt(omega0 / 2.0) * (a.adjoint() - a);
}

} // namespace ops

struct HermitianEigensystem {
    std::vector<double> values; // ascending
    ComplexMatrix vectors;      // column k belongs to values[k]
};

inline constexpr int kJacobiSweepBudget = 50;

// Cyclic Jacobi for complex Hermitian matrices. Each (p,q) rotation first removes
// the phase of m_pq, then applies the real symmetric Jacobi rotation.
inline HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m) {
    require_square(m, "hermitian_eigenvalues");
    if (!all_finite(m)) throw UsageError("hermitian_eigenvalues: non-finite entries");
    if (hermiticity_error(m) > 1e-8) throw UsageError("hermitian_eigenvalues: matrix is not Hermitian");

    const Eigen::Index n = m.rows();
    ComplexMatrix a = 0.5 * (m + m.adjoint());
    ComplexMatrix v = ComplexMatrix::Identity(n, n);

    const double scale = std::max(max_abs(a), 1e-300);
    auto off_norm = [&] {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    int sweep = 0;
    while (off_norm() > 1e-15 * scale) {
        if (++sweep > kJacobiSweepBudget)
            throw NumericalError("hermitian_eigenvalues: Jacobi did not converge in " +
                                 std::to_string(kJacobiSweepBudget) + " sweeps");
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double b = std::abs(a(p, q));
                if (b <= 1e-300) continue;
                const cplx phase = a(p, q) / b; // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * b);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // U restricted to (p,q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                const cplx u_pp = c, u_pq = s;
                const cplx u_qp = -s * std::conj(phase), u_qq = c * std::conj(phase);
                for (Eigen::Index k = 0; k < n; ++k) { // a <- a U
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * u_pp + akq * u_qp;
                    a(k, q) = akp * u_pq + akq * u_qq;
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * u_pp + vkq * u_qp;
                    v(k, q) = vkp * u_pq + vkq * u_qq;
                }
                for (Eigen::Index k = 0; k < n; ++k) { // a <- U^+ a
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
                    a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEigensystem out;
    out.values.reserve(static_cast<std::size_t>(n));
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        out.values.push_back(a(src, src).real());
        out.vectors.col(k) = v.col(src);
    }
    return out;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    return hermitian_eigensystem(m).values;
}

// Hermitian, unit-trace matrix. Positivity is deliberately not checked.
class DensityOperator {
public:
    static constexpr double kHermiticityTol = 1e-10;
    static constexpr double kTraceTol = 1e-9;

    explicit DensityOperator(ComplexMatrix m) : m_(std::move(m)) {
        require_square(m_, "DensityOperator");
        if (!all_finite(m_)) throw UsageError("DensityOperator: non-finite entries");
        if (hermiticity_error(m_) > kHermiticityTol) throw UsageError("DensityOperator: not Hermitian");
        if (std::abs(m_.trace() - 1.0) > kTraceTol) throw UsageError("DensityOperator: trace is not 1");
    }

    static DensityOperator pure(const ComplexVector& psi) {
        if (std::abs(psi.norm() - 1.0) > 1e-10) throw UsageError("DensityOperator::pure: state is not normalized");
        return DensityOperator(psi * psi.adjoint());
    }

    // rho = (I + x sx + y sy + z sz) / 2
    static DensityOperator from_bloch(double x, double y, double z) {
        return DensityOperator(0.5 * (ops::identity(2) + x * ops::sigma_x() + y * ops::sigma_y() +
                                      z * ops::sigma_z()));
    }

    const ComplexMatrix& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }

private:
    ComplexMatrix m_;
};

// Half the trace norm of the Hermitian part of r1 - r2; integrator output need not be
// exactly Hermitian or unit-trace.
inline double trace_distance(const ComplexMatrix& r1, const ComplexMatrix& r2) {
    require_same_dim(r1, r2, "trace_distance");
    // Difference taken in a fixed argument order so that swapping r1 and r2 repeats the same
    // arithmetic and the result is exactly symmetric.
    bool swap = false;
    for (Eigen::Index k = 0; k < r1.size(); ++k) {
        const cplx x = r1.data()[k], y = r2.data()[k];
        if (x.real() != y.real()) {
            swap = x.real() < y.real();
            break;
        }
        if (x.imag() != y.imag()) {
            swap = x.imag() < y.imag();
            break;
        }
    }
    const ComplexMatrix d = swap ? ComplexMatrix(r2 - r1) : ComplexMatrix(r1 - r2);
    double s = 0.0;
    for (double ev : hermitian_eigenvalues(0.5 * (d + d.adjoint()))) s += std::abs(ev);
    return 0.5 * s;
}

inline double trace_distance(const DensityOperator& r1, const DensityOperator& r2) {
    return trace_distance(r1.matrix(), r2.matrix());
}

struct BlochVector {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline BlochVector bloch_vector(const ComplexMatrix& r) {
    require_square(r, "bloch_vector");
    if (r.rows() != 2) throw UsageError("bloch_vector: requires a 2x2 operator");
    return {(ops::sigma_x() * r).trace().real(), (ops::sigma_y() * r).trace().real(),
            (ops::sigma_z() * r).trace().real()};
}

inline BlochVector bloch_vector(const DensityOperator& r) { return bloch_vector(r.matrix()); }

} // namespace postmarkov
