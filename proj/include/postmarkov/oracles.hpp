// oracles.hpp: Reference solutions used to validate the master equations
//
// Damped two-level atom: the excited amplitude in the interaction picture obeys
//   G'(t) = -gamma int_0^t alpha(t-s) e^{i w (t-s)} G(s) ds,   G(0) = 1,
// with alpha(u) = exp(-u/tau)/(2 tau). Two routes are provided: the equivalent
// constant-coefficient second-order ODE, and a trapezoidal Volterra discretisation.
//
// Brownian motion: direct integration of the density matrix in a truncated Fock basis.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "postmarkov/bath.hpp"
#include "postmarkov/errors.hpp"
#include "postmarkov/generators.hpp"
#include "postmarkov/integrator.hpp"
#include "postmarkov/linalg.hpp"

namespace postmarkov {

struct TlsParameters {
    double omega{1.0};
    double gamma{1.0};
    double tau{0.2};
};

inline void validate(const TlsParameters& p) {
    if (!(p.gamma >= 0.0) || !std::isfinite(p.gamma)) throw UsageError("TlsParameters: gamma must be >= 0");
    if (!(p.tau > 0.0) || !std::isfinite(p.tau)) throw UsageError("TlsParameters: tau must be positive");
    if (!std::isfinite(p.omega)) throw UsageError("TlsParameters: omega must be finite");
}

// Route (a). Differentiating the memory equation once gives
//   G'' + kappa G' + (gamma / 2 tau) G = 0,  kappa = 1/tau - i w,  G(0) = 1, G'(0) = 0.
inline cplx exact_tls_amplitude(const TlsParameters& p, double t) {
    validate(p);
    if (!(t >= 0.0)) throw UsageError("exact_tls_amplitude: t must be non-negative");
    if (p.gamma == 0.0) return 1.0;
    const cplx kappa{1.0 / p.tau, -p.omega};
    const double c = p.gamma / (2.0 * p.tau);
    cplx sq = std::sqrt(kappa * kappa - 4.0 * c);
    if (std::real(std::conj(kappa) * sq) < 0.0) sq = -sq;
    const cplx qroot = -0.5 * (kappa + sq); // large-magnitude root
    const cplx r_fast = qroot;
    const cplx r_slow = c / qroot;
    if (std::abs(r_slow - r_fast) <= 1e-7 * std::abs(kappa)) { // critically damped
        const cplx r = -0.5 * kappa;
        return (1.0 - r * t) * std::exp(r * t);
    }
    return (r_slow * std::exp(r_fast * t) - r_fast * std::exp(r_slow * t)) / (r_slow - r_fast);
}

// Route (b). Integrating the memory equation once gives a Volterra equation of the second kind,
//   G(t) = 1 - int_0^t Kint(t-s) G(s) ds,  Kint(w) = int_0^w gamma alpha(v) e^{i w v} dv,
// discretised with the trapezoidal rule. Returns G at n*h for n = 0..floor(t_max/h).
inline std::vector<cplx> volterra_tls_amplitudes(const TlsParameters& p, double t_max, double h) {
    validate(p);
    if (!(h > 0.0) || !(t_max >= 0.0)) throw UsageError("volterra_tls_amplitudes: need h > 0 and t_max >= 0");
    const auto n_steps = static_cast<std::size_t>(std::floor(t_max / h + 1e-9));
    const cplx kappa{1.0 / p.tau, -p.omega};
    const cplx scale = p.gamma / (2.0 * p.tau) / kappa;

    // kint[m] = Kint(m h), split into real and imaginary parts for the inner sum.
    std::vector<double> kr(n_steps + 1), ki(n_steps + 1);
    for (std::size_t m = 0; m <= n_steps; ++m) {
        const cplx v = scale * (1.0 - std::exp(-kappa * (static_cast<double>(m) * h)));
        kr[m] = v.real();
        ki[m] = v.imag();
    }
    std::vector<double> gr(n_steps + 1), gi(n_steps + 1);
    gr[0] = 1.0;
    gi[0] = 0.0;
    for (std::size_t n = 1; n <= n_steps; ++n) {
        // 1/2 Kint(t_n) G_0 + sum_{j=1}^{n-1} Kint(t_n - t_j) G_j ; Kint(0) = 0
        double sr = 0.5 * (kr[n] * gr[0] - ki[n] * gi[0]);
        double si = 0.5 * (kr[n] * gi[0] + ki[n] * gr[0]);
        for (std::size_t j = 1; j < n; ++j) {
            const double a = kr[n - j], b = ki[n - j];
            sr += a * gr[j] - b * gi[j];
            si += a * gi[j] + b * gr[j];
        }
        gr[n] = 1.0 - h * sr;
        gi[n] = -h * si;
    }
    std::vector<cplx> out(n_steps + 1);
    for (std::size_t n = 0; n <= n_steps; ++n) out[n] = {gr[n], gi[n]};
    return out;
}

inline constexpr int kVolterraStepsPerTau = 200;

// Volterra route at h = tau/200 with one Richardson extrapolation against h/2, sampled on the
// coarse grid n*h. The trapezoidal error expands in even powers of h.
inline std::vector<cplx> volterra_tls_amplitudes_extrapolated(const TlsParameters& p, double t_max) {
    const double h = p.tau / kVolterraStepsPerTau;
    const auto coarse = volterra_tls_amplitudes(p, t_max, h);
    const auto fine = volterra_tls_amplitudes(p, static_cast<double>(coarse.size() - 1) * h, 0.5 * h);
    std::vector<cplx> out(coarse.size());
    for (std::size_t n = 0; n < coarse.size(); ++n) out[n] = (4.0 * fine[2 * n] - coarse[n]) / 3.0;
    return out;
}

struct RouteAgreement {
    double max_difference{0.0};
    double at_time{0.0};
};

// Compares route (a) with route (b) on the Volterra grid up to t_max.
inline RouteAgreement tls_route_agreement(const TlsParameters& p, double t_max) {
    const double h = p.tau / kVolterraStepsPerTau;
    const auto volterra = volterra_tls_amplitudes_extrapolated(p, t_max);
    RouteAgreement r;
    for (std::size_t n = 0; n < volterra.size(); ++n) {
        const double t = static_cast<double>(n) * h;
        const double d = std::abs(volterra[n] - exact_tls_amplitude(p, t));
        if (d > r.max_difference) {
            r.max_difference = d;
            r.at_time = t;
        }
    }
    return r;
}

inline constexpr double kRouteConsistencyLimit = 1e-6;

inline RouteAgreement verify_tls_routes(const TlsParameters& p, double t_max) {
    const auto r = tls_route_agreement(p, t_max);
    if (r.max_difference > kRouteConsistencyLimit)
        throw ConsistencyError("exact two-level amplitude: routes disagree by " + std::to_string(r.max_difference),
                               r.at_time);
    return r;
}

class TlsExactSolution {
public:
    explicit TlsExactSolution(TlsParameters p) : p_(p) { validate(p_); }

    const TlsParameters& parameters() const noexcept { return p_; }

    cplx amplitude(double t) const { return exact_tls_amplitude(p_, t); }

    // Amplitude-damping channel of the single-excitation sector; initial a|e> + b|g>.
    DensityOperator state(const ComplexVector& psi0, double t) const {
        if (psi0.size() != 2) throw UsageError("TlsExactSolution::state: psi0 must be a 2-vector");
        if (std::abs(psi0.norm() - 1.0) > 1e-10) throw UsageError("TlsExactSolution::state: psi0 is not normalized");
        const cplx a = psi0[0], b = psi0[1];
        const cplx g = amplitude(t);
        ComplexMatrix r(2, 2);
        r(0, 0) = std::norm(a) * std::norm(g);
        r(0, 1) = a * std::conj(b) * g * std::exp(-kI * p_.omega * t);
        r(1, 0) = std::conj(r(0, 1));
        r(1, 1) = 1.0 - r(0, 0).real();
        return DensityOperator(r);
    }

private:
    TlsParameters p_;
};

// ---------------------------------------------------------------------------
// Fock-truncated Brownian motion

inline constexpr int kDefaultFockTruncation = 30;
inline constexpr double kLeakageLimit = 1e-6;

// Density matrix of the coherent state with the given means, truncated and renormalised.
inline ComplexMatrix coherent_state(Eigen::Index n, double omega0, double mq, double mp) {
    if (n < 1 || !(omega0 > 0.0)) throw UsageError("coherent_state: need n >= 1 and omega0 > 0");
    const cplx alpha = (std::sqrt(omega0) * mq + kI * mp / std::sqrt(omega0)) / std::sqrt(2.0);
    ComplexVector psi(n);
    psi[0] = std::exp(-0.5 * std::norm(alpha));
    for (Eigen::Index k = 1; k < n; ++k) psi[k] = psi[k - 1] * alpha / std::sqrt(static_cast<double>(k));
    psi /= psi.norm();
    return psi * psi.adjoint();
}

struct FockOperators {
    Eigen::SparseMatrix<cplx> q, p, q2, h;
    ComplexMatrix q_dense, p_dense, q2_dense, qp_sym_dense; // for moment extraction

    FockOperators(Eigen::Index n, double omega0) {
        q_dense = ops::position(n, omega0);
        p_dense = ops::momentum(n, omega0);
        q2_dense = q_dense * q_dense;
        qp_sym_dense = 0.5 * (q_dense * p_dense + p_dense * q_dense);
        const ComplexMatrix h_dense = 0.5 * p_dense * p_dense + 0.5 * omega0 * omega0 * q2_dense;
        q = q_dense.sparseView();
        p = p_dense.sparseView();
        q2 = q2_dense.sparseView();
        h = h_dense.sparseView();
    }
};

// Brownian-motion post-Markov equation for H = p^2/2 + w0^2 q^2/2, L = sqrt(gamma) q:
//   -i[H,rho] - gamma g0R [q,[q,rho]] - i gamma g0I [q^2,rho]
//   + gamma g1R [q,[p,rho]] + i gamma g1I [q,{p,rho}]
inline ComplexMatrix qbm_fock_rhs(const FockOperators& f, double gamma, const CoefficientSet& c,
                                  const ComplexMatrix& rho) {
    const ComplexMatrix qr = f.q * rho, rq = rho * f.q;
    const ComplexMatrix pr = f.p * rho, rp = rho * f.p;
    const ComplexMatrix x = qr - rq;
    const ComplexMatrix y = pr - rp;
    const ComplexMatrix z = pr + rp;
    ComplexMatrix out = -kI * (f.h * rho - rho * f.h);
    out -= gamma * c.g0.real() * (f.q * x - x * f.q);
    out -= kI * (gamma * c.g0.imag()) * (f.q2 * rho - rho * f.q2);
    out += gamma * c.g1.real() * (f.q * y - y * f.q);
    out += kI * (gamma * c.g1.imag()) * (f.q * z - z * f.q);
    return out;
}

inline GaussianState fock_moments(const FockOperators& f, const ComplexMatrix& rho) {
    GaussianState s;
    s.mq = (f.q_dense * rho).trace().real();
    s.mp = (f.p_dense * rho).trace().real();
    s.sqq = (f.q2_dense * rho).trace().real() - s.mq * s.mq;
    s.spp = (f.p_dense * f.p_dense * rho).trace().real() - s.mp * s.mp;
    s.sqp = (f.qp_sym_dense * rho).trace().real() - s.mq * s.mp;
    return s;
}

struct FockMomentTrajectory {
    std::vector<double> t;
    std::vector<GaussianState> moments;
    int n_trunc{0};
    double max_trace_error{0.0};
    double max_top_population{0.0};
};

inline FockMomentTrajectory qbm_fock_moments(double omega0, double gamma, const CoefficientSchedule& schedule,
                                             int n_trunc, const ComplexMatrix& rho0, std::span<const double> grid,
                                             double tol = 1e-10) {
    if (n_trunc < 10) throw UsageError("qbm_fock_moments: n_trunc must be at least 10");
    if (rho0.rows() != n_trunc || rho0.cols() != n_trunc)
        throw UsageError("qbm_fock_moments: rho0 dimension does not match n_trunc");
    if (!(omega0 > 0.0) || !(gamma >= 0.0)) throw UsageError("qbm_fock_moments: need omega0 > 0 and gamma >= 0");
    if (grid.empty()) throw UsageError("qbm_fock_moments: empty grid");
    double tail = 0.0;
    for (int k = n_trunc / 2 + 1; k < n_trunc; ++k) tail += rho0(k, k).real();
    if (tail > 1e-8) throw UsageError("qbm_fock_moments: initial state is not supported on the lower half of the basis");

    const FockOperators f(n_trunc, omega0);
    const auto rhs = [&](double t, const Eigen::VectorXd& y) -> Eigen::VectorXd {
        return flatten(qbm_fock_rhs(f, gamma, schedule.at(t), unflatten_matrix(y, n_trunc)));
    };

    FockMomentTrajectory out;
    out.n_trunc = n_trunc;
    auto record = [&](double t, const ComplexMatrix& rho) {
        const double top = rho(n_trunc - 1, n_trunc - 1).real();
        out.max_top_population = std::max(out.max_top_population, top);
        if (top > kLeakageLimit)
            throw TruncationError("Fock truncation leaked population " + std::to_string(top) + " into level " +
                                      std::to_string(n_trunc - 1),
                                  t);
        out.max_trace_error = std::max(out.max_trace_error, std::abs(rho.trace() - 1.0));
        out.t.push_back(t);
        out.moments.push_back(fock_moments(f, rho));
    };

    record(grid.front(), rho0);
    if (grid.size() == 1) return out;
    const OdeState s0{grid.front(), flatten(rho0)};
    const auto states = integrate_adaptive(rhs, s0, grid.back(), tol, grid.subspan(1));
    for (const auto& s : states) record(s.t, unflatten_matrix(s.y, n_trunc));
    return out;
}

// Doubles the truncation (padding rho0 with empty levels) until no leakage is flagged.
inline FockMomentTrajectory qbm_fock_moments_auto(double omega0, double gamma, const CoefficientSchedule& schedule,
                                                  const ComplexMatrix& rho0, std::span<const double> grid,
                                                  double tol = 1e-10, int max_n_trunc = 240) {
    int n = std::max<int>(kDefaultFockTruncation, static_cast<int>(rho0.rows()));
    for (;;) {
        ComplexMatrix padded = ComplexMatrix::Zero(n, n);
        padded.topLeftCorner(rho0.rows(), rho0.cols()) = rho0;
        try {
            return qbm_fock_moments(omega0, gamma, schedule, n, padded, grid, tol);
        } catch (const TruncationError&) {
            if (2 * n > max_n_trunc) throw;
            n *= 2;
        }
    }
}

} // namespace postmarkov
