// generators.hpp: Right-hand sides of the Lindblad, post-Markov, two-level,
// spin-boson and Brownian-motion master equations

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <variant>

#include "postmarkov/bath.hpp"
#include "postmarkov/errors.hpp"
#include "postmarkov/linalg.hpp"

namespace postmarkov {

// System Hamiltonian h and coupling operator l. The coupling strength is folded into l.
class SystemSpec {
public:
    SystemSpec(ComplexMatrix h, ComplexMatrix l) : h_(std::move(h)), l_(std::move(l)) {
        require_same_dim(h_, l_, "SystemSpec");
        if (!all_finite(h_) || !all_finite(l_)) throw UsageError("SystemSpec: non-finite entries");
        if (hermiticity_error(h_) > 1e-10) throw UsageError("SystemSpec: Hamiltonian is not Hermitian");
    }

    const ComplexMatrix& h() const noexcept { return h_; }
    const ComplexMatrix& l() const noexcept { return l_; }
    Eigen::Index dim() const noexcept { return h_.rows(); }

private:
    ComplexMatrix h_;
    ComplexMatrix l_;
};

// H = (w/2) sz, L = sqrt(gamma) s-
inline SystemSpec tls_system(double omega, double gamma) {
    return SystemSpec(0.5 * omega * ops::sigma_z(), std::sqrt(gamma) * ops::sigma_minus());
}

// H = -(w/2) sx + (W/2) sz, L = sqrt(gamma) sz
inline SystemSpec spin_boson_system(double omega, double bias, double gamma) {
    return SystemSpec(-0.5 * omega * ops::sigma_x() + 0.5 * bias * ops::sigma_z(),
                      std::sqrt(gamma) * ops::sigma_z());
}

// -i[H,rho] + 1/2([L, rho L+] + [L rho, L+])
inline ComplexMatrix lindblad_rhs(const SystemSpec& sys, const ComplexMatrix& rho) {
    require_same_dim(sys.h(), rho, "lindblad_rhs");
    const ComplexMatrix& h = sys.h();
    const ComplexMatrix& l = sys.l();
    const ComplexMatrix ld = l.adjoint();
    const ComplexMatrix lrho = l * rho;
    const ComplexMatrix rholdag = rho * ld;
    return -kI * (h * rho - rho * h) + 0.5 * ((l * rholdag - rholdag * l) + (lrho * ld - ld * lrho));
}

// The four lines of the post-Markov equation; each dissipative line is a term plus its conjugate.
inline ComplexMatrix post_markov_rhs(const SystemSpec& sys, const CoefficientSet& c, const ComplexMatrix& rho) {
    require_same_dim(sys.h(), rho, "post_markov_rhs");
    const ComplexMatrix& h = sys.h();
    const ComplexMatrix& l = sys.l();
    const ComplexMatrix ld = l.adjoint();

    const auto comm = [](const ComplexMatrix& a, const ComplexMatrix& b) -> ComplexMatrix { return a * b - b * a; };

    ComplexMatrix out = -kI * comm(h, rho);
    out += c.g0 * comm(l, rho * ld) + std::conj(c.g0) * comm(l * rho, ld);

    const ComplexMatrix hl = comm(h, l);   // [H, L]
    const ComplexMatrix ldh = comm(ld, h); // [L+, H]
    out += kI * c.g1 * comm(ld, hl * rho) - kI * std::conj(c.g1) * comm(rho * ldh, l);

    const ComplexMatrix ldl = comm(ld, l); // [L+, L], exactly zero for selfadjoint L
    out += c.g2 * comm(ld, ldl * l * rho) + std::conj(c.g2) * comm(rho * ld * ldl, l);
    return out;
}

// Damped two-level atom: the post-Markov equation collapses to Lindblad form,
//   -i(w/2)[sz,rho] - i shift [s+s-, rho] + rate (2 s- rho s+ - {s+s-, rho}).
// For real coefficients shift = w gamma g1 and rate = gamma (g0 + gamma g2); imaginary
// parts of the coefficients feed the shift (g0, g2) and the rate (g1).
inline ComplexMatrix tls_post_markov_rhs(double omega, double gamma, const CoefficientSet& c,
                                         const ComplexMatrix& rho) {
    require_square(rho, "tls_post_markov_rhs");
    if (rho.rows() != 2) throw UsageError("tls_post_markov_rhs: requires a 2x2 state");
    const double shift = omega * gamma * c.g1.real() - gamma * c.g0.imag() + gamma * gamma * c.g2.imag();
    const double rate = gamma * (c.g0.real() + gamma * c.g2.real() - omega * c.g1.imag());

    // Entry-wise form in the (|e>, |g>) basis.
    const cplx ree = rho(0, 0), reg = rho(0, 1), rge = rho(1, 0);
    ComplexMatrix out(2, 2);
    out(0, 0) = -2.0 * rate * ree;
    out(1, 1) = 2.0 * rate * ree;
    out(0, 1) = (-kI * (omega + shift) - rate) * reg;
    out(1, 0) = (kI * (omega + shift) - rate) * rge;
    return out;
}

// High-temperature spin-boson model with L = sqrt(gamma) sz:
//   -i[H,rho] + (gamma g0 sz rho sz - gamma g0 rho + H.c.)
//             + (i w gamma g1 sx rho + w gamma g1 sy rho sz + H.c.)
inline ComplexMatrix spin_boson_rhs(double omega, double bias, double gamma, const CoefficientSet& c,
                                    const ComplexMatrix& rho) {
    require_square(rho, "spin_boson_rhs");
    if (rho.rows() != 2) throw UsageError("spin_boson_rhs: requires a 2x2 state");
    const ComplexMatrix sx = ops::sigma_x(), sy = ops::sigma_y(), sz = ops::sigma_z();
    const ComplexMatrix h = -0.5 * omega * sx + 0.5 * bias * sz;

    ComplexMatrix out = -kI * (h * rho - rho * h);

    const ComplexMatrix a0 = gamma * c.g0 * (sz * rho * sz - rho);
    out += a0 + a0.adjoint();

    const ComplexMatrix a1 = kI * omega * gamma * c.g1 * (sx * rho) + omega * gamma * c.g1 * (sy * rho * sz);
    out += a1 + a1.adjoint();
    return out;
}

// Moments of a Gaussian oscillator state (hbar = 1, unit mass).
struct GaussianState {
    double mq{0.0};
    double mp{0.0};
    double sqq{0.5};
    double spp{0.5};
    double sqp{0.0}; // 1/2 <{q,p}> - <q><p>

    bool finite() const {
        return std::isfinite(mq) && std::isfinite(mp) && std::isfinite(sqq) && std::isfinite(spp) &&
               std::isfinite(sqp);
    }

    bool operator==(const GaussianState&) const = default;
};

// Moment equations of the Brownian-motion post-Markov equation
//   -i[H,rho] - gamma g0R [q,[q,rho]] - i gamma g0I [q^2,rho]
//   + gamma g1R [q,[p,rho]] + i gamma g1I [q,{p,rho}]
// for H = p^2/2 + w0^2 q^2/2. Closed and exact for the quadratic potential.
inline GaussianState qbm_moment_rhs(double omega0, double gamma, const CoefficientSet& c, const GaussianState& s) {
    if (!s.finite()) throw UsageError("qbm_moment_rhs: non-finite state");
    const double diffusion = gamma * c.g0.real();
    const double shift = gamma * c.g0.imag();
    const double cross = gamma * c.g1.real();
    const double damping = gamma * c.g1.imag();
    const double w2 = omega0 * omega0 + 2.0 * shift;

    GaussianState d;
    d.mq = s.mp;
    d.mp = -w2 * s.mq + 2.0 * damping * s.mp;
    d.sqq = 2.0 * s.sqp;
    d.spp = -2.0 * w2 * s.sqp + 2.0 * diffusion + 4.0 * damping * s.spp;
    d.sqp = s.spp - w2 * s.sqq + cross + 2.0 * damping * s.sqp;
    return d;
}

struct LindbladKind {
    SystemSpec system;
};
struct PostMarkovKind {
    SystemSpec system;
};
struct TlsKind {
    double omega;
    double gamma;
};
struct SpinBosonKind {
    double omega;
    double bias;
    double gamma;
};
struct QbmKind {
    double omega0;
    double gamma;
};

// A master equation together with the schedule that feeds it coefficients.
class GeneratorSpec {
public:
    using Kind = std::variant<LindbladKind, PostMarkovKind, TlsKind, SpinBosonKind, QbmKind>;

    GeneratorSpec(Kind kind, CoefficientSchedule schedule) : kind_(std::move(kind)), schedule_(std::move(schedule)) {
        if (std::holds_alternative<LindbladKind>(kind_)) schedule_ = CoefficientSchedule::lindblad();
        if (const auto* q = std::get_if<QbmKind>(&kind_)) {
            if (!(q->omega0 > 0.0)) throw UsageError("GeneratorSpec: omega0 must be positive");
            if (!(q->gamma >= 0.0)) throw UsageError("GeneratorSpec: gamma must be non-negative");
        }
    }

    static GeneratorSpec lindblad(SystemSpec sys) {
        return GeneratorSpec(LindbladKind{std::move(sys)}, CoefficientSchedule::lindblad());
    }

    const Kind& kind() const noexcept { return kind_; }
    const CoefficientSchedule& schedule() const noexcept { return schedule_; }

    bool matrix_valued() const noexcept { return !std::holds_alternative<QbmKind>(kind_); }

    Eigen::Index dim() const {
        if (const auto* k = std::get_if<LindbladKind>(&kind_)) return k->system.dim();
        if (const auto* k = std::get_if<PostMarkovKind>(&kind_)) return k->system.dim();
        if (std::holds_alternative<QbmKind>(kind_)) return 0;
        return 2;
    }

    CoefficientSet coefficients(double t) const { return schedule_.at(t); }

    ComplexMatrix rhs(const CoefficientSet& c, const ComplexMatrix& rho) const {
        return std::visit(
            [&](const auto& k) -> ComplexMatrix {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, LindbladKind>) return lindblad_rhs(k.system, rho);
                else if constexpr (std::is_same_v<T, PostMarkovKind>) return post_markov_rhs(k.system, c, rho);
                else if constexpr (std::is_same_v<T, TlsKind>) return tls_post_markov_rhs(k.omega, k.gamma, c, rho);
                else if constexpr (std::is_same_v<T, SpinBosonKind>)
                    return spin_boson_rhs(k.omega, k.bias, k.gamma, c, rho);
                else throw UsageError("GeneratorSpec: moment-valued generator applied to a matrix");
            },
            kind_);
    }

    GaussianState rhs(const CoefficientSet& c, const GaussianState& s) const {
        const auto* q = std::get_if<QbmKind>(&kind_);
        if (!q) throw UsageError("GeneratorSpec: matrix-valued generator applied to Gaussian moments");
        return qbm_moment_rhs(q->omega0, q->gamma, c, s);
    }

private:
    Kind kind_;
    CoefficientSchedule schedule_;
};

} // namespace postmarkov
