// bath.hpp: Bath correlation kernels and the memory coefficients g0, g1, g2
//
//   g0(t) = int_0^t alpha(t-s) ds
//   g1(t) = int_0^t alpha(t-s) (t-s) ds
//   g2(t) = int_0^t ds int_0^s du alpha(t-s) alpha(s-u) (t-s)

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "postmarkov/errors.hpp"
#include "postmarkov/linalg.hpp"
#include "postmarkov/quadrature.hpp"

namespace postmarkov {

// alpha(u) = exp(-u/tau) / (2 tau)
struct ExponentialZeroT {
    double tau{1.0};
};

// alpha(u) = 2 kT D(u) + i D'(u),  D(u) = (cutoff/2) exp(-cutoff |u|)
struct OhmicHighTemp {
    double kT{1.0};
    double cutoff{1.0};
};

struct BathMode {
    double coupling{0.0};
    double frequency{0.0};

    bool operator==(const BathMode&) const = default;
};

// alpha(u) = sum g^2 exp(-i w u)
struct DiscreteModes {
    std::vector<BathMode> modes;
};

class CorrelationKernel {
public:
    using Variant = std::variant<ExponentialZeroT, OhmicHighTemp, DiscreteModes>;

    CorrelationKernel(ExponentialZeroT k) : v_(k) {
        if (!(k.tau > 0.0) || !std::isfinite(k.tau)) throw UsageError("ExponentialZeroT: tau must be positive");
    }
    CorrelationKernel(OhmicHighTemp k) : v_(k) {
        if (!(k.kT > 0.0) || !std::isfinite(k.kT)) throw UsageError("OhmicHighTemp: kT must be positive");
        if (!(k.cutoff > 0.0) || !std::isfinite(k.cutoff))
            throw UsageError("OhmicHighTemp: cutoff must be positive");
    }
    CorrelationKernel(DiscreteModes k) : v_(std::move(k)) {
        const auto& modes = std::get<DiscreteModes>(v_).modes;
        if (modes.empty()) throw UsageError("DiscreteModes: mode list is empty");
        for (const auto& m : modes)
            if (!std::isfinite(m.coupling) || !std::isfinite(m.frequency))
                throw UsageError("DiscreteModes: non-finite mode entry");
    }

    const Variant& variant() const noexcept { return v_; }

    template <class T>
    const T* get_if() const noexcept {
        return std::get_if<T>(&v_);
    }

    bool decays() const noexcept { return !std::holds_alternative<DiscreteModes>(v_); }

private:
    Variant v_;
};

struct CoefficientSet {
    cplx g0{};
    cplx g1{};
    cplx g2{};
    double t{0.0};

    // tau -> 0 limit used by the Lindblad equation.
    static CoefficientSet lindblad(double t = 0.0) { return {0.5, 0.0, 0.0, t}; }
};

inline cplx alpha_eval(const CorrelationKernel& k, double u) {
    if (!(u >= 0.0)) throw UsageError("alpha_eval: delay must be non-negative");
    return std::visit(
        [u](const auto& v) -> cplx {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ExponentialZeroT>) {
                return std::exp(-u / v.tau) / (2.0 * v.tau);
            } else if constexpr (std::is_same_v<T, OhmicHighTemp>) {
                const double lam = v.cutoff;
                const double d = 0.5 * lam * std::exp(-lam * u);
                const double ddot = -0.5 * lam * lam * std::exp(-lam * u); // one-sided at u = 0
                return {2.0 * v.kT * d, ddot};
            } else {
                cplx s{};
                for (const auto& m : v.modes) s += m.coupling * m.coupling * std::exp(-kI * m.frequency * u);
                return s;
            }
        },
        k.variant());
}

namespace detail {

// Both decaying kernels have the form A exp(-rate u).
struct ExponentialForm {
    cplx amplitude;
    double rate;
};

inline std::optional<ExponentialForm> exponential_form(const CorrelationKernel& k) {
    if (const auto* e = k.get_if<ExponentialZeroT>()) return ExponentialForm{1.0 / (2.0 * e->tau), 1.0 / e->tau};
    if (const auto* o = k.get_if<OhmicHighTemp>()) {
        const double lam = o->cutoff;
        return ExponentialForm{cplx{o->kT * lam, -0.5 * lam * lam}, lam};
    }
    return std::nullopt;
}

} // namespace detail

inline std::optional<CoefficientSet> coefficients_closed_form(const CorrelationKernel& k, double t) {
    if (!(t >= 0.0)) throw UsageError("coefficients_closed_form: t must be non-negative");
    const auto form = detail::exponential_form(k);
    if (!form) return std::nullopt;
    const cplx a = form->amplitude;
    const double r = form->rate;
    const double x = r * t;
    const double e = std::exp(-x);
    CoefficientSet c;
    c.t = t;
    c.g0 = a / r * (-std::expm1(-x));
    c.g1 = a / (r * r) * (-std::expm1(-x) - x * e);
    c.g2 = a / r * c.g1 - a * a / (2.0 * r) * t * t * e;
    return c;
}

inline CoefficientSet coefficients_quadrature(const CorrelationKernel& k, double t, double tol) {
    if (!(t >= 0.0)) throw UsageError("coefficients_quadrature: t must be non-negative");
    if (!(tol > 0.0)) throw UsageError("coefficients_quadrature: tolerance must be positive");
    CoefficientSet c;
    c.t = t;
    if (t == 0.0) return c;
    auto alpha = [&k](double u) { return alpha_eval(k, u); };
    c.g0 = quad::adaptive_simpson([&](double s) { return alpha(t - s); }, 0.0, t, tol, "g0");
    c.g1 = quad::adaptive_simpson([&](double s) { return alpha(t - s) * (t - s); }, 0.0, t, tol, "g1");
    auto outer = [&](double s) -> cplx {
        const cplx inner = quad::adaptive_simpson([&](double u) { return alpha(s - u); }, 0.0, s, 0.5 * tol,
                                                  "g2 (inner)");
        return alpha(t - s) * (t - s) * inner;
    };
    c.g2 = quad::adaptive_simpson(outer, 0.0, t, 0.5 * tol, "g2 (outer)");
    return c;
}

inline CoefficientSet asymptotic_coefficients(const CorrelationKernel& k) {
    const auto form = detail::exponential_form(k);
    if (!form) throw UsageError("asymptotic_coefficients: kernel does not decay");
    const cplx a = form->amplitude;
    const double r = form->rate;
    CoefficientSet c;
    c.t = std::numeric_limits<double>::infinity();
    c.g0 = a / r;
    c.g1 = a / (r * r);
    c.g2 = a * a / (r * r * r);
    return c;
}

// Closed form where it exists, quadrature otherwise.
inline CoefficientSet coefficients_at(const CorrelationKernel& k, double t, double tol = 1e-10) {
    if (auto c = coefficients_closed_form(k, t)) return *c;
    return coefficients_quadrature(k, t, tol);
}

// How a generator obtains its coefficients over time.
class CoefficientSchedule {
public:
    enum class Mode { Lindblad, TimeDependent, FrozenAsymptotic };

    static CoefficientSchedule lindblad() { return CoefficientSchedule(Mode::Lindblad, std::nullopt, 0.0); }
    static CoefficientSchedule time_dependent(CorrelationKernel k, double quad_tol = 1e-10) {
        return CoefficientSchedule(Mode::TimeDependent, std::move(k), quad_tol);
    }
    static CoefficientSchedule frozen_asymptotic(CorrelationKernel k) {
        auto s = CoefficientSchedule(Mode::FrozenAsymptotic, std::move(k), 0.0);
        s.frozen_ = asymptotic_coefficients(*s.kernel_);
        return s;
    }

    Mode mode() const noexcept { return mode_; }
    const std::optional<CorrelationKernel>& kernel() const noexcept { return kernel_; }

    CoefficientSet at(double t) const {
        switch (mode_) {
        case Mode::Lindblad: return CoefficientSet::lindblad(t);
        case Mode::FrozenAsymptotic: {
            CoefficientSet c = frozen_;
            c.t = t;
            return c;
        }
        case Mode::TimeDependent: break;
        }
        return coefficients_at(*kernel_, t, quad_tol_);
    }

private:
    CoefficientSchedule(Mode m, std::optional<CorrelationKernel> k, double tol)
        : mode_(m), kernel_(std::move(k)), quad_tol_(tol) {}

    Mode mode_;
    std::optional<CorrelationKernel> kernel_;
    double quad_tol_;
    CoefficientSet frozen_{};
};

} // namespace postmarkov
