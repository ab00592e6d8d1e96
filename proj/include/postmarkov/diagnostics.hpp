// diagnostics.hpp: Positivity and conservation reports for evolved states

#pragma once

#include <cmath>
#include <limits>
#include <optional>

#include "postmarkov/generators.hpp"
#include "postmarkov/linalg.hpp"

namespace postmarkov {

// Bloch norms above this count as a genuine positivity violation rather than integration noise.
inline constexpr double kBlochViolationThreshold = 1.0 + 1e-6;
// Robertson-Schroedinger bound for a physical Gaussian state.
inline constexpr double kRobertsonSchroedingerBound = 0.25;

struct DiagnosticsRecord {
    double trace_error{0.0};
    double hermiticity_error{0.0};
    double min_eigenvalue{std::numeric_limits<double>::quiet_NaN()};
    std::optional<double> bloch_norm;
    std::optional<double> rs_value;

    bool positivity_violated() const {
        if (bloch_norm) return *bloch_norm > kBlochViolationThreshold;
        if (rs_value) return *rs_value < kRobertsonSchroedingerBound - 1e-9;
        return min_eigenvalue < 0.0;
    }
};

inline DiagnosticsRecord positivity_report(const DensityOperator& r) {
    DiagnosticsRecord d;
    const auto ev = hermitian_eigenvalues(r.matrix());
    d.min_eigenvalue = ev.front();
    if (r.dim() == 2) d.bloch_norm = bloch_vector(r).norm();
    return d;
}

inline DiagnosticsRecord conservation_report(const ComplexMatrix& r) {
    require_square(r, "conservation_report");
    DiagnosticsRecord d;
    d.trace_error = std::abs(r.trace() - 1.0);
    d.hermiticity_error = hermiticity_error(r);
    return d;
}

inline double rs_uncertainty(const GaussianState& s) { return s.sqq * s.spp - s.sqp * s.sqp; }

// Both reports for a state produced by an integrator. The spectrum is taken of the Hermitian
// part so that round-off in the anti-Hermitian part does not reach the solver.
inline DiagnosticsRecord full_report(const ComplexMatrix& r) {
    DiagnosticsRecord d = conservation_report(r);
    d.min_eigenvalue = hermitian_eigenvalues(0.5 * (r + r.adjoint())).front();
    if (r.rows() == 2) d.bloch_norm = bloch_vector(r).norm();
    return d;
}

inline DiagnosticsRecord full_report(const GaussianState& s) {
    DiagnosticsRecord d;
    d.rs_value = rs_uncertainty(s);
    return d;
}

} // namespace postmarkov
