// simulation.hpp: Trajectories: integrated states with their coefficients and diagnostics

#pragma once

#include <span>
#include <variant>
#include <vector>

#include "postmarkov/bath.hpp"
#include "postmarkov/diagnostics.hpp"
#include "postmarkov/generators.hpp"
#include "postmarkov/integrator.hpp"
#include "postmarkov/linalg.hpp"
#include "postmarkov/oracles.hpp"

namespace postmarkov {

using StatePayload = std::variant<ComplexMatrix, GaussianState>;

struct TrajectorySample {
    double t{0.0};
    StatePayload state;
    CoefficientSet coefficients;
    DiagnosticsRecord diagnostics;

    const ComplexMatrix& matrix() const { return std::get<ComplexMatrix>(state); }
    const GaussianState& moments() const { return std::get<GaussianState>(state); }
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
};

namespace detail {

inline void require_grid(std::span<const double> grid) {
    if (grid.empty()) throw UsageError("simulate: empty output grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw UsageError("simulate: grid must be strictly increasing");
}

} // namespace detail

// grid.front() is the initial time; the first sample is the initial condition.
inline Trajectory simulate(const GeneratorSpec& gen, const ComplexMatrix& rho0, std::span<const double> grid,
                           double tol, AdaptiveStats* stats = nullptr) {
    if (!gen.matrix_valued()) throw UsageError("simulate: generator evolves Gaussian moments, not a matrix");
    detail::require_grid(grid);
    const Eigen::Index n = rho0.rows();
    if (rho0.cols() != n || n != gen.dim()) throw UsageError("simulate: initial state dimension mismatch");

    Trajectory tr;
    auto push = [&](double t, ComplexMatrix rho) {
        DiagnosticsRecord d = full_report(rho);
        tr.samples.push_back({t, std::move(rho), gen.coefficients(t), d});
    };
    push(grid.front(), rho0);
    if (grid.size() == 1) return tr;

    const auto rhs = [&](double t, const Eigen::VectorXd& y) -> Eigen::VectorXd {
        return flatten(gen.rhs(gen.coefficients(t), unflatten_matrix(y, n)));
    };
    const auto states = integrate_adaptive(rhs, OdeState{grid.front(), flatten(rho0)}, grid.back(), tol,
                                           grid.subspan(1), stats);
    for (const auto& s : states) push(s.t, unflatten_matrix(s.y, n));
    return tr;
}

inline Trajectory simulate(const GeneratorSpec& gen, const GaussianState& s0, std::span<const double> grid,
                           double tol, AdaptiveStats* stats = nullptr) {
    if (gen.matrix_valued()) throw UsageError("simulate: generator evolves a matrix, not Gaussian moments");
    detail::require_grid(grid);

    Trajectory tr;
    auto push = [&](double t, const GaussianState& s) {
        tr.samples.push_back({t, s, gen.coefficients(t), full_report(s)});
    };
    push(grid.front(), s0);
    if (grid.size() == 1) return tr;

    const auto rhs = [&](double t, const Eigen::VectorXd& y) -> Eigen::VectorXd {
        return flatten(gen.rhs(gen.coefficients(t), unflatten_gaussian(y)));
    };
    const auto states =
        integrate_adaptive(rhs, OdeState{grid.front(), flatten(s0)}, grid.back(), tol, grid.subspan(1), stats);
    for (const auto& s : states) push(s.t, unflatten_gaussian(s.y));
    return tr;
}

// Exact damped-atom states sampled on the grid. The recorded coefficients are the
// kernel's time-dependent values, for reference only.
inline Trajectory exact_tls_trajectory(const TlsExactSolution& sol, const ComplexVector& psi0,
                                       std::span<const double> grid) {
    detail::require_grid(grid);
    const CorrelationKernel kernel(ExponentialZeroT{sol.parameters().tau});
    Trajectory tr;
    for (double t : grid) {
        ComplexMatrix rho = sol.state(psi0, t).matrix();
        DiagnosticsRecord d = full_report(rho);
        tr.samples.push_back({t, std::move(rho), coefficients_at(kernel, t), d});
    }
    return tr;
}

} // namespace postmarkov
