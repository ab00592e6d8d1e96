#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace pmtest;

TEST(ExactTls, NoCouplingMeansNoDecay) {
    for (double t : {0.0, 0.5, 3.0}) EXPECT_EQ(exact_tls_amplitude(TlsParameters{1.0, 0.0, 0.2}, t), cplx(1.0));
}

TEST(ExactTls, StartsAtOneExactly) {
    EXPECT_EQ(exact_tls_amplitude(TlsParameters{1.0, 1.0, 0.2}, 0.0), cplx(1.0));
}

TEST(ExactTls, MarkovLimit) {
    const double gamma = 1.0;
    const cplx g = exact_tls_amplitude(TlsParameters{1.0, gamma, 1e-4 / gamma}, 2.0 / gamma);
    EXPECT_NEAR(std::abs(g), std::exp(-1.0), 1e-3);
}

TEST(ExactTls, BoundedByOne) {
    Rng rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const TlsParameters p{rng.uniform(-3, 3), rng.uniform(0, 3), rng.uniform(0.01, 3)};
        for (int i = 0; i <= 100; ++i) EXPECT_LE(std::abs(exact_tls_amplitude(p, 0.1 * i)), 1.0 + 1e-9);
    }
}

TEST(ExactTls, CriticallyDampedBranchIsContinuous) {
    // With omega = 0 the two roots coincide at gamma = 1 / (2 tau).
    const double tau = 0.5, gamma = 1.0 / (2.0 * tau);
    const TlsParameters critical{0.0, gamma, tau};
    const TlsParameters nearby{0.0, gamma * (1.0 + 1e-6), tau};
    for (double t : {0.1, 1.0, 4.0})
        EXPECT_NEAR(std::abs(exact_tls_amplitude(critical, t) - exact_tls_amplitude(nearby, t)), 0.0, 1e-5);
}

TEST(ExactTls, RoutesAgreeAtFigureParameters) {
    const RouteAgreement r = tls_route_agreement(TlsParameters{1.0, 1.0, 0.2}, 5.0);
    EXPECT_LE(r.max_difference, 1e-8);
}

TEST(ExactTls, RoutesAgreeForRandomParameters) {
    Rng rng(2);
    for (int trial = 0; trial < 6; ++trial) {
        const TlsParameters p{rng.uniform(-2, 2), rng.uniform(0.1, 2), rng.uniform(0.1, 1.0)};
        EXPECT_LE(tls_route_agreement(p, 3.0).max_difference, 1e-8)
            << "omega " << p.omega << " gamma " << p.gamma << " tau " << p.tau;
    }
}

TEST(ExactTls, VerifyRoutesPassesForConsistentParameters) {
    EXPECT_NO_THROW(verify_tls_routes(TlsParameters{1.0, 1.0, 1.0}, 5.0));
}

TEST(ExactTls, ParameterValidation) {
    EXPECT_THROW(exact_tls_amplitude(TlsParameters{1.0, -1.0, 0.2}, 1.0), UsageError);
    EXPECT_THROW(exact_tls_amplitude(TlsParameters{1.0, 1.0, 0.0}, 1.0), UsageError);
    EXPECT_THROW(exact_tls_amplitude(TlsParameters{1.0, 1.0, 0.2}, -1.0), UsageError);
}

TEST(ExactTlsState, InitialTimeIsTheInitialProjector) {
    const TlsExactSolution sol(TlsParameters{1.0, 1.0, 0.2});
    const ComplexVector psi = ket(cplx(0.3, 0.4), cplx(-0.5, 0.2));
    EXPECT_LE(max_abs(sol.state(psi, 0.0).matrix() - projector(psi)), 1e-15);
}

TEST(ExactTlsState, GroundStateIsDark) {
    const TlsExactSolution sol(TlsParameters{1.0, 1.0, 0.2});
    for (double t : {0.3, 2.0, 5.0}) EXPECT_EQ(sol.state(ket(0.0, 1.0), t).matrix(), projector(ket(0.0, 1.0)));
}

TEST(ExactTlsState, NonNormalisedInputRejected) {
    const TlsExactSolution sol(TlsParameters{1.0, 1.0, 0.2});
    ComplexVector psi(2);
    psi << 1.0, 1.0;
    EXPECT_THROW(sol.state(psi, 1.0), UsageError);
}

TEST(ExactTlsState, FigureOneCurveIsNontrivial) {
    const TlsExactSolution sol(TlsParameters{1.0, 1.0, 0.2});
    const ComplexVector minus = ket(1.0, -1.0);
    double peak = 0.0;
    for (int i = 0; i <= 50; ++i) peak = std::max(peak, std::abs(bloch_vector(sol.state(minus, 0.1 * i)).y));
    EXPECT_GT(peak, 0.3);
    // An equal superposition carries coherence |G|/2.
    EXPECT_NEAR(std::abs(sol.state(minus, 1.0).matrix()(0, 1)), 0.5 * std::abs(sol.amplitude(1.0)), 1e-15);
}

TEST(FockOracle, ClosedSystemFollowsHarmonicFlow) {
    const double w0 = 1.2, q0 = 0.8, p0 = -0.5;
    const ComplexMatrix rho = coherent_state(30, w0, q0, p0);
    const auto grid = uniform_grid(0.0, 5.0, 26);
    const auto tr = qbm_fock_moments(w0, 0.0, CoefficientSchedule::lindblad(), 30, rho, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        EXPECT_NEAR(tr.moments[i].mq, q0 * std::cos(w0 * t) + p0 / w0 * std::sin(w0 * t), 1e-6);
        EXPECT_NEAR(tr.moments[i].mp, p0 * std::cos(w0 * t) - q0 * w0 * std::sin(w0 * t), 1e-6);
    }
}

TEST(FockOracle, VacuumIsStationaryWithoutCoupling) {
    ComplexMatrix rho = ComplexMatrix::Zero(20, 20);
    rho(0, 0) = 1.0;
    const auto grid = uniform_grid(0.0, 3.0, 7);
    const auto tr = qbm_fock_moments(1.0, 0.0, CoefficientSchedule::lindblad(), 20, rho, grid);
    for (const auto& m : tr.moments) {
        EXPECT_NEAR(m.sqq, 0.5, 1e-12);
        EXPECT_NEAR(m.spp, 0.5, 1e-12);
        EXPECT_NEAR(m.sqp, 0.0, 1e-12);
    }
}

TEST(FockOracle, AgreesWithGaussianMoments) {
    const double w0 = 1.0, gamma = 0.2;
    const CoefficientSchedule sched = CoefficientSchedule::time_dependent(CorrelationKernel(ExponentialZeroT{0.3}));
    const GaussianState s0{0.5, 0.4, 0.5, 0.5, 0.0};
    const auto grid = uniform_grid(0.0, 4.0, 41);
    const Trajectory g = simulate(GeneratorSpec(QbmKind{w0, gamma}, sched), s0, grid, 1e-11);
    const auto f = qbm_fock_moments_auto(w0, gamma, sched, coherent_state(30, w0, s0.mq, s0.mp), grid, 1e-11);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const GaussianState& a = g.samples[i].moments();
        const GaussianState& b = f.moments[i];
        EXPECT_NEAR(a.mq, b.mq, 1e-6);
        EXPECT_NEAR(a.mp, b.mp, 1e-6);
        EXPECT_NEAR(a.sqq, b.sqq, 1e-6);
        EXPECT_NEAR(a.spp, b.spp, 1e-6);
        EXPECT_NEAR(a.sqp, b.sqp, 1e-6);
    }
    EXPECT_LE(f.max_trace_error, 1e-6);
}

TEST(FockOracle, LeakageRaisesTruncationError) {
    // A strongly displaced state in a small basis spills into the top level almost at once.
    const double w0 = 1.0;
    ComplexMatrix rho = coherent_state(20, w0, 1.0, 0.0);
    const auto grid = uniform_grid(0.0, 10.0, 11);
    const CoefficientSchedule hot = CoefficientSchedule::frozen_asymptotic(CorrelationKernel(OhmicHighTemp{50.0, 5.0}));
    EXPECT_THROW(qbm_fock_moments(w0, 0.5, hot, 20, rho, grid), TruncationError);
}

TEST(FockOracle, AutoDoublingRecoversFromLeakage) {
    const double w0 = 1.0;
    const ComplexMatrix rho = coherent_state(30, w0, 0.5, 0.0);
    const auto grid = uniform_grid(0.0, 1.0, 3);
    const CoefficientSchedule warm = CoefficientSchedule::frozen_asymptotic(CorrelationKernel(OhmicHighTemp{4.0, 5.0}));
    const auto tr = qbm_fock_moments_auto(w0, 0.5, warm, rho, grid);
    EXPECT_GT(tr.n_trunc, 30);
}

TEST(FockOracle, Preconditions) {
    const auto grid = uniform_grid(0.0, 1.0, 3);
    EXPECT_THROW(qbm_fock_moments(1.0, 0.1, CoefficientSchedule::lindblad(), 8, ComplexMatrix::Identity(8, 8) / 8.0, grid),
                 UsageError);
    // Mass in the upper half of the basis is refused.
    ComplexMatrix top = ComplexMatrix::Zero(20, 20);
    top(15, 15) = 1.0;
    EXPECT_THROW(qbm_fock_moments(1.0, 0.1, CoefficientSchedule::lindblad(), 20, top, grid), UsageError);
}
