#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace pmtest;

namespace {

ComplexMatrix excited() { return projector(ket(1.0, 0.0)); }
ComplexMatrix ground() { return projector(ket(0.0, 1.0)); }

ComplexMatrix hamiltonian_flow(const ComplexMatrix& h, const ComplexMatrix& rho) {
    return -kI * (h * rho - rho * h);
}

} // namespace

TEST(SystemSpecType, Validation) {
    EXPECT_THROW(SystemSpec(ops::identity(2), ops::identity(3)), UsageError);
    ComplexMatrix h = ops::sigma_z();
    h(0, 1) = 1.0;
    EXPECT_THROW(SystemSpec(h, ops::sigma_minus()), UsageError);
}

TEST(Lindblad, DecayOfExcitedState) {
    const double gamma = 0.7;
    const ComplexMatrix out = lindblad_rhs(tls_system(1.3, gamma), excited());
    EXPECT_LE(max_abs(out - gamma * (ground() - excited())), 1e-15);
}

TEST(Lindblad, ZeroCouplingIsHamiltonianFlow) {
    Rng rng(1);
    const ComplexMatrix h = rng.hermitian(3);
    const ComplexMatrix rho = rng.density(3);
    EXPECT_LE(max_abs(lindblad_rhs(SystemSpec(h, ComplexMatrix::Zero(3, 3)), rho) - hamiltonian_flow(h, rho)), 1e-14);
}

TEST(Lindblad, DimensionMismatch) {
    EXPECT_THROW(lindblad_rhs(tls_system(1.0, 1.0), ops::identity(3) / 3.0), UsageError);
}

TEST(PostMarkov, LindbladCoefficientsReproduceLindblad) {
    Rng rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index n = rng.integer(2, 5);
        const SystemSpec sys(rng.hermitian(n), rng.matrix(n));
        const ComplexMatrix rho = rng.density(n);
        EXPECT_LE(max_abs(post_markov_rhs(sys, CoefficientSet::lindblad(), rho) - lindblad_rhs(sys, rho)), 1e-12);
    }
}

TEST(PostMarkov, TlsRealCoefficientsGiveShiftAndRate) {
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const double omega = rng.uniform(-2, 2), gamma = rng.uniform(0, 2);
        const CoefficientSet c{rng.normal(), rng.normal(), rng.normal(), 0.0};
        const ComplexMatrix rho = rng.density(2);
        const double shift = omega * gamma * c.g1.real();
        const double rate = gamma * (c.g0.real() + gamma * c.g2.real());
        const ComplexMatrix spsm = ops::sigma_plus() * ops::sigma_minus();
        const ComplexMatrix sm = ops::sigma_minus(), sp = ops::sigma_plus();
        const ComplexMatrix expected = -kI * 0.5 * omega * (ops::sigma_z() * rho - rho * ops::sigma_z()) -
                                       kI * shift * (spsm * rho - rho * spsm) +
                                       rate * (2.0 * sm * rho * sp - spsm * rho - rho * spsm);
        EXPECT_LE(max_abs(post_markov_rhs(tls_system(omega, gamma), c, rho) - expected), 1e-12);
    }
}

TEST(PostMarkov, G2LineVanishesForSelfadjointCoupling) {
    Rng rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index n = rng.integer(2, 6);
        const SystemSpec sys(rng.hermitian(n), rng.hermitian(n));
        const ComplexMatrix rho = rng.density(n);
        CoefficientSet c = rng.coefficients();
        const ComplexMatrix with = post_markov_rhs(sys, c, rho);
        c.g2 = 0.0;
        EXPECT_EQ(max_abs(with - post_markov_rhs(sys, c, rho)), 0.0);
    }
}

TEST(PostMarkov, TracelessAndHermiticityPreserving) {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index n = rng.integer(2, 6);
        const SystemSpec sys(rng.hermitian(n), rng.matrix(n));
        const ComplexMatrix rho = rng.density(n);
        const CoefficientSet c = rng.coefficients();
        for (const ComplexMatrix& out : {post_markov_rhs(sys, c, rho), lindblad_rhs(sys, rho)}) {
            EXPECT_LE(std::abs(out.trace()), 1e-10 * static_cast<double>(n));
            EXPECT_LE(hermiticity_error(out), 1e-10);
        }
    }
}

TEST(TlsRhs, ZeroCoefficientsGiveHamiltonianFlow) {
    Rng rng(6);
    const ComplexMatrix rho = rng.density(2);
    const double omega = 1.7;
    const ComplexMatrix out = tls_post_markov_rhs(omega, 0.4, CoefficientSet{}, rho);
    EXPECT_LE(max_abs(out - hamiltonian_flow(0.5 * omega * ops::sigma_z(), rho)), 1e-15);
}

TEST(TlsRhs, PopulationFlowFromExcitedState) {
    const double gamma = 0.8;
    const CoefficientSet c{0.3, 0.2, 0.45, 0.0};
    const ComplexMatrix out = tls_post_markov_rhs(1.1, gamma, c, excited());
    const double dsz = (ops::sigma_z() * out).trace().real();
    EXPECT_NEAR(dsz, -4.0 * gamma * (0.3 + gamma * 0.45), 1e-14);
}

TEST(TlsRhs, MatchesGenericOnRandomInputs) {
    Rng rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const double omega = rng.uniform(-3, 3), gamma = rng.uniform(0, 2);
        const CoefficientSet c = rng.coefficients();
        const ComplexMatrix rho = rng.density(2);
        EXPECT_LE(max_abs(tls_post_markov_rhs(omega, gamma, c, rho) - post_markov_rhs(tls_system(omega, gamma), c, rho)),
                  1e-12);
    }
}

TEST(TlsRhs, RequiresTwoByTwo) {
    EXPECT_THROW(tls_post_markov_rhs(1.0, 1.0, CoefficientSet{}, ops::identity(3) / 3.0), UsageError);
}

TEST(SpinBosonRhs, MatchesGenericOnRandomInputs) {
    Rng rng(8);
    for (int trial = 0; trial < 1000; ++trial) {
        const double omega = rng.uniform(-3, 3), bias = rng.uniform(-3, 3), gamma = rng.uniform(0, 2);
        const CoefficientSet c = rng.coefficients();
        const ComplexMatrix rho = rng.density(2);
        EXPECT_LE(max_abs(spin_boson_rhs(omega, bias, gamma, c, rho) -
                          post_markov_rhs(spin_boson_system(omega, bias, gamma), c, rho)),
                  1e-12);
    }
}

TEST(SpinBosonRhs, ZeroCouplingIsHamiltonianFlow) {
    Rng rng(9);
    const ComplexMatrix rho = rng.density(2);
    const ComplexMatrix h = -0.5 * 1.2 * ops::sigma_x() + 0.5 * 0.7 * ops::sigma_z();
    EXPECT_LE(max_abs(spin_boson_rhs(1.2, 0.7, 0.0, rng.coefficients(), rho) - hamiltonian_flow(h, rho)), 1e-15);
}

TEST(SpinBosonRhs, MaximallyMixedStateKeepsSigmaZ) {
    Rng rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix out = spin_boson_rhs(rng.uniform(-2, 2), 0.0, rng.uniform(0, 1), rng.coefficients(),
                                                 0.5 * ops::identity(2));
        EXPECT_NEAR((ops::sigma_z() * out).trace().real(), 0.0, 1e-14);
    }
}

TEST(QbmMoments, NoCouplingIsHarmonicFlow) {
    const GaussianState s{0.3, -0.8, 0.7, 0.6, 0.1};
    const double w0 = 1.5;
    const GaussianState d = qbm_moment_rhs(w0, 0.0, CoefficientSet{0.4, 0.3, 0.2, 0.0}, s);
    EXPECT_DOUBLE_EQ(d.mq, s.mp);
    EXPECT_DOUBLE_EQ(d.mp, -w0 * w0 * s.mq);
    EXPECT_DOUBLE_EQ(d.sqq, 2.0 * s.sqp);
    EXPECT_DOUBLE_EQ(d.spp, -2.0 * w0 * w0 * s.sqp);
    EXPECT_DOUBLE_EQ(d.sqp, s.spp - w0 * w0 * s.sqq);
}

TEST(QbmMoments, PositionDerivativeIsMomentumForAnyCoefficients) {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const GaussianState s{rng.normal(), rng.normal(), 1.0, 1.0, 0.0};
        EXPECT_EQ(qbm_moment_rhs(1.0, rng.uniform(0, 1), rng.coefficients(), s).mq, s.mp);
    }
}

TEST(QbmMoments, FrozenOhmicDampingIsMinusGammaTimesMomentum) {
    const double gamma = 0.3;
    const CoefficientSet c = asymptotic_coefficients(CorrelationKernel(OhmicHighTemp{10.0, 5.0}));
    const GaussianState a = qbm_moment_rhs(1.0, gamma, c, {0.0, 1.0, 0.5, 0.5, 0.0});
    const GaussianState b = qbm_moment_rhs(1.0, gamma, c, {0.0, 0.0, 0.5, 0.5, 0.0});
    EXPECT_NEAR(a.mp - b.mp, -gamma, 1e-15);
}

TEST(QbmMoments, NonFiniteStateRejected) {
    EXPECT_THROW(qbm_moment_rhs(1.0, 0.1, CoefficientSet{}, {std::nan(""), 0.0, 0.5, 0.5, 0.0}), UsageError);
}

// Every moment derivative equals Tr(A d rho/dt) for the Fock-basis generator on a state
// concentrated in low levels, where truncation does not reach.
TEST(QbmMoments, AgreeWithFockGeneratorTraces) {
    Rng rng(12);
    const int n = 40;
    for (int trial = 0; trial < 20; ++trial) {
        const double w0 = rng.uniform(0.5, 2.0), gamma = rng.uniform(0.0, 0.5);
        const CoefficientSet c = rng.coefficients();
        const FockOperators f(n, w0);
        const ComplexMatrix rho = coherent_state(n, w0, rng.uniform(-1, 1), rng.uniform(-1, 1));
        const GaussianState s = fock_moments(f, rho);
        const ComplexMatrix drho = qbm_fock_rhs(f, gamma, c, rho);
        const double dq = (f.q_dense * drho).trace().real();
        const double dp = (f.p_dense * drho).trace().real();
        const double dqq = (f.q2_dense * drho).trace().real() - 2.0 * s.mq * dq;
        const double dpp = (f.p_dense * f.p_dense * drho).trace().real() - 2.0 * s.mp * dp;
        const double dqp = (f.qp_sym_dense * drho).trace().real() - dq * s.mp - s.mq * dp;
        const GaussianState d = qbm_moment_rhs(w0, gamma, c, s);
        EXPECT_NEAR(d.mq, dq, 1e-9);
        EXPECT_NEAR(d.mp, dp, 1e-9);
        EXPECT_NEAR(d.sqq, dqq, 1e-9);
        EXPECT_NEAR(d.spp, dpp, 1e-9);
        EXPECT_NEAR(d.sqp, dqp, 1e-9);
    }
}

TEST(GeneratorSpecType, DispatchAndValidation) {
    const CorrelationKernel k(ExponentialZeroT{0.2});
    const GeneratorSpec tls(TlsKind{1.0, 1.0}, CoefficientSchedule::time_dependent(k));
    EXPECT_TRUE(tls.matrix_valued());
    EXPECT_EQ(tls.dim(), 2);
    EXPECT_THROW(tls.rhs(CoefficientSet{}, GaussianState{}), UsageError);

    const GeneratorSpec qbm(QbmKind{1.0, 0.1}, CoefficientSchedule::time_dependent(k));
    EXPECT_FALSE(qbm.matrix_valued());
    EXPECT_THROW(qbm.rhs(CoefficientSet{}, ComplexMatrix(0.5 * ops::identity(2))), UsageError);
    EXPECT_THROW(GeneratorSpec(QbmKind{0.0, 0.1}, CoefficientSchedule::lindblad()), UsageError);
    EXPECT_THROW(GeneratorSpec(QbmKind{1.0, -0.1}, CoefficientSchedule::lindblad()), UsageError);

    // The Lindblad kind ignores whatever schedule it is handed.
    const GeneratorSpec lind(LindbladKind{tls_system(1.0, 1.0)}, CoefficientSchedule::time_dependent(k));
    EXPECT_EQ(lind.coefficients(0.0).g0, cplx(0.5));
}
