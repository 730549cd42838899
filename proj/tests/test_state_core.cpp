#include <cmath>

#include <gtest/gtest.h>

#include "ampcoh/ampcoh.hpp"
#include "test_support.hpp"

using namespace ampcoh;

namespace {

DensityMatrix diag(std::vector<double> p) { return DensityMatrix::from_diagonal(p); }

DensityMatrix plus_state() { return PureState::normalized(CVector::Ones(2)).projector(); }

}  // namespace

TEST(PureState, RejectsUnnormalizedAndTinyDimensions) {
    EXPECT_THROW(PureState(CVector::Ones(4)), DomainError);
    EXPECT_THROW(PureState(CVector::Ones(1)), DomainError);
    EXPECT_THROW(PureState::normalized(CVector::Zero(3)), DomainError);
    EXPECT_NO_THROW(PureState::uniform(5));
}

TEST(DensityMatrix, ValidatesHermiticityTraceAndPositivity) {
    CMatrix m = CMatrix::Identity(2, 2) / 2.0;
    m(0, 1) = Complex(0.1, 0.0);
    EXPECT_THROW(DensityMatrix{m}, DomainError);  // not Hermitian
    EXPECT_THROW(DensityMatrix(CMatrix::Identity(2, 2)), DomainError);  // trace 2
    CMatrix neg(2, 2);
    neg << 1.5, 0.0, 0.0, -0.5;
    EXPECT_THROW(DensityMatrix{neg}, DomainError);
}

TEST(MarkedSet, SortsAndBuildsComplement) {
    MarkedSet m(8, {5, 1});
    EXPECT_EQ(m.marked(), (std::vector<std::size_t>{1, 5}));
    EXPECT_EQ(m.unmarked().size(), 6u);
    EXPECT_TRUE(m.contains(5));
    EXPECT_FALSE(m.contains(0));
    EXPECT_EQ(m.complement().count(), 6u);
    EXPECT_FALSE(m.exceeds_half());
    EXPECT_TRUE(MarkedSet(4, {0, 1, 2}).exceeds_half());
    EXPECT_THROW(MarkedSet(4, {}), DomainError);
    EXPECT_THROW(MarkedSet(4, {1, 1}), DomainError);
    EXPECT_THROW(MarkedSet(4, {4}), DomainError);
    EXPECT_THROW(MarkedSet(2, {0, 1}), DomainError);
}

TEST(VonNeumannEntropy, Examples) {
    EXPECT_NEAR(von_neumann_entropy(PureState::uniform(7).projector()), 0.0, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(4)), std::log(4.0), 1e-12);
    EXPECT_NEAR(von_neumann_entropy(diag({0.5, 0.5, 0.0, 0.0})), 0.693147180560, 1e-12);
}

TEST(ShannonEntropyDiag, Examples) {
    EXPECT_NEAR(shannon_entropy_diag(PureState::uniform(4).projector()), std::log(4.0), 1e-12);
    EXPECT_NEAR(shannon_entropy_diag(PureState::basis(8, 3).projector()), 0.0, 1e-15);
    EXPECT_NEAR(shannon_entropy_diag(diag({0.5, 0.25, 0.25, 0.0})), 1.5 * std::log(2.0), 1e-12);
    EXPECT_NEAR(1.5 * std::log(2.0), 1.039720770839, 1e-12);
}

TEST(QuantumRelativeEntropy, Examples) {
    const DensityMatrix rho = plus_state();
    const auto self = quantum_relative_entropy(rho, rho);
    EXPECT_FALSE(self.infinite);
    EXPECT_NEAR(self.nats, 0.0, 1e-10);

    const auto disjoint = quantum_relative_entropy(PureState::basis(2, 0).projector(),
                                                   PureState::basis(2, 1).projector());
    EXPECT_TRUE(disjoint.infinite);

    const auto vs_mixed = quantum_relative_entropy(rho, DensityMatrix::maximally_mixed(2));
    EXPECT_FALSE(vs_mixed.infinite);
    EXPECT_NEAR(vs_mixed.nats, std::log(2.0), 1e-12);

    EXPECT_THROW(quantum_relative_entropy(rho, DensityMatrix::maximally_mixed(3)), DomainError);
}

TEST(QuantumRelativeEntropy, EqualsCoherenceAgainstDephasedState) {
    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        const auto rho = oracle::random_mixed(4, rng);
        const auto d = quantum_relative_entropy(rho, rho.dephased());
        ASSERT_FALSE(d.infinite);
        EXPECT_NEAR(d.nats, relative_entropy_of_coherence(rho), 1e-9);
    }
}

TEST(Fidelity, Examples) {
    Rng rng(3);
    const auto rho = oracle::random_mixed(4, rng);
    EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-10);

    const PureState psi = random_pure_state(4, rng);
    const auto sigma = oracle::random_mixed(4, rng);
    const double expect = std::real(psi.amplitudes().dot(sigma.matrix() * psi.amplitudes()));
    EXPECT_NEAR(fidelity(psi.projector(), sigma), expect, 1e-10);

    EXPECT_NEAR(fidelity(plus_state(), DensityMatrix::maximally_mixed(2)), 0.5, 1e-12);
}

TEST(IndexOfCoincidence, Examples) {
    EXPECT_NEAR(index_of_coincidence(PureState::basis(4, 2).projector()), 1.0, 1e-15);
    EXPECT_NEAR(index_of_coincidence(DensityMatrix::maximally_mixed(5)), 0.2, 1e-15);
    EXPECT_NEAR(index_of_coincidence(diag({0.5, 0.25, 0.25, 0.0})), 0.375, 1e-15);
}

TEST(SuccessProbability, Examples) {
    const MarkedSet m(4, {2});
    EXPECT_NEAR(success_probability(PureState::uniform(4), m), 0.25, 1e-15);
    EXPECT_NEAR(success_probability(PureState::uniform(4).projector(), m), 0.25, 1e-15);
    EXPECT_NEAR(success_probability(PureState::basis(4, 2), m), 1.0, 1e-15);

    // Direct diagonal sum of rho(0.3), N = 16, M = 2.
    const DensityMatrix rho = fixed_point_state(16, 2, 0.3);
    double direct = 0.0;
    for (Eigen::Index x = 0; x < 2; ++x) direct += rho.matrix()(x, x).real();
    EXPECT_NEAR(direct, 0.3, 1e-14);
    EXPECT_NEAR(success_probability(rho, MarkedSet::first(16, 2)), 0.3, 1e-14);

    EXPECT_THROW(success_probability(PureState::uniform(8), m), DomainError);
}

TEST(Purity, Examples) {
    EXPECT_NEAR(purity(PureState::uniform(6).projector()), 1.0, 1e-12);
    EXPECT_NEAR(purity(DensityMatrix::maximally_mixed(8)), 0.125, 1e-15);
    EXPECT_NEAR(purity(fixed_point_state(16, 2, 0.5)), 0.5, 1e-12);
}

TEST(StateCoreProperties, RandomStates) {
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = std::size_t{2} << (trial % 3);
        const PureState psi = random_pure_state(n, rng);
        EXPECT_LE(von_neumann_entropy(psi.projector()), 1e-9);

        const auto rho = oracle::random_mixed(n, rng);
        const auto sigma = oracle::random_mixed(n, rng);
        EXPECT_NEAR(fidelity(rho, sigma), fidelity(sigma, rho), 1e-10);
        EXPECT_GE(shannon_entropy_diag(rho), von_neumann_entropy(rho) - 1e-9);

        const double ic = index_of_coincidence(rho);
        EXPECT_GE(ic, 1.0 / static_cast<double>(n) - 1e-12);
        EXPECT_LE(ic, 1.0 + 1e-12);

        const MarkedSet m = random_marked_set(n, rng);
        EXPECT_NEAR(success_probability(rho, m) + success_probability(rho, m.complement()), 1.0, 1e-10);
    }
}
