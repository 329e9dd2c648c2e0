#include "madcap/lindblad.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "madcap/madfamily.hpp"

namespace madcap {
namespace {

RateParams rates(double g1, double g2, double g3, double t = 0.0) {
  RateParams g;
  g.gamma1 = g1;
  g.gamma2 = g2;
  g.gamma3 = g3;
  g.t = t;
  return g;
}

TEST(Dissipator, DimensionsAndTracePreservation) {
  const SuperOperator single = dissipator_single(rates(0.3, 0.5, 0.8));
  EXPECT_EQ(single.mat.rows(), 9);
  const SuperOperator correlated = dissipator_correlated(rates(0.3, 0.5, 0.8));
  EXPECT_EQ(correlated.mat.rows(), 81);

  // tr(L(ρ)) = 0 for every ρ: the all-ones row of the vectorized trace
  // must annihilate the generator from the left.
  CVector trace_row = CVector::Zero(81);
  for (Eigen::Index i = 0; i < 9; ++i) {
    trace_row(i * 9 + i) = 1.0;
  }
  EXPECT_LT((trace_row.transpose() * correlated.mat).cwiseAbs().maxCoeff(),
            1e-12);
}

TEST(Dissipator, RejectsNegativeRates) {
  EXPECT_THROW(dissipator_correlated(rates(-0.1, 0.5, 0.8)), OutOfRange);
  EXPECT_THROW(dissipator_single(rates(0.1, -0.5, 0.8)), OutOfRange);
}

TEST(DampingBasis, CompleteBiorthogonalSystem) {
  const SuperOperator L = dissipator_correlated(rates(0.37, 0.61, 0.89));
  const std::vector<DampingMode> modes = damping_basis(L);
  ASSERT_EQ(modes.size(), 81u);

  // Biorthogonality: tr(Lᵢ Rⱼ) = δᵢⱼ.
  for (std::size_t i = 0; i < modes.size(); i += 17) {
    for (std::size_t j = 0; j < modes.size(); j += 13) {
      const std::complex<double> overlap =
          (modes[i].left * modes[j].right).trace();
      const double expected = (i == j) ? 1.0 : 0.0;
      EXPECT_LT(std::abs(overlap - expected), 1e-8)
          << "modes " << i << ", " << j;
    }
  }

  // Eigen relation: L vec(Rᵢ) = λᵢ vec(Rᵢ).
  for (std::size_t i = 0; i < modes.size(); i += 9) {
    const CVector v = vec(modes[i].right);
    EXPECT_LT((L.mat * v - modes[i].lambda * v).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(DampingBasis, RejectsBadShapes) {
  SuperOperator bad;
  bad.dim_in = 3;
  bad.dim_out = 3;
  bad.mat = CMatrix::Zero(9, 8);
  EXPECT_THROW(damping_basis(bad), DimensionMismatch);
  bad.mat = CMatrix::Zero(8, 8);
  EXPECT_THROW(damping_basis(bad), DimensionMismatch);
}

TEST(Evolve, IdentityAtTimeZero) {
  std::mt19937_64 rng(41);
  const CMatrix rho = random_density_matrix(9, rng);
  EXPECT_LT(max_abs(evolve(rho, rates(0.3, 0.5, 0.8, 0.0)) - rho), 1e-9);
}

TEST(Evolve, MatchesElementaryPopulationTransfer) {
  // Starting from |11⟩⟨11|, only the first decay acts:
  // the population moves to |00⟩ with probability 1 − e^{−Γ₁t}.
  CMatrix rho = CMatrix::Zero(9, 9);
  rho(4, 4) = 1.0;
  const double g1 = 0.7;
  const double t = 0.9;
  const CMatrix out = evolve(rho, rates(g1, 0.4, 0.6, t));
  const double p1 = 1.0 - std::exp(-g1 * t);
  EXPECT_NEAR(out(0, 0).real(), p1, 1e-9);
  EXPECT_NEAR(out(4, 4).real(), 1.0 - p1, 1e-9);
  EXPECT_NEAR(out.trace().real(), 1.0, 1e-9);
}

TEST(Evolve, SemigroupProperty) {
  std::mt19937_64 rng(43);
  for (int n = 0; n < 3; ++n) {
    const CMatrix rho = random_density_matrix(9, rng);
    const CMatrix two_steps = evolve(evolve(rho, rates(0.3, 0.5, 0.8, 0.4)),
                                     rates(0.3, 0.5, 0.8, 0.9));
    const CMatrix one_step = evolve(rho, rates(0.3, 0.5, 0.8, 1.3));
    EXPECT_LT(max_abs(two_steps - one_step), 1e-9);
  }
}

TEST(Evolve, RejectsBadArguments) {
  std::mt19937_64 rng(47);
  EXPECT_THROW(evolve(random_density_matrix(4, rng), rates(0.3, 0.5, 0.8, 1.0)),
               DimensionMismatch);
  EXPECT_THROW(evolve(random_density_matrix(9, rng), rates(0.3, 0.5, 0.8, -1.0)),
               OutOfRange);
}

TEST(SpectralMultiset, CorrelatedGeneratorClusterStructure) {
  const double g1 = 0.37;
  const double g2 = 0.61;
  const double g3 = 0.89;
  const auto clusters = spectral_multiset(dissipator_correlated(rates(g1, g2, g3)));
  ASSERT_EQ(clusters.size(), 6u);

  // Sorted by descending real part.
  const std::vector<std::pair<double, int>> expected = {
      {0.0, 49},
      {-g1 / 2.0, 14},
      {-g1, 1},
      {-(g2 + g3) / 2.0, 14},
      {-(g1 + g2 + g3) / 2.0, 2},
      {-(g2 + g3), 1},
  };
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    EXPECT_NEAR(clusters[i].first.real(), expected[i].first, 1e-8)
        << "cluster " << i;
    EXPECT_LT(std::abs(clusters[i].first.imag()), 1e-8);
    EXPECT_EQ(clusters[i].second, expected[i].second) << "cluster " << i;
  }
}

TEST(KrausConsistency, GeneratorFlowMatchesOperatorSum) {
  EXPECT_LT(kraus_consistency(rates(0.37, 0.61, 0.89, 0.5)), 1e-9);
  EXPECT_LT(kraus_consistency(rates(0.2, 0.9, 1.1, 1.7)), 1e-9);
  // Close to (but off) the defective surface the basis is still complete.
  EXPECT_LT(kraus_consistency(rates(1.0, 0.4, 0.6005, 0.8)), 1e-9);
}

TEST(KrausConsistency, DefectiveGeneratorIsReported) {
  // At Γ₂ + Γ₃ = Γ₁ the population block acquires a Jordan cell: the
  // decaying eigenvalue −Γ₁ coincides with −(Γ₂ + Γ₃) while the feed term
  // Γ₃ keeps the block non-diagonalizable, so no spectral basis exists.
  EXPECT_THROW(kraus_consistency(rates(1.0, 0.4, 0.6, 0.8)),
               DefectiveSpectrum);
}

TEST(KrausConsistency, SeededAndDeterministic) {
  const double a = kraus_consistency(rates(0.3, 0.5, 0.8, 0.6), 10, 99);
  const double b = kraus_consistency(rates(0.3, 0.5, 0.8, 0.6), 10, 99);
  EXPECT_EQ(a, b);
}

TEST(KrausConsistency, ProbabilityMapMatchesClosedForm) {
  // Explicitly check that the Kraus channel used for the comparison sits
  // at pᵢ = 1 − e^{−Γᵢt}.
  const RateParams g = rates(0.5, 0.7, 0.3, 1.1);
  const double p1 = 1.0 - std::exp(-g.gamma1 * g.t);
  const double p2 = 1.0 - std::exp(-g.gamma2 * g.t);
  const double p3 = 1.0 - std::exp(-g.gamma3 * g.t);
  const KrausChannel ch = mad_channel(p1, p2, p3);
  std::mt19937_64 rng(53);
  for (int n = 0; n < 5; ++n) {
    const CMatrix rho = random_density_matrix(9, rng);
    EXPECT_LT(max_abs(evolve(rho, g) - madcap::apply(ch, rho)), 1e-9);
  }
}

} // namespace
} // namespace madcap
