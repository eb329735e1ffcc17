// Copyright 2026 The tbounds Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tbounds/measures.hpp"

using namespace tbounds;

TEST(VnEntropy, Examples) {
  EXPECT_NEAR(vn_entropy(maximally_mixed(2)), std::log(4.0), 1e-14);
  EXPECT_NEAR(vn_entropy(pure_state(bell_state(Bell::phi_minus))), 0.0, 1e-14);
  const double expect = oracle::shannon({0.625, 0.125, 0.125, 0.125});
  EXPECT_NEAR(vn_entropy(werner({4, 0.5})), expect, 1e-13);
  EXPECT_NEAR(expect, 1.073543, 1e-6);
}

TEST(LinearEntropy, WernerClosedForms) {
  EXPECT_NEAR(linear_entropy(maximally_mixed(2)), 1.0, 1e-15);
  for (int k = 0; k <= 100; ++k) {
    const double p = k / 100.0;
    EXPECT_NEAR(linear_entropy(werner({4, p})), 1 - p * p, 1e-12);
    EXPECT_NEAR(linear_entropy(werner({3, p})), 8 * (1 - p * p) / 9, 1e-12);
    EXPECT_NEAR(linear_entropy(werner({2, p})), 2 * (1 - p * p) / 3, 1e-12);
  }
}

TEST(Concurrence, Examples) {
  EXPECT_NEAR(wootters_concurrence(pure_state(bell_state(Bell::psi_minus))), 1.0, 1e-14);
  EXPECT_NEAR(wootters_concurrence(pure_state(basis_vector(4, 0))), 0.0, 1e-14);
  EXPECT_NEAR(wootters_concurrence(werner({4, 0.5})), 0.25, 1e-14);
}

TEST(Concurrence, PureStatesMatchOverlapFormula) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int t = 0; t < 500; ++t) {
    Eigen::Vector4cd v;
    for (int k = 0; k < 4; ++k) v(k) = {g(rng), g(rng)};
    v.normalize();
    EXPECT_NEAR(wootters_concurrence(pure_state(v)), oracle::pure_concurrence(v), 1e-10);
  }
}

TEST(Concurrence, BellDiagonalClosedForm) {
  const auto b = bell_basis();
  for (int k = 0; k <= 20; ++k) {
    const double a = k / 20.0;
    const auto rho = DensityMatrix::from_matrix(
        ComplexMatrix(Eigen::MatrixXcd(a * b[0] * b[0].adjoint() + (1 - a) * b[1] * b[1].adjoint())), 2);
    EXPECT_NEAR(wootters_concurrence(rho), std::abs(2 * a - 1), 1e-12);
    EXPECT_NEAR(singlet_fraction_magic(rho), std::max(a, 1 - a), 1e-14);
  }
}

TEST(Concurrence, RequiresQubits) {
  EXPECT_THROW(wootters_concurrence(maximally_mixed(3)), UnsupportedDimension);
  EXPECT_THROW(singlet_fraction_magic(maximally_mixed(3)), UnsupportedDimension);
}

TEST(SpectrumCmax, Examples) {
  EXPECT_NEAR(spectrum_cmax(Spectrum({0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6})), 0.0, 1e-15);
  EXPECT_EQ(spectrum_cmax(Spectrum({1, 0, 0, 0})), 1.0);
  EXPECT_EQ(spectrum_cmax(Spectrum({0.25, 0.25, 0.25, 0.25})), 0.0);
  EXPECT_THROW(spectrum_cmax(Spectrum({0.5, 0.5})), InvalidSpectrum);
}

TEST(SpectrumCmax, DominatesWoottersOnRandomStates) {
  for (std::size_t r = 1; r <= 4; ++r)
    for (std::uint64_t i = 0; i < 2500; ++i) {
      const auto rho = random_rank_r(2, r, derive_seed(500 + r, i));
      ASSERT_LE(wootters_concurrence(rho), spectrum_cmax(spectrum_of(rho)) + 1e-10);
    }
}

TEST(SpectrumCmax, MemsAttainsOverGrid) {
  // 101 spectra: lambda1 = 1 - 3t, remaining mass split unevenly.
  for (int k = 0; k <= 100; ++k) {
    const double t = k / 400.0;  // lambda1 >= 1/4
    std::vector<double> v{1 - 3 * t, 1.5 * t, t, 0.5 * t};
    std::sort(v.rbegin(), v.rend());
    const Spectrum s(v);
    EXPECT_NEAR(wootters_concurrence(mems(s)), spectrum_cmax(s), 1e-10);
  }
}

TEST(SingletFraction, MagicExamples) {
  for (int k = 0; k <= 100; ++k) {
    const double p = k / 100.0;
    EXPECT_NEAR(singlet_fraction_magic(werner({4, p})), (1 + 3 * p) / 4, 1e-14);
    EXPECT_NEAR(singlet_fraction_magic(werner({3, p})), (1 + 2 * p) / 3, 1e-14);
    EXPECT_NEAR(singlet_fraction_magic(werner({2, p})), (1 + p) / 2, 1e-14);
  }
  EXPECT_NEAR(singlet_fraction_magic(maximally_mixed(2)), 0.25, 1e-15);
  EXPECT_NEAR(singlet_fraction_magic(pure_state(basis_vector(4, 0))), 0.5, 1e-15);
}

TEST(SingletFraction, MagicMatchesBruteForceOracle) {
  EXPECT_NEAR(oracle::brute_force_fef(pure_state(basis_vector(4, 0)).matrix().data()), 0.5, 1e-9);
  for (std::uint64_t s = 0; s < 6; ++s) {
    const auto rho = random_rank_r(2, 1 + s % 4, s + 100);
    EXPECT_NEAR(singlet_fraction_magic(rho), oracle::brute_force_fef(rho.matrix().data()), 1e-8);
  }
}

TEST(SingletFraction, OptimizerMatchesClosedForms) {
  EXPECT_NEAR(singlet_fraction_optimize(werner({4, 0.8}), 8, 1), 0.85, 1e-9);
  for (double p : {0.0, 0.3, 0.77, 1.0}) {
    EXPECT_NEAR(singlet_fraction_optimize(werner({2, p}), 8, 2), (1 + p) / 2, 1e-9);
    EXPECT_NEAR(singlet_fraction_optimize(werner({3, p}), 8, 3), (1 + 2 * p) / 3, 1e-9);
  }
}

TEST(SingletFraction, OptimizerAgreesWithMagicOnRandomStates) {
  for (std::size_t r = 1; r <= 4; ++r)
    for (std::uint64_t i = 0; i < 50; ++i) {
      const auto rho = random_rank_r(2, r, derive_seed(9, i * 4 + r));
      EXPECT_NEAR(singlet_fraction_optimize(rho, 8, i), singlet_fraction_magic(rho), 1e-9);
    }
}

TEST(SingletFraction, OptimizerMonotoneInRestarts) {
  const auto rho = random_rank_r(2, 3, 42);
  SearchOptions loose;
  loose.initial_step = 0.3;
  loose.max_evaluations = 40;  // starve each restart so the count matters
  double prev = -1;
  for (std::size_t k = 0; k <= 12; ++k) {
    const double f = singlet_fraction_optimize(rho, k, 5, loose);
    EXPECT_GE(f, prev);
    prev = f;
  }
}

TEST(SingletFraction, BoundedByTopEigenvalue) {
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const auto rho = random_rank_r(2, 1 + i % 4, derive_seed(6, i));
    const double f = singlet_fraction_magic(rho);
    ASSERT_LE(f, rho.eigen().values[0] + 1e-10);
    ASSERT_GE(f, 0.25 - 1e-12);
  }
}

TEST(SingletFraction, InvariantUnderLocalUnitaries) {
  std::mt19937_64 rng(12);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto rho = random_rank_r(2, 1 + i % 4, derive_seed(13, i));
    const auto moved =
        local_conjugate(rho, oracle::random_unitary(2, rng), oracle::random_unitary(2, rng));
    EXPECT_NEAR(singlet_fraction_magic(moved), singlet_fraction_magic(rho), 1e-9);
    EXPECT_NEAR(wootters_concurrence(moved), wootters_concurrence(rho), 1e-9);
  }
}

TEST(SingletFraction, QutritOptimizer) {
  const double s = 1.0 / std::sqrt(3.0);
  CVector phi = CVector::Zero(9);
  phi(0) = phi(4) = phi(8) = s;
  EXPECT_NEAR(singlet_fraction_optimize(pure_state(phi), 8, 0), 1.0, 1e-9);
  EXPECT_NEAR(singlet_fraction_optimize(pure_state(basis_vector(9, 0)), 8, 0), 1.0 / 3, 1e-9);
  EXPECT_NEAR(singlet_fraction_optimize(maximally_mixed(3), 4, 0), 1.0 / 9, 1e-12);
}

TEST(Fidelity, FromSingletFraction) {
  EXPECT_DOUBLE_EQ(fidelity_from_f(1.0, 2), 1.0);
  EXPECT_NEAR(fidelity_from_f(0.5, 2), 2.0 / 3, 1e-16);
  for (int k = 0; k <= 100; ++k) {
    const double p = k / 100.0;
    EXPECT_NEAR(fidelity_from_f((1 + 3 * p) / 4, 2), (1 + p) / 2, 1e-15);
  }
  EXPECT_NEAR(fidelity_from_f(1.0 / 3, 3), 0.5, 1e-16);  // classical 2/(d+1)
}

TEST(Useful, StrictThreshold) {
  EXPECT_TRUE(useful_for_teleportation(0.6, 2));
  EXPECT_FALSE(useful_for_teleportation(0.5, 2));
  EXPECT_FALSE(useful_for_teleportation(singlet_fraction_magic(werner({4, 1.0 / 3})) - 1e-15, 2));
  EXPECT_FALSE(useful_for_teleportation(1.0 / 3, 3));
}

TEST(MeasureAll, Examples) {
  const auto w = measure_all(werner({4, 0.5}));
  EXPECT_NEAR(w.vn_entropy, oracle::shannon({0.625, 0.125, 0.125, 0.125}), 1e-13);
  EXPECT_NEAR(w.linear_entropy, 0.75, 1e-14);
  EXPECT_NEAR(*w.concurrence, 0.25, 1e-14);
  EXPECT_NEAR(w.singlet_fraction, 0.625, 1e-14);
  EXPECT_NEAR(w.fidelity, 0.75, 1e-14);
  EXPECT_EQ(w.rank, 4u);

  const auto m = measure_all(maximally_mixed(2));
  EXPECT_NEAR(m.vn_entropy, std::log(4.0), 1e-14);
  EXPECT_NEAR(m.linear_entropy, 1.0, 1e-14);
  EXPECT_NEAR(*m.concurrence, 0.0, 1e-14);
  EXPECT_NEAR(m.singlet_fraction, 0.25, 1e-14);
  EXPECT_NEAR(m.fidelity, 0.5, 1e-14);
  EXPECT_EQ(m.rank, 4u);

  const auto p = measure_all(pure_state(bell_state(Bell::psi_plus)));
  EXPECT_NEAR(p.vn_entropy, 0.0, 1e-14);
  EXPECT_NEAR(p.linear_entropy, 0.0, 1e-14);
  EXPECT_NEAR(*p.concurrence, 1.0, 1e-14);
  EXPECT_NEAR(p.singlet_fraction, 1.0, 1e-14);
  EXPECT_NEAR(p.fidelity, 1.0, 1e-14);
  EXPECT_EQ(p.rank, 1u);
}

TEST(MeasureAll, ConsistencyInvariants) {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto rho = random_rank_r(2, 1 + i % 4, derive_seed(21, i));
    const auto m = measure_all(rho);
    EXPECT_NEAR(m.linear_entropy, 4.0 / 3.0 * (1 - m.purity), 1e-12);
    EXPECT_NEAR(m.fidelity, (2 * m.singlet_fraction + 1) / 3, 1e-12);
    EXPECT_GE(*m.concurrence, 0.0);
    EXPECT_LE(*m.concurrence, 1.0);
    EXPECT_GE(m.vn_entropy, 0.0);
    EXPECT_LE(m.vn_entropy, std::log(4.0) + 1e-12);
  }
}

TEST(MeasureAll, QutritUsesOptimizer) {
  const auto m = measure_all(random_rank_r(3, 5, 1), 4, 0);
  EXPECT_FALSE(m.fef_exact);
  EXPECT_FALSE(m.concurrence.has_value());
  EXPECT_EQ(m.rank, 5u);
  EXPECT_NEAR(m.fidelity, (3 * m.singlet_fraction + 1) / 4, 1e-12);
}

TEST(Conventions, WernerMeasuresIndependentOfBellProjector) {
  for (int k = 0; k <= 20; ++k) {
    const double p = k / 20.0;
    const auto ref = measure_all(werner({4, p}));
    for (Bell b : {Bell::phi_plus, Bell::phi_minus, Bell::psi_minus}) {
      const CVector v = bell_state(b);
      const Eigen::MatrixXcd m =
          (1 - p) / 4 * Eigen::MatrixXcd::Identity(4, 4) + p * v * v.adjoint();
      const auto alt = measure_all(DensityMatrix::from_matrix(ComplexMatrix(m), 2));
      EXPECT_NEAR(alt.singlet_fraction, ref.singlet_fraction, 1e-14);
      EXPECT_NEAR(*alt.concurrence, *ref.concurrence, 1e-12);
      EXPECT_NEAR(alt.linear_entropy, ref.linear_entropy, 1e-14);
      EXPECT_NEAR(alt.vn_entropy, ref.vn_entropy, 1e-13);
    }
  }
}
