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

#include "oracles.hpp"
#include "tbounds/bounds.hpp"

using namespace tbounds;

TEST(VnBound, ShannonOfExtremalDistribution) {
  EXPECT_NEAR(vn_entropy_bound(2, 2), oracle::shannon({0.5, 0.5}), 1e-15);
  EXPECT_NEAR(vn_entropy_bound(2, 3), oracle::shannon({0.5, 0.25, 0.25}), 1e-15);
  EXPECT_NEAR(vn_entropy_bound(2, 4), oracle::shannon({0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6}), 1e-15);
  EXPECT_NEAR(vn_entropy_bound(2, 2), 0.693147, 1e-6);
  EXPECT_NEAR(vn_entropy_bound(2, 3), 1.039721, 1e-6);
  EXPECT_NEAR(vn_entropy_bound(2, 4), 1.242453, 1e-6);
}

TEST(VnBound, ClosedFormForGeneralDimension) {
  for (std::size_t d : {2u, 3u, 4u})
    for (int r = 2; r <= static_cast<int>(d * d); ++r) {
      const double dd = static_cast<double>(d);
      const double closed = std::log(dd) + (1 - 1 / dd) * std::log((r - 1) / (dd - 1));
      EXPECT_NEAR(vn_entropy_bound(d, r), closed, 1e-13) << d << " " << r;
    }
  // At full rank the bound equals ln d + (1 - 1/d) ln(d + 1).
  EXPECT_NEAR(vn_entropy_bound(2, 4), std::log(2.0) + 0.5 * std::log(3.0), 1e-15);
}

TEST(LinBound, QubitValues) {
  EXPECT_EQ(linear_entropy_bound_exact(2, 2), (Rational{2, 3}));
  EXPECT_EQ(linear_entropy_bound_exact(2, 3), (Rational{5, 6}));
  EXPECT_EQ(linear_entropy_bound_exact(2, 4), (Rational{8, 9}));
  EXPECT_NEAR(linear_entropy_bound(2, 2), 2.0 / 3, 1e-15);
  EXPECT_NEAR(linear_entropy_bound(2, 3), 5.0 / 6, 1e-15);
  EXPECT_NEAR(linear_entropy_bound(2, 4), 8.0 / 9, 1e-15);
  for (int r = 2; r <= 4; ++r)
    EXPECT_NEAR(linear_entropy_bound(2, r), (3.0 * r - 4) / (3.0 * (r - 1)), 1e-15);
}

TEST(LinBound, QutritFullRank) {
  // (9*8 - 2*3*2) / (8*8) = 60/64
  EXPECT_EQ(linear_entropy_bound_exact(3, 9), (Rational{15, 16}));
  EXPECT_DOUBLE_EQ(linear_entropy_bound(3, 9), 0.9375);
}

TEST(ConcBound, Values) {
  EXPECT_NEAR(concurrence_lower_bound(2), 0.5, 1e-15);
  EXPECT_NEAR(concurrence_lower_bound(3), 0.25, 1e-15);
  EXPECT_NEAR(concurrence_lower_bound(4), 0.0, 1e-15);
  EXPECT_THROW(concurrence_lower_bound(5), InvalidRank);
}

TEST(Bounds, InvalidRank) {
  EXPECT_THROW(vn_entropy_bound(2, 1), InvalidRank);
  EXPECT_THROW(vn_entropy_bound(2, 5), InvalidRank);
  EXPECT_THROW(linear_entropy_bound(3, 10), InvalidRank);
  EXPECT_NO_THROW(linear_entropy_bound(3, 9));
}

TEST(Bounds, MonotoneInRank) {
  EXPECT_LT(vn_entropy_bound(2, 2), vn_entropy_bound(2, 3));
  EXPECT_LT(vn_entropy_bound(2, 3), vn_entropy_bound(2, 4));
  EXPECT_LT(linear_entropy_bound(2, 2), linear_entropy_bound(2, 3));
  EXPECT_LT(linear_entropy_bound(2, 3), linear_entropy_bound(2, 4));
  EXPECT_GT(concurrence_lower_bound(2), concurrence_lower_bound(3));
  EXPECT_GT(concurrence_lower_bound(3), concurrence_lower_bound(4));
  for (std::size_t d : {2u, 3u})
    for (int r = 3; r <= static_cast<int>(d * d); ++r) {
      EXPECT_LT(vn_entropy_bound(d, r - 1), vn_entropy_bound(d, r));
      EXPECT_LT(linear_entropy_bound(d, r - 1), linear_entropy_bound(d, r));
    }
}

TEST(FidelityCurves, Examples) {
  const auto one = fidelity_curves(1.0);
  EXPECT_DOUBLE_EQ(one.upper_r4, 1.0);
  EXPECT_DOUBLE_EQ(one.lower_r2, 1.0);
  EXPECT_NEAR(fidelity_curves(0.25).upper_r3, 2.0 / 3, 1e-15);
  const auto zero = fidelity_curves(0.0);
  EXPECT_NEAR(zero.upper_r4, 2.0 / 3, 1e-15);
  EXPECT_NEAR(zero.lower_alt, 0.5, 1e-15);
  EXPECT_NEAR(zero.lower_combined, 0.5, 1e-15);
  EXPECT_NEAR(fidelity_curves(0.8).lower_combined, (2 * 0.8 + 1) / 3, 1e-15);
}

TEST(FidelityCurves, OrderedOnUnitInterval) {
  for (int k = 0; k <= 100; ++k) {
    const double c = k / 100.0;
    EXPECT_LE(werner_fidelity_curve(2, c), werner_fidelity_curve(3, c) + 1e-15);
    EXPECT_LE(werner_fidelity_curve(3, c), werner_fidelity_curve(4, c) + 1e-15);
  }
}

TEST(Saturation, WernerHitsLinearEntropyBoundAtThreshold) {
  const std::pair<int, double> cases[] = {{4, 1.0 / 3}, {3, 0.25}, {2, 0.0}};
  for (const auto& [rank, p] : cases) {
    const auto m = measure_all(werner({rank, p}));
    EXPECT_NEAR(m.singlet_fraction, 0.5, 1e-15);
    EXPECT_NEAR(m.linear_entropy, linear_entropy_bound(2, rank), 1e-12);
    EXPECT_NEAR(*m.concurrence, concurrence_lower_bound(rank), 1e-12);
  }
}

TEST(Saturation, WernerCurvesOnEntangledBranch) {
  for (int rank : {2, 3, 4})
    for (int k = 0; k <= 100; ++k) {
      const double p = k / 100.0;
      const auto m = measure_all(werner({rank, p}));
      if (*m.concurrence <= 0) continue;  // separable rank-4 Werner states leave the curve
      EXPECT_NEAR(m.fidelity, werner_fidelity_curve(rank, *m.concurrence), 1e-12) << rank << " " << p;
    }
}

TEST(Classify, Examples) {
  const auto mixed = classify(measure_all(werner({4, 0.0})));
  EXPECT_FALSE(mixed.useful);
  EXPECT_TRUE(mixed.vn_exceeds);
  EXPECT_NEAR(*mixed.vn_margin, std::log(4.0) - vn_entropy_bound(2, 4), 1e-14);

  const auto edge = classify(measure_all(werner({3, 0.25})));
  EXPECT_FALSE(edge.useful);
  EXPECT_FALSE(edge.lin_exceeds);
  EXPECT_NEAR(*edge.lin_margin, 0.0, 1e-15);

  const auto bell = classify(measure_all(werner({2, 1.0})));
  EXPECT_TRUE(bell.useful);
  EXPECT_FALSE(bell.vn_exceeds);
  EXPECT_FALSE(bell.lin_exceeds);
  EXPECT_FALSE(bell.conc_below.value_or(false));
}

TEST(Classify, StableUnderTinyPerturbations) {
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const auto ms = measure_all(random_rank_r(2, 2 + i % 3, derive_seed(44, i)));
    const auto v = classify(ms);
    for (double eps : {-9e-14, 9e-14}) {
      MeasureSet q = ms;
      q.singlet_fraction += eps;
      q.vn_entropy += eps;
      q.linear_entropy += eps;
      *q.concurrence += eps;
      const auto w = classify(q);
      if (std::abs(v.useful_margin) > 1e-9) EXPECT_EQ(v.useful, w.useful);
      if (std::abs(*v.vn_margin) > 1e-9) EXPECT_EQ(v.vn_exceeds, w.vn_exceeds);
      if (std::abs(*v.lin_margin) > 1e-9) EXPECT_EQ(v.lin_exceeds, w.lin_exceeds);
      if (std::abs(*v.conc_margin) > 1e-9) EXPECT_EQ(v.conc_below, w.conc_below);
    }
  }
}

TEST(BoundSet, QubitAndQutrit) {
  const auto b = bound_set(2, 3);
  EXPECT_EQ(b.lin_bound_exact.str(), "5/6");
  ASSERT_TRUE(b.conc_bound.has_value());
  EXPECT_NEAR(*b.conc_bound, 0.25, 1e-15);
  EXPECT_FALSE(bound_set(3, 9).conc_bound.has_value());
}
