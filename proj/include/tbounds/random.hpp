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

#ifndef TBOUNDS_RANDOM_HPP
#define TBOUNDS_RANDOM_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>

namespace tbounds {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of sub-stream `index` under `master`:
///   splitmix64(master ^ splitmix64(index)).
/// Each trial or restart owns its own stream, so results do not depend on
/// the order or thread in which streams are consumed.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::uint64_t index) noexcept {
  return splitmix64(master ^ splitmix64(index));
}

/// Matrix of independent standard complex Gaussians (real and imaginary
/// parts each N(0, 1)), filled row-major.
inline Eigen::MatrixXcd ginibre(Eigen::Index rows, Eigen::Index cols,
                                Engine& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      a(i, j) = {re, im};
    }
  return a;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
/// R's diagonal moved into Q.
inline Eigen::MatrixXcd haar_unitary(Eigen::Index n, Engine& rng) {
  const Eigen::MatrixXcd z = ginibre(n, n, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0) q.col(k) *= d / mag;
  }
  return q;
}

}  // namespace tbounds

#endif  // TBOUNDS_RANDOM_HPP
