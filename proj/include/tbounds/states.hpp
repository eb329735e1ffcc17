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

// Density matrices and the named state families: Bell and magic bases,
// rank-2/3/4 Werner states, the MEMS spectrum family, and Hilbert-Schmidt
// random states of fixed rank.

#ifndef TBOUNDS_STATES_HPP
#define TBOUNDS_STATES_HPP

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "tbounds/errors.hpp"
#include "tbounds/kernel.hpp"
#include "tbounds/random.hpp"

namespace tbounds {

inline constexpr double kStateTol = 1e-10;

namespace detail {
inline std::size_t exact_sqrt(std::size_t n) {
  auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  return r * r == n ? r : 0;
}
}  // namespace detail

/// Hermitian, unit-trace, positive-semidefinite matrix on a d x d bipartite
/// space. Construction validates; the eigendecomposition computed during
/// validation is kept.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(ComplexMatrix m, std::size_t d_local) {
    if (d_local == 0 || m.dim() != d_local * d_local)
      throw ValidationError("shape", static_cast<double>(m.dim()));
    const double herr = hermiticity_error(m);
    if (herr > kStateTol) throw ValidationError("hermiticity", herr);
    const double terr = std::abs(trace(m).real() - 1.0);
    if (terr > kStateTol) throw ValidationError("trace", terr);
    EigenDecomposition e = eigh(m);
    const double lowest = e.values.back();
    if (lowest < -kStateTol) throw ValidationError("positivity", lowest);
    return DensityMatrix(std::move(m), d_local, std::move(e));
  }

  static DensityMatrix from_matrix(ComplexMatrix m) {
    const std::size_t d = detail::exact_sqrt(m.dim());
    if (d == 0) throw ValidationError("shape", static_cast<double>(m.dim()));
    return from_matrix(std::move(m), d);
  }

  std::size_t d_local() const noexcept { return d_local_; }
  std::size_t dim_total() const noexcept { return matrix_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const EigenDecomposition& eigen() const noexcept { return eigen_; }
  std::size_t rank(double rel_tol = kRankRelTol) const {
    return numerical_rank(eigen_, rel_tol);
  }

 private:
  DensityMatrix(ComplexMatrix m, std::size_t d, EigenDecomposition e)
      : matrix_(std::move(m)), d_local_(d), eigen_(std::move(e)) {}

  ComplexMatrix matrix_;
  std::size_t d_local_;
  EigenDecomposition eigen_;
};

/// Descending, nonnegative eigenvalue list summing to one.
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw InvalidSpectrum("spectrum is empty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i]) || values_[i] < 0.0)
        throw InvalidSpectrum("spectrum entry " + std::to_string(i) +
                              " is negative or non-finite");
      if (i > 0 && values_[i] > values_[i - 1])
        throw InvalidSpectrum("spectrum is not sorted descending at entry " +
                              std::to_string(i));
    }
    const double sum = std::accumulate(values_.begin(), values_.end(), 0.0);
    if (std::abs(sum - 1.0) > kStateTol)
      throw InvalidSpectrum("spectrum sums to " + std::to_string(sum));
  }

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// Eigenvalues of rho with numerical dust below zero clamped away.
inline Spectrum spectrum_of(const DensityMatrix& rho) {
  std::vector<double> v = rho.eigen().values;
  for (double& x : v) x = std::max(x, 0.0);
  return Spectrum(std::move(v));
}

struct WernerParams {
  int rank = 4;
  double p = 0.0;
};

enum class Bell { phi_plus, phi_minus, psi_plus, psi_minus };

/// Two-qubit Bell state in the |00>,|01>,|10>,|11> ordering.
inline CVector bell_state(Bell which) {
  const double s = 1.0 / std::sqrt(2.0);
  CVector v = CVector::Zero(4);
  switch (which) {
    case Bell::phi_plus:  v(0) = s; v(3) = s; break;
    case Bell::phi_minus: v(0) = s; v(3) = -s; break;
    case Bell::psi_plus:  v(1) = s; v(2) = s; break;
    case Bell::psi_minus: v(1) = s; v(2) = -s; break;
  }
  return v;
}

/// phi+, phi-, psi+, psi-.
inline std::array<CVector, 4> bell_basis() {
  return {bell_state(Bell::phi_plus), bell_state(Bell::phi_minus),
          bell_state(Bell::psi_plus), bell_state(Bell::psi_minus)};
}

/// e1 = phi+, e2 = i phi-, e3 = i psi+, e4 = psi-. Every maximally entangled
/// two-qubit state has real coefficients in this basis up to a global phase.
inline std::array<CVector, 4> magic_basis() {
  const complex i{0.0, 1.0};
  return {bell_state(Bell::phi_plus), CVector(i * bell_state(Bell::phi_minus)),
          CVector(i * bell_state(Bell::psi_plus)), bell_state(Bell::psi_minus)};
}

/// Computational basis vector |k> of dimension n.
inline CVector basis_vector(std::size_t n, std::size_t k) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(n));
  v(static_cast<Eigen::Index>(k)) = 1.0;
  return v;
}

inline DensityMatrix pure_state(const CVector& v) {
  const double norm = v.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kStateTol)
    throw NotNormalized("state vector has norm " + std::to_string(norm));
  const std::size_t d = detail::exact_sqrt(static_cast<std::size_t>(v.size()));
  if (d == 0)
    throw DimensionMismatch("vector length " + std::to_string(v.size()) +
                            " is not a perfect square");
  return DensityMatrix::from_matrix(outer(v), d);
}

inline DensityMatrix maximally_mixed(std::size_t d_local) {
  const std::size_t n = d_local * d_local;
  return DensityMatrix::from_matrix(
      complex(1.0 / static_cast<double>(n), 0.0) * ComplexMatrix::identity(n),
      d_local);
}

/// lambda1 |psi-><psi-| + lambda2 |00><00| + lambda3 |psi+><psi+| + lambda4 |11><11|.
inline DensityMatrix mems(const Spectrum& spec) {
  if (spec.size() != 4)
    throw InvalidSpectrum("MEMS needs a 4-entry spectrum, got " +
                          std::to_string(spec.size()));
  // Entries written out so dyadic spectra give exact matrices.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 0) = spec[1];
  m(1, 1) = m(2, 2) = 0.5 * (spec[0] + spec[2]);
  m(1, 2) = m(2, 1) = 0.5 * (spec[2] - spec[0]);
  m(3, 3) = spec[3];
  return DensityMatrix::from_matrix(ComplexMatrix(std::move(m)), 2);
}

/// Werner-type state of rank 2, 3 or 4.
///   rank 4: (1 - p) I/4 + p |psi+><psi+|
///   rank 3: MEMS with spectrum ((1+2p)/3, (1-p)/3, (1-p)/3, 0)
///   rank 2: MEMS with spectrum ((1+p)/2, (1-p)/2, 0, 0)
inline DensityMatrix werner(const WernerParams& params) {
  if (params.rank < 2 || params.rank > 4)
    throw InvalidRank("Werner rank must be 2, 3 or 4, got " +
                      std::to_string(params.rank));
  const double p = params.p;
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidP("Werner parameter p must lie in [0, 1], got " +
                   std::to_string(p));
  switch (params.rank) {
    case 4: {
      const double q = (1.0 - p) / 4.0;
      Eigen::MatrixXcd m = q * Eigen::MatrixXcd::Identity(4, 4);
      m(1, 1) += 0.5 * p;
      m(2, 2) += 0.5 * p;
      m(1, 2) = m(2, 1) = 0.5 * p;
      return DensityMatrix::from_matrix(ComplexMatrix(std::move(m)), 2);
    }
    case 3:
      return mems(Spectrum({(1.0 + 2.0 * p) / 3.0, (1.0 - p) / 3.0,
                            (1.0 - p) / 3.0, 0.0}));
    default:
      return mems(Spectrum({(1.0 + p) / 2.0, (1.0 - p) / 2.0, 0.0, 0.0}));
  }
}

/// rho = A A^dagger / Tr(A A^dagger) with A a (d^2 x r) Ginibre matrix drawn
/// from `rng`: the Hilbert-Schmidt induced measure on rank-r states.
inline DensityMatrix random_rank_r(std::size_t d_local, std::size_t r,
                                   Engine& rng) {
  const std::size_t n = d_local * d_local;
  if (d_local < 1 || r < 1 || r > n)
    throw InvalidRank("rank must lie in [1, " + std::to_string(n) + "], got " +
                      std::to_string(r));
  const Eigen::MatrixXcd a = ginibre(static_cast<Eigen::Index>(n),
                                     static_cast<Eigen::Index>(r), rng);
  Eigen::MatrixXcd m = a * a.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  m /= m.trace().real();
  return DensityMatrix::from_matrix(ComplexMatrix(std::move(m)), d_local);
}

inline DensityMatrix random_rank_r(std::size_t d_local, std::size_t r,
                                   std::uint64_t seed) {
  Engine rng(seed);
  return random_rank_r(d_local, r, rng);
}

/// (U (x) V) rho (U (x) V)^dagger.
inline DensityMatrix local_conjugate(const DensityMatrix& rho,
                                     const Eigen::MatrixXcd& u,
                                     const Eigen::MatrixXcd& v) {
  const Eigen::MatrixXcd w =
      kron(ComplexMatrix(u), ComplexMatrix(v)).data();
  Eigen::MatrixXcd m = w * rho.matrix().data() * w.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix::from_matrix(ComplexMatrix(std::move(m)), rho.d_local());
}

/// Partial trace of an (da*db)-dimensional operator; keeps subsystem A
/// when `keep_first` is true, otherwise B.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t da,
                                   std::size_t db, bool keep_first) {
  if (m.dim() != da * db)
    throw DimensionMismatch("partial_trace: " + std::to_string(m.dim()) +
                            " != " + std::to_string(da) + "*" +
                            std::to_string(db));
  const auto& x = m.data();
  const auto A = static_cast<Eigen::Index>(da);
  const auto B = static_cast<Eigen::Index>(db);
  if (keep_first) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(A, A);
    for (Eigen::Index i = 0; i < A; ++i)
      for (Eigen::Index j = 0; j < A; ++j)
        for (Eigen::Index k = 0; k < B; ++k) out(i, j) += x(i * B + k, j * B + k);
    return ComplexMatrix(std::move(out));
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(B, B);
  for (Eigen::Index i = 0; i < B; ++i)
    for (Eigen::Index j = 0; j < B; ++j)
      for (Eigen::Index k = 0; k < A; ++k) out(i, j) += x(k * B + i, k * B + j);
  return ComplexMatrix(std::move(out));
}

}  // namespace tbounds

#endif  // TBOUNDS_STATES_HPP
