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

// Dense complex-matrix substrate: a validated square matrix type, the
// handful of algebraic operations the rest of the library needs, and a
// Hermitian eigensolver (Eigen's self-adjoint solver, re-sorted descending).

#ifndef TBOUNDS_KERNEL_HPP
#define TBOUNDS_KERNEL_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "tbounds/errors.hpp"

namespace tbounds {

using complex = std::complex<double>;
using CVector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kRankRelTol = 1e-10;

/// Square complex matrix with finite entries.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t dim)
      : m_(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                  static_cast<Eigen::Index>(dim))) {
    if (dim == 0) throw DimensionMismatch("matrix dimension must be positive");
  }

  explicit ComplexMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0)
      throw DimensionMismatch("matrix must be square and non-empty, got " +
                              std::to_string(m_.rows()) + "x" +
                              std::to_string(m_.cols()));
    if (!m_.allFinite()) throw DimensionMismatch("matrix has non-finite entries");
  }

  static ComplexMatrix identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return ComplexMatrix(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(n, n)));
  }

  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<complex>> rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXcd m(n, n);
    Eigen::Index i = 0;
    for (const auto& row : rows) {
      if (static_cast<Eigen::Index>(row.size()) != n)
        throw DimensionMismatch("ragged row in matrix literal");
      Eigen::Index j = 0;
      for (const auto& v : row) m(i, j++) = v;
      ++i;
    }
    return ComplexMatrix(std::move(m));
  }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXcd& data() const noexcept { return m_; }

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  Eigen::MatrixXcd m_;
};

namespace detail {
inline void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                             const char* op) {
  if (a.dim() != b.dim())
    throw DimensionMismatch(std::string(op) + ": dimensions " +
                            std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()) + " differ");
}
}  // namespace detail

inline complex trace(const ComplexMatrix& m) { return m.data().trace(); }

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_same_dim(a, b, "matmul");
  return ComplexMatrix(Eigen::MatrixXcd(a.data() * b.data()));
}

inline ComplexMatrix dagger(const ComplexMatrix& m) {
  return ComplexMatrix(Eigen::MatrixXcd(m.data().adjoint()));
}

inline ComplexMatrix conjugate(const ComplexMatrix& m) {
  return ComplexMatrix(Eigen::MatrixXcd(m.data().conjugate()));
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto na = a.data().rows();
  const auto nb = b.data().rows();
  Eigen::MatrixXcd out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < na; ++j)
      out.block(i * nb, j * nb, nb, nb) = a.data()(i, j) * b.data();
  return ComplexMatrix(std::move(out));
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_same_dim(a, b, "add");
  return ComplexMatrix(Eigen::MatrixXcd(a.data() + b.data()));
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_same_dim(a, b, "subtract");
  return ComplexMatrix(Eigen::MatrixXcd(a.data() - b.data()));
}

inline ComplexMatrix operator*(complex s, const ComplexMatrix& m) {
  return ComplexMatrix(Eigen::MatrixXcd(s * m.data()));
}

/// |v><v| (no normalization applied).
inline ComplexMatrix outer(const CVector& v) {
  return ComplexMatrix(Eigen::MatrixXcd(v * v.adjoint()));
}

/// Largest entrywise modulus of a - b.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_same_dim(a, b, "max_abs_diff");
  return (a.data() - b.data()).cwiseAbs().maxCoeff();
}

inline double hermiticity_error(const ComplexMatrix& m) {
  return (m.data() - m.data().adjoint()).cwiseAbs().maxCoeff();
}

/// Eigenpairs of a Hermitian matrix, values sorted descending.
struct EigenDecomposition {
  std::vector<double> values;
  std::vector<CVector> vectors;

  std::size_t dim() const noexcept { return values.size(); }

  ComplexMatrix reconstruct() const {
    const auto n = static_cast<Eigen::Index>(values.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t k = 0; k < values.size(); ++k)
      m += values[k] * vectors[k] * vectors[k].adjoint();
    return ComplexMatrix(std::move(m));
  }

  /// Sum_k g(values[k]) |v_k><v_k|.
  template <class Fn>
  Eigen::MatrixXcd apply(Fn&& g) const {
    const auto n = static_cast<Eigen::Index>(values.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t k = 0; k < values.size(); ++k)
      m += g(values[k]) * vectors[k] * vectors[k].adjoint();
    return m;
  }
};

/// Hermitian eigendecomposition. Throws NotHermitian when any entry of
/// m - m^dagger exceeds 1e-10 in modulus. Only the Hermitian part is used,
/// so the result is a deterministic function of the input.
inline EigenDecomposition eigh(const ComplexMatrix& m) {
  const double herr = hermiticity_error(m);
  if (herr > kHermitianTol)
    throw NotHermitian("matrix is not Hermitian (max |m - m^dagger| = " +
                       std::to_string(herr) + ")");
  const Eigen::MatrixXcd h = 0.5 * (m.data() + m.data().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success)
    throw NotHermitian("eigensolver failed to converge");
  const auto n = h.rows();
  EigenDecomposition out;
  out.values.reserve(static_cast<std::size_t>(n));
  out.vectors.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    out.values.push_back(solver.eigenvalues()(k));
    out.vectors.emplace_back(solver.eigenvectors().col(k));
  }
  return out;
}

/// Number of eigenvalues strictly above rel_tol * max(values).
inline std::size_t numerical_rank(const EigenDecomposition& e,
                                  double rel_tol = kRankRelTol) {
  if (e.values.empty()) return 0;
  const double top = *std::max_element(e.values.begin(), e.values.end());
  const double cut = rel_tol * std::max(top, 0.0);
  std::size_t rank = 0;
  for (double v : e.values) {
    if (v < -cut)
      throw NegativeEigenvalue("eigenvalue " + std::to_string(v) +
                               " below -rel_tol * max");
    if (v > cut) ++rank;
  }
  return rank;
}

}  // namespace tbounds

#endif  // TBOUNDS_KERNEL_HPP
