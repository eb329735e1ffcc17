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

// Per-state scalars: entropies, purity, concurrence, fully entangled
// fraction and the optimal standard-teleportation fidelity.

#ifndef TBOUNDS_MEASURES_HPP
#define TBOUNDS_MEASURES_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "tbounds/errors.hpp"
#include "tbounds/kernel.hpp"
#include "tbounds/optimize.hpp"
#include "tbounds/random.hpp"
#include "tbounds/states.hpp"

namespace tbounds {

struct MeasureSet {
  std::size_t d_local = 2;
  double vn_entropy = 0.0;
  double linear_entropy = 0.0;
  double purity = 1.0;
  /// Wootters concurrence; only defined for two qubits.
  std::optional<double> concurrence;
  double singlet_fraction = 0.0;
  /// False when f came from the optimizer (d > 2) and is a lower estimate.
  bool fef_exact = true;
  double fidelity = 0.0;
  std::size_t rank = 0;
};

/// -Tr(rho ln rho) in nats, eigenvalues clamped to [0, 1], 0 ln 0 = 0.
inline double vn_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double v : rho.eigen().values) {
    const double x = std::clamp(v, 0.0, 1.0);
    if (x > 0.0) s -= x * std::log(x);
  }
  return s;
}

inline double purity(const DensityMatrix& rho) {
  return rho.matrix().data().squaredNorm();
}

/// (D / (D - 1)) (1 - Tr rho^2) with D the total dimension d^2.
inline double linear_entropy(const DensityMatrix& rho) {
  const auto D = static_cast<double>(rho.dim_total());
  if (D <= 1.0) return 0.0;
  return D * (1.0 - purity(rho)) / (D - 1.0);
}

namespace detail {
inline void require_qubits(const DensityMatrix& rho, const char* what) {
  if (rho.d_local() != 2)
    throw UnsupportedDimension(std::string(what) + " requires d_local = 2, got " +
                               std::to_string(rho.d_local()));
}

inline const Eigen::Matrix4cd& sigma_yy() {
  static const Eigen::Matrix4cd yy = [] {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
  }();
  return yy;
}
}  // namespace detail

/// Wootters concurrence max(0, mu1 - mu2 - mu3 - mu4). The mu_i are the
/// square roots of the eigenvalues of sqrt(rho) (Y(x)Y) rho* (Y(x)Y) sqrt(rho),
/// obtained as singular values of B = sqrt(rho) (Y(x)Y) sqrt(rho)* so that
/// vanishing mu_i stay accurate to machine precision.
inline double wootters_concurrence(const DensityMatrix& rho) {
  detail::require_qubits(rho, "concurrence");
  const Eigen::Matrix4cd root =
      rho.eigen().apply([](double v) { return std::sqrt(std::max(v, 0.0)); });
  const Eigen::Matrix4cd b = root * detail::sigma_yy() * root.conjugate();
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(b);
  const auto& mu = svd.singularValues();  // descending
  const double c = mu(0) - mu(1) - mu(2) - mu(3);
  return std::clamp(c, 0.0, 1.0);
}

/// max(0, l1 - l3 - 2 sqrt(l2 l4)): the largest concurrence of any
/// two-qubit state with this spectrum.
inline double spectrum_cmax(const Spectrum& spec) {
  if (spec.size() != 4)
    throw InvalidSpectrum("spectrum_cmax needs 4 eigenvalues, got " +
                          std::to_string(spec.size()));
  return std::max(0.0, spec[0] - spec[2] - 2.0 * std::sqrt(spec[1] * spec[3]));
}

/// Fully entangled fraction of a two-qubit state: the top eigenvalue of
/// Re(M), M_jk = <e_j|rho|e_k> in the magic basis. The basis is applied as
/// sqrt(2) e_j (entries 0, +-1, +-i) and the 1/2 folded in afterwards, so
/// dyadic inputs stay exact.
inline double singlet_fraction_magic(const DensityMatrix& rho) {
  detail::require_qubits(rho, "magic-basis singlet fraction");
  static const Eigen::Matrix4cd scaled_basis = [] {
    Eigen::Matrix4cd e;
    const auto mb = magic_basis();
    for (int k = 0; k < 4; ++k)
      e.col(k) = (std::sqrt(2.0) * mb[static_cast<std::size_t>(k)]).unaryExpr(
          [](complex z) { return complex(std::round(z.real()), std::round(z.imag())); });
    return e;
  }();
  const Eigen::Matrix4cd r = rho.matrix().data();
  const Eigen::Matrix4d m = 0.5 * (scaled_basis.adjoint() * r * scaled_basis).real();
  const Eigen::Matrix4d sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(3);
}

namespace detail {

/// Traceless Hermitian matrix from d^2 - 1 reals: upper off-diagonal
/// (re, im) pairs row by row, then d - 1 diagonal entries (the last one is
/// minus their sum).
inline Eigen::MatrixXcd traceless_hermitian(const std::vector<double>& x,
                                            Eigen::Index d) {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      h(i, j) = complex(x[k], x[k + 1]);
      h(j, i) = std::conj(h(i, j));
      k += 2;
    }
  double acc = 0.0;
  for (Eigen::Index i = 0; i + 1 < d; ++i) {
    h(i, i) = x[k];
    acc += x[k++];
  }
  h(d - 1, d - 1) = -acc;
  return h;
}

/// exp(iH) for Hermitian H.
inline Eigen::MatrixXcd expi(const Eigen::MatrixXcd& h) {
  if (h.rows() == 2) {
    // H = a . sigma
    const double ax = h(0, 1).real(), ay = -h(0, 1).imag(), az = h(0, 0).real();
    const double n = std::sqrt(ax * ax + ay * ay + az * az);
    const double c = std::cos(n);
    const double s = n > 0 ? std::sin(n) / n : 1.0;
    const complex i{0.0, 1.0};
    Eigen::MatrixXcd u(2, 2);
    u << c + i * s * az, i * s * complex(ax, -ay), i * s * complex(ax, ay), c - i * s * az;
    return u;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXcd ph =
      es.eigenvalues().unaryExpr([](double v) { return std::polar(1.0, v); });
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

/// <psi|rho|psi> with psi = (I (x) U)|phi+_d>, i.e. psi[i d + j] = U(j, i)/sqrt(d).
inline double me_overlap(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& u) {
  const Eigen::Index d = u.rows();
  Eigen::VectorXcd psi(d * d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) psi(i * d + j) = u(j, i) * norm;
  return psi.dot(rho * psi).real();
}

}  // namespace detail

/// max <psi|rho|psi> over psi = (I (x) U)|phi+_d>, by Nelder-Mead over the
/// chart U = U0 exp(iH) (H traceless Hermitian; global phase is irrelevant)
/// from `restarts` Haar-random U0. Restart k draws from derive_seed(seed, k),
/// so the result never decreases as restarts grow.
inline double singlet_fraction_optimize(const DensityMatrix& rho,
                                        std::size_t restarts,
                                        std::uint64_t seed,
                                        SearchOptions opts = {0.3}) {
  const auto d = static_cast<Eigen::Index>(rho.d_local());
  const Eigen::MatrixXcd& r = rho.matrix().data();
  double best = detail::me_overlap(r, Eigen::MatrixXcd::Identity(d, d));
  const std::size_t nparams = static_cast<std::size_t>(d * d - 1);
  for (std::size_t k = 0; k < restarts; ++k) {
    Engine rng(derive_seed(seed, k));
    const Eigen::MatrixXcd u0 = haar_unitary(d, rng);
    auto objective = [&](const std::vector<double>& x) {
      return detail::me_overlap(r, u0 * detail::expi(detail::traceless_hermitian(x, d)));
    };
    const auto res = maximize(objective, std::vector<double>(nparams, 0.0), opts);
    best = std::max(best, res.value);
  }
  return best;
}

/// (f d + 1) / (d + 1).
inline double fidelity_from_f(double f, std::size_t d_local) {
  const auto d = static_cast<double>(d_local);
  return (f * d + 1.0) / (d + 1.0);
}

/// f > 1/d, strictly.
inline bool useful_for_teleportation(double f, std::size_t d_local) {
  return f > 1.0 / static_cast<double>(d_local);
}

inline constexpr std::size_t kDefaultFefRestarts = 32;

inline MeasureSet measure_all(const DensityMatrix& rho,
                              std::size_t restarts = kDefaultFefRestarts,
                              std::uint64_t seed = 0) {
  MeasureSet ms;
  ms.d_local = rho.d_local();
  ms.vn_entropy = vn_entropy(rho);
  ms.purity = purity(rho);
  ms.linear_entropy = linear_entropy(rho);
  ms.rank = rho.rank();
  if (rho.d_local() == 2) {
    ms.concurrence = wootters_concurrence(rho);
    ms.singlet_fraction = singlet_fraction_magic(rho);
    ms.fef_exact = true;
  } else {
    ms.singlet_fraction = singlet_fraction_optimize(rho, restarts, seed);
    ms.fef_exact = false;
  }
  ms.fidelity = fidelity_from_f(ms.singlet_fraction, rho.d_local());
  return ms;
}

}  // namespace tbounds

#endif  // TBOUNDS_MEASURES_HPP
