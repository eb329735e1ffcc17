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

// Rank-dependent thresholds on mixedness and entanglement beyond which a
// bipartite state cannot beat the classical teleportation fidelity.
//
// The von Neumann threshold is the Shannon entropy of the extremal
// distribution (1/d, (1 - 1/d)/(r - 1), ..., (1 - 1/d)/(r - 1)), i.e.
//   S*(d, r) = ln d + (1 - 1/d) ln((r - 1)/(d - 1)).
// The same bound is sometimes written with the exponent (1 - 1/d^2) in front
// of the logarithm; that form does not match the extremal distribution and
// is not used here.

#ifndef TBOUNDS_BOUNDS_HPP
#define TBOUNDS_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tbounds/errors.hpp"
#include "tbounds/measures.hpp"
#include "tbounds/states.hpp"

namespace tbounds {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

namespace detail {
inline void require_rank(std::size_t d_local, int rank) {
  const auto rmax = static_cast<long long>(d_local * d_local);
  if (d_local < 2 || rank < 2 || rank > rmax)
    throw InvalidRank("rank must lie in [2, " + std::to_string(rmax) + "] for d = " +
                      std::to_string(d_local) + ", got " + std::to_string(rank));
}
}  // namespace detail

/// S*(d, r), natural-log units.
inline double vn_entropy_bound(std::size_t d_local, int rank) {
  detail::require_rank(d_local, rank);
  const double top = 1.0 / static_cast<double>(d_local);
  const double rest = (1.0 - top) / static_cast<double>(rank - 1);
  return -top * std::log(top) - (1.0 - top) * std::log(rest);
}

/// S_L*(d, r) = [r(d^2 - 1) - 2d(d - 1)] / [(d^2 - 1)(r - 1)], reduced.
inline Rational linear_entropy_bound_exact(std::size_t d_local, int rank) {
  detail::require_rank(d_local, rank);
  const auto d = static_cast<std::int64_t>(d_local);
  const std::int64_t r = rank;
  std::int64_t num = r * (d * d - 1) - 2 * d * (d - 1);
  std::int64_t den = (d * d - 1) * (r - 1);
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

inline double linear_entropy_bound(std::size_t d_local, int rank) {
  return linear_entropy_bound_exact(d_local, rank).value();
}

/// C_r for two qubits: spectrum_cmax of (1/2, 1/(2(r-1)) x (r-1), 0...).
inline double concurrence_lower_bound(int rank) {
  if (rank < 2 || rank > 4)
    throw InvalidRank("concurrence bound needs rank 2, 3 or 4, got " +
                      std::to_string(rank));
  std::vector<double> v(4, 0.0);
  v[0] = 0.5;
  for (int k = 1; k < rank; ++k) v[static_cast<std::size_t>(k)] = 0.5 / (rank - 1);
  return spectrum_cmax(Spectrum(std::move(v)));
}

struct FidelityCurves {
  double upper_r4;  ///< (2 + C)/3
  double upper_r3;  ///< (5 + 4C)/9
  double lower_r2;  ///< (2C + 1)/3
  double lower_alt;  ///< (3 + C)/6
  double lower_combined;  ///< max(lower_r2, lower_alt)
};

inline FidelityCurves fidelity_curves(double c) {
  FidelityCurves out{};
  out.upper_r4 = (2.0 + c) / 3.0;
  out.upper_r3 = (5.0 + 4.0 * c) / 9.0;
  out.lower_r2 = (2.0 * c + 1.0) / 3.0;
  out.lower_alt = (3.0 + c) / 6.0;
  out.lower_combined = std::max(out.lower_r2, out.lower_alt);
  return out;
}

/// Fidelity of the rank-r Werner state with concurrence C (entangled branch).
inline double werner_fidelity_curve(int rank, double c) {
  const auto fc = fidelity_curves(c);
  switch (rank) {
    case 4: return fc.upper_r4;
    case 3: return fc.upper_r3;
    case 2: return fc.lower_r2;
    default:
      throw InvalidRank("Werner curve needs rank 2, 3 or 4, got " + std::to_string(rank));
  }
}

struct BoundSet {
  std::size_t d_local;
  int rank;
  double vn_bound;
  double lin_bound;
  Rational lin_bound_exact;
  std::optional<double> conc_bound;  ///< two qubits only
};

inline BoundSet bound_set(std::size_t d_local, int rank) {
  BoundSet b{d_local, rank, vn_entropy_bound(d_local, rank),
             linear_entropy_bound(d_local, rank),
             linear_entropy_bound_exact(d_local, rank), std::nullopt};
  if (d_local == 2) b.conc_bound = concurrence_lower_bound(rank);
  return b;
}

/// Signed margins are positive in the direction of the flag they back.
struct Verdict {
  bool useful = false;
  bool vn_exceeds = false;
  bool lin_exceeds = false;
  std::optional<bool> conc_below;
  double useful_margin = 0.0;             ///< f - 1/d
  std::optional<double> vn_margin;        ///< S - S*
  std::optional<double> lin_margin;       ///< S_L - S_L*
  std::optional<double> conc_margin;      ///< C_r - C
};

/// Classifies a state against the thresholds for its own numerical rank.
/// Rank-1 states carry no rank bound; their exceed-flags stay false.
inline Verdict classify(const MeasureSet& ms) {
  Verdict v;
  v.useful_margin = ms.singlet_fraction - 1.0 / static_cast<double>(ms.d_local);
  v.useful = useful_for_teleportation(ms.singlet_fraction, ms.d_local);
  const int rank = static_cast<int>(ms.rank);
  if (rank < 2) return v;
  const BoundSet b = bound_set(ms.d_local, rank);
  v.vn_margin = ms.vn_entropy - b.vn_bound;
  v.vn_exceeds = ms.vn_entropy > b.vn_bound;
  v.lin_margin = ms.linear_entropy - b.lin_bound;
  v.lin_exceeds = ms.linear_entropy > b.lin_bound;
  if (b.conc_bound && ms.concurrence) {
    v.conc_margin = *b.conc_bound - *ms.concurrence;
    v.conc_below = *ms.concurrence < *b.conc_bound;
  }
  return v;
}

}  // namespace tbounds

#endif  // TBOUNDS_BOUNDS_HPP
