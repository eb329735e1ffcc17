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

// Empirical verification of the rank-dependent claims.
//
// Every claim is reduced to a per-state "slack": nonnegative when the claim
// holds for that state, negative by the amount it fails. A sample violates
// the claim when slack < -tolerance. Implications "A implies B" are encoded
// as max(slack of not-A, slack of B).

#ifndef TBOUNDS_HARNESS_HPP
#define TBOUNDS_HARNESS_HPP

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tbounds/bounds.hpp"
#include "tbounds/measures.hpp"
#include "tbounds/optimize.hpp"
#include "tbounds/random.hpp"
#include "tbounds/state_io.hpp"
#include "tbounds/states.hpp"

namespace tbounds {

enum class ClaimId {
  vn_bound,
  lin_bound,
  conc_bound_state,
  conc_bound_spectrum,
  fid_upper_r4,
  fid_upper_r3,
  fid_lower,
  eq9_dominates,
  mems_attains,
  werner_saturates,
};

inline constexpr std::array<std::pair<ClaimId, std::string_view>, 10> kClaimNames{{
    {ClaimId::vn_bound, "vn_bound"},
    {ClaimId::lin_bound, "lin_bound"},
    {ClaimId::conc_bound_state, "conc_bound_state"},
    {ClaimId::conc_bound_spectrum, "conc_bound_spectrum"},
    {ClaimId::fid_upper_r4, "fid_upper_r4"},
    {ClaimId::fid_upper_r3, "fid_upper_r3"},
    {ClaimId::fid_lower, "fid_lower"},
    {ClaimId::eq9_dominates, "eq9_dominates"},
    {ClaimId::mems_attains, "mems_attains"},
    {ClaimId::werner_saturates, "werner_saturates"},
}};

inline std::string_view to_string(ClaimId c) {
  for (const auto& [id, name] : kClaimNames)
    if (id == c) return name;
  return "unknown";
}

inline std::optional<ClaimId> claim_from_string(std::string_view s) {
  for (const auto& [id, name] : kClaimNames)
    if (name == s) return id;
  return std::nullopt;
}

/// Grid claims walk a deterministic family instead of random states.
inline bool is_grid_claim(ClaimId c) {
  return c == ClaimId::mems_attains || c == ClaimId::werner_saturates;
}

enum class Mode { Assert, Survey };

inline std::string_view to_string(Mode m) { return m == Mode::Assert ? "assert" : "survey"; }

/// Claims whose derivation rests on a step not valid for every state of the
/// rank, or which are conjectural, default to survey.
inline Mode default_mode(ClaimId c, int rank) {
  switch (c) {
    case ClaimId::vn_bound: return rank == 4 ? Mode::Assert : Mode::Survey;
    case ClaimId::conc_bound_state:
    case ClaimId::fid_upper_r3:
    case ClaimId::fid_lower: return Mode::Survey;
    default: return Mode::Assert;
  }
}

inline constexpr double kDefaultTolerance = 1e-9;

struct ClaimSpec {
  ClaimId claim = ClaimId::vn_bound;
  int rank = 4;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  Mode mode = Mode::Assert;
  double tolerance = kDefaultTolerance;
  /// Worker threads; 0 means hardware concurrency. Never affects results.
  std::size_t workers = 1;

  static ClaimSpec with_default_mode(ClaimId c, int rank, std::size_t trials,
                                     std::uint64_t seed) {
    ClaimSpec s;
    s.claim = c;
    s.rank = rank;
    s.trials = trials;
    s.seed = seed;
    s.mode = default_mode(c, rank);
    return s;
  }
};

struct ClaimEvaluation {
  double slack = 0.0;
  std::vector<std::pair<std::string, double>> terms;
  MeasureSet measures;
  double cmax = 0.0;  ///< spectrum_cmax of the state's spectrum
};

struct Counterexample {
  std::size_t trial;
  DensityMatrix state;
  ClaimEvaluation evaluation;
};

struct VerificationReport {
  ClaimSpec spec;
  std::size_t trials_run = 0;
  std::size_t violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::vector<Counterexample> counterexamples;
  double wall_time_s = 0.0;

  double violation_rate() const {
    return trials_run ? static_cast<double>(violations) / static_cast<double>(trials_run) : 0.0;
  }
  /// Survey runs always pass; assert runs pass with zero violations.
  bool passed() const { return spec.mode == Mode::Survey || violations == 0; }
};

inline constexpr std::size_t kMaxCounterexamples = 10;

namespace detail {

inline void require_claim_rank(ClaimId c, int rank) {
  if (rank < 2 || rank > 4)
    throw InvalidRank("claim rank must be 2, 3 or 4, got " + std::to_string(rank));
  if (c == ClaimId::fid_upper_r3 && rank != 3)
    throw InvalidRank("fid_upper_r3 applies to rank-3 states only");
}

/// Werner relations expressed through f alone, so that a dumped state can be
/// re-checked without knowing p.
inline double werner_lin_from_f(int rank, double f) {
  switch (rank) {
    case 4: { const double p = (4.0 * f - 1.0) / 3.0; return 1.0 - p * p; }
    case 3: { const double p = (3.0 * f - 1.0) / 2.0; return 8.0 * (1.0 - p * p) / 9.0; }
    default: { const double p = 2.0 * f - 1.0; return 2.0 * (1.0 - p * p) / 3.0; }
  }
}

inline double werner_conc_from_f(int rank, double f) {
  switch (rank) {
    case 4: return std::max(0.0, 2.0 * f - 1.0);
    case 3: return (3.0 * f - 1.0) / 2.0;
    default: return f;
  }
}

}  // namespace detail

/// Evaluates one claim on one two-qubit state.
inline ClaimEvaluation evaluate_claim(ClaimId claim, int rank, const DensityMatrix& rho,
                                      double tolerance = kDefaultTolerance) {
  detail::require_claim_rank(claim, rank);
  detail::require_qubits(rho, "claim evaluation");
  ClaimEvaluation ev;
  ev.measures = measure_all(rho);
  ev.cmax = spectrum_cmax(spectrum_of(rho));
  const MeasureSet& m = ev.measures;
  const double f = m.singlet_fraction;
  const double c = *m.concurrence;
  const double fef_excess = f - 0.5;
  auto implication = [&](double antecedent_excess, double consequent_excess) {
    // violated when both exceed: slack = -min(a, b)
    return -std::min(antecedent_excess, consequent_excess);
  };

  switch (claim) {
    case ClaimId::vn_bound: {
      const double e = m.vn_entropy - vn_entropy_bound(2, rank);
      ev.terms = {{"entropy_excess", e}, {"fef_excess", fef_excess}};
      ev.slack = implication(e, fef_excess);
      break;
    }
    case ClaimId::lin_bound: {
      const double e = m.linear_entropy - linear_entropy_bound(2, rank);
      ev.terms = {{"linear_entropy_excess", e}, {"fef_excess", fef_excess}};
      ev.slack = implication(e, fef_excess);
      break;
    }
    case ClaimId::conc_bound_state: {
      const double deficit = concurrence_lower_bound(rank) - c;
      ev.terms = {{"fef_excess", fef_excess}, {"concurrence_deficit", deficit}};
      ev.slack = implication(fef_excess, deficit);
      break;
    }
    case ClaimId::conc_bound_spectrum: {
      const double deficit = concurrence_lower_bound(rank) - ev.cmax;
      ev.terms = {{"fef_excess", fef_excess}, {"cmax_deficit", deficit}};
      ev.slack = implication(fef_excess, deficit);
      break;
    }
    case ClaimId::fid_upper_r4: {
      const double e = m.fidelity - fidelity_curves(c).upper_r4;
      ev.terms = {{"fidelity_excess", e}};
      ev.slack = -e;
      break;
    }
    case ClaimId::fid_upper_r3: {
      const double e = m.fidelity - fidelity_curves(c).upper_r3;
      ev.terms = {{"fidelity_excess", e}};
      ev.slack = -e;
      break;
    }
    case ClaimId::fid_lower: {
      const double deficit = fidelity_curves(c).lower_combined - m.fidelity;
      ev.terms = {{"fidelity_deficit", deficit}};
      ev.slack = -deficit;
      break;
    }
    case ClaimId::eq9_dominates: {
      const double e = c - ev.cmax;
      ev.terms = {{"concurrence_excess", e}};
      ev.slack = -e;
      break;
    }
    case ClaimId::mems_attains: {
      const double gap = c - ev.cmax;
      ev.terms = {{"concurrence_gap", gap}};
      ev.slack = -std::abs(gap);
      break;
    }
    case ClaimId::werner_saturates: {
      const double lin_res = m.linear_entropy - detail::werner_lin_from_f(rank, f);
      const double conc_res = c - detail::werner_conc_from_f(rank, f);
      ev.terms = {{"linear_entropy_residual", lin_res}, {"concurrence_residual", conc_res}};
      double worst = std::max(std::abs(lin_res), std::abs(conc_res));
      if (std::abs(fef_excess) <= tolerance) {
        const double sat_lin = m.linear_entropy - linear_entropy_bound(2, rank);
        const double sat_conc = c - concurrence_lower_bound(rank);
        ev.terms.emplace_back("saturation_linear_entropy_gap", sat_lin);
        ev.terms.emplace_back("saturation_concurrence_gap", sat_conc);
        worst = std::max({worst, std::abs(sat_lin), std::abs(sat_conc)});
      }
      ev.slack = -worst;
      break;
    }
  }
  return ev;
}

/// Deterministic two-qubit spectrum grid: partitions n1 >= n2 >= n3 >= n4 >= 0
/// of the smallest N with at least `count` of them, scaled by 1/N, then
/// `count` of them picked at evenly spaced positions in lexicographic order.
inline std::vector<Spectrum> mems_spectrum_grid(std::size_t count) {
  for (int n = 1;; ++n) {
    std::vector<std::array<int, 4>> parts;
    for (int a = n; a >= 0; --a)
      for (int b = std::min(a, n - a); b >= 0; --b)
        for (int c = std::min(b, n - a - b); c >= 0; --c) {
          const int d = n - a - b - c;
          if (d <= c) parts.push_back({a, b, c, d});
        }
    if (parts.size() < count) continue;
    std::vector<Spectrum> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      const auto& p = parts[k * parts.size() / count];
      std::vector<double> v(4);
      for (std::size_t i = 0; i < 4; ++i) v[i] = static_cast<double>(p[i]) / n;
      out.emplace_back(std::move(v));
    }
    return out;
  }
}

/// p-grid on [0, 1] with `count` points where the point nearest to the
/// saturation parameter (f = 1/2) is replaced by it exactly.
inline std::vector<double> werner_p_grid(int rank, std::size_t count) {
  const double p_star = rank == 4 ? 1.0 / 3.0 : rank == 3 ? 0.25 : 0.0;
  std::vector<double> ps(count);
  std::size_t nearest = 0;
  for (std::size_t k = 0; k < count; ++k) {
    ps[k] = count == 1 ? p_star : static_cast<double>(k) / static_cast<double>(count - 1);
    if (std::abs(ps[k] - p_star) < std::abs(ps[nearest] - p_star)) nearest = k;
  }
  ps[nearest] = p_star;
  return ps;
}

namespace detail {

inline std::size_t resolve_workers(std::size_t requested, std::size_t jobs) {
  std::size_t w = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(w, jobs));
}

/// Runs fn(i) for i in [0, n) on `workers` threads, interleaved by index.
template <class Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  workers = resolve_workers(workers, n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

/// Runs one claim. Identical specs give identical reports (apart from
/// wall_time_s) for any worker count: trial i always uses stream
/// derive_seed(seed, i) and reductions are order-independent.
inline VerificationReport run_claim(const ClaimSpec& spec) {
  detail::require_claim_rank(spec.claim, spec.rank);
  if (spec.trials < 1) throw std::invalid_argument("trials must be at least 1");
  const auto start = std::chrono::steady_clock::now();

  std::vector<Spectrum> spectra;
  std::vector<double> ps;
  if (spec.claim == ClaimId::mems_attains) spectra = mems_spectrum_grid(spec.trials);
  if (spec.claim == ClaimId::werner_saturates) ps = werner_p_grid(spec.rank, spec.trials);

  auto sample = [&](std::size_t i) {
    if (spec.claim == ClaimId::mems_attains) return mems(spectra[i]);
    if (spec.claim == ClaimId::werner_saturates) return werner({spec.rank, ps[i]});
    return random_rank_r(2, static_cast<std::size_t>(spec.rank), derive_seed(spec.seed, i));
  };

  const std::size_t workers = detail::resolve_workers(spec.workers, spec.trials);
  std::vector<double> slack(spec.trials);
  std::vector<std::vector<Counterexample>> found(workers);
  detail::parallel_for(spec.trials, workers, [&](std::size_t i, std::size_t w) {
    DensityMatrix rho = sample(i);
    ClaimEvaluation ev = evaluate_claim(spec.claim, spec.rank, rho, spec.tolerance);
    slack[i] = ev.slack;
    // Each worker sees its indices in increasing order, so its first
    // kMaxCounterexamples are the only ones that can make the global cut.
    if (ev.slack < -spec.tolerance && found[w].size() < kMaxCounterexamples)
      found[w].push_back({i, std::move(rho), std::move(ev)});
  });

  VerificationReport rep;
  rep.spec = spec;
  rep.trials_run = spec.trials;
  for (double s : slack) {
    rep.worst_margin = std::min(rep.worst_margin, s);
    if (s < -spec.tolerance) ++rep.violations;
  }
  for (auto& v : found)
    for (auto& c : v) rep.counterexamples.push_back(std::move(c));
  std::sort(rep.counterexamples.begin(), rep.counterexamples.end(),
            [](const Counterexample& a, const Counterexample& b) { return a.trial < b.trial; });
  if (rep.counterexamples.size() > kMaxCounterexamples)
    rep.counterexamples.erase(rep.counterexamples.begin() + kMaxCounterexamples,
                              rep.counterexamples.end());
  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline nlohmann::ordered_json measures_to_json(const MeasureSet& m) {
  nlohmann::ordered_json j;
  j["vn_entropy"] = m.vn_entropy;
  j["linear_entropy"] = m.linear_entropy;
  j["purity"] = m.purity;
  j["concurrence"] = m.concurrence ? nlohmann::ordered_json(*m.concurrence) : nullptr;
  j["singlet_fraction"] = m.singlet_fraction;
  j["fef_exact"] = m.fef_exact;
  j["fidelity"] = m.fidelity;
  j["rank"] = m.rank;
  return j;
}

inline nlohmann::ordered_json evaluation_margins_to_json(const ClaimEvaluation& ev) {
  nlohmann::ordered_json j;
  j["slack"] = ev.slack;
  for (const auto& [name, value] : ev.terms) j[name] = value;
  return j;
}

inline nlohmann::ordered_json report_to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["claim_id"] = std::string(to_string(r.spec.claim));
  j["rank"] = r.spec.rank;
  j["trials"] = r.trials_run;
  j["seed"] = r.spec.seed;
  j["mode"] = std::string(to_string(r.spec.mode));
  j["tolerance"] = r.spec.tolerance;
  j["violations"] = r.violations;
  j["violation_rate"] = r.violation_rate();
  j["worst_margin"] = r.worst_margin;
  j["passed"] = r.passed();
  auto cx = nlohmann::ordered_json::array();
  for (const auto& c : r.counterexamples) {
    nlohmann::ordered_json e;
    e["trial"] = c.trial;
    e["state"] = state_to_json(c.state);
    e["measures"] = measures_to_json(c.evaluation.measures);
    e["margins"] = evaluation_margins_to_json(c.evaluation);
    cx.push_back(std::move(e));
  }
  j["counterexamples"] = std::move(cx);
  j["wall_time_s"] = r.wall_time_s;
  return j;
}

/// Best candidate of an active counterexample search. `margin` is the
/// violation margin (minus the slack); `found` is margin > tolerance.
struct SearchCandidate {
  ClaimId claim;
  int rank;
  DensityMatrix state;
  ClaimEvaluation evaluation;
  double margin;
  bool found;
  std::size_t restart;
  std::size_t evaluations;
};

inline bool is_searchable_claim(ClaimId c) {
  return c == ClaimId::vn_bound || c == ClaimId::lin_bound ||
         c == ClaimId::conc_bound_state || c == ClaimId::fid_upper_r3;
}

namespace detail {
/// Rank-r state from a 4 x r Ginibre factor packed as 8r reals.
inline std::optional<DensityMatrix> state_from_factor(const std::vector<double>& x, int rank) {
  Eigen::MatrixXcd a(4, rank);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < rank; ++j) {
      const auto k = static_cast<std::size_t>(2 * (i * rank + j));
      a(i, j) = complex(x[k], x[k + 1]);
    }
  Eigen::MatrixXcd m = a * a.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  const double tr = m.trace().real();
  if (!(tr > 1e-300) || !std::isfinite(tr)) return std::nullopt;
  m /= tr;
  try {
    return DensityMatrix::from_matrix(ComplexMatrix(std::move(m)), 2);
  } catch (const Error&) {
    return std::nullopt;
  }
}
}  // namespace detail

/// Maximizes the violation margin of `claim` over rank-r states by
/// Nelder-Mead on the Ginibre factor, from `restarts` seeded starts.
/// Candidates whose numerical rank differs from `rank` are rejected.
inline SearchCandidate search_counterexample(ClaimId claim, int rank, std::size_t restarts,
                                             std::uint64_t seed, std::size_t workers = 1,
                                             SearchOptions opts = {},
                                             double tolerance = kDefaultTolerance) {
  if (!is_searchable_claim(claim))
    throw std::invalid_argument("claim " + std::string(to_string(claim)) +
                                " is not supported by the counterexample search");
  detail::require_claim_rank(claim, rank);
  if (restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  constexpr double kRejected = -1e3;
  auto objective = [&](const std::vector<double>& x) {
    const auto rho = detail::state_from_factor(x, rank);
    if (!rho || rho->rank() != static_cast<std::size_t>(rank)) return kRejected;
    return -evaluate_claim(claim, rank, *rho, tolerance).slack;
  };

  std::vector<SearchResult> results(restarts);
  detail::parallel_for(restarts, workers, [&](std::size_t k, std::size_t) {
    Engine rng(derive_seed(seed, k));
    const Eigen::MatrixXcd a0 = ginibre(4, rank, rng);
    std::vector<double> x0;
    for (Eigen::Index i = 0; i < 4; ++i)
      for (Eigen::Index j = 0; j < rank; ++j) {
        x0.push_back(a0(i, j).real());
        x0.push_back(a0(i, j).imag());
      }
    results[k] = maximize(objective, std::move(x0), opts);
  });

  std::size_t best = 0, evals = 0;
  for (std::size_t k = 0; k < restarts; ++k) {
    evals += results[k].evaluations;
    if (results[k].value > results[best].value) best = k;
  }
  auto rho = detail::state_from_factor(results[best].x, rank);
  if (!rho) throw std::runtime_error("counterexample search produced no valid state");
  ClaimEvaluation ev = evaluate_claim(claim, rank, *rho, tolerance);
  const double margin = -ev.slack;
  return {claim, rank, std::move(*rho), std::move(ev), margin, margin > tolerance, best, evals};
}

inline nlohmann::ordered_json candidate_to_json(const SearchCandidate& c) {
  nlohmann::ordered_json j;
  j["claim_id"] = std::string(to_string(c.claim));
  j["rank"] = c.rank;
  j["margin"] = c.margin;
  j["counterexample"] = c.found;
  j["restart"] = c.restart;
  j["evaluations"] = c.evaluations;
  j["state"] = state_to_json(c.state);
  j["measures"] = measures_to_json(c.evaluation.measures);
  j["margins"] = evaluation_margins_to_json(c.evaluation);
  return j;
}

}  // namespace tbounds

#endif  // TBOUNDS_HARNESS_HPP
