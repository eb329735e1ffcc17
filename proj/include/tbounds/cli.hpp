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

// Command-line front end. Exit codes: 0 success, 1 usage or parameter error,
// 2 invalid state file, 3 assert-mode violation found.

#ifndef TBOUNDS_CLI_HPP
#define TBOUNDS_CLI_HPP

#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tbounds/bounds.hpp"
#include "tbounds/harness.hpp"
#include "tbounds/measures.hpp"
#include "tbounds/state_io.hpp"
#include "tbounds/states.hpp"

namespace tbounds::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kBadState = 2, kViolation = 3 };

inline constexpr const char* kSweepHeader =
    "p,rank,concurrence,fidelity,singlet_fraction,linear_entropy,vn_entropy";

struct BoundsOptions {
  std::size_t dim = 2;
  int rank = 4;
  std::string format = "table";
};

inline int cmd_bounds(const BoundsOptions& o, std::ostream& out) {
  const BoundSet b = bound_set(o.dim, o.rank);
  const std::string conc = b.conc_bound ? format_double(*b.conc_bound) : "";
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["d_local"] = b.d_local;
    j["rank"] = b.rank;
    j["vn_entropy_bound"] = b.vn_bound;
    j["linear_entropy_bound"] = b.lin_bound;
    j["linear_entropy_bound_exact"] = b.lin_bound_exact.str();
    j["concurrence_bound"] = b.conc_bound ? nlohmann::ordered_json(*b.conc_bound) : nullptr;
    out << j.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "d_local,rank,vn_entropy_bound,linear_entropy_bound,linear_entropy_bound_exact,"
           "concurrence_bound\n"
        << b.d_local << ',' << b.rank << ',' << format_double(b.vn_bound) << ','
        << format_double(b.lin_bound) << ',' << b.lin_bound_exact.str() << ',' << conc << '\n';
  } else {
    out << "d_local               " << b.d_local << '\n'
        << "rank                  " << b.rank << '\n'
        << "vn_entropy_bound      " << format_double(b.vn_bound) << '\n'
        << "linear_entropy_bound  " << format_double(b.lin_bound) << " ("
        << b.lin_bound_exact.str() << ")\n"
        << "concurrence_bound     " << (b.conc_bound ? conc : "n/a (d != 2)") << '\n';
  }
  return kOk;
}

struct MeasuresOptions {
  std::string state_path;
  std::string fef = "auto";
  std::size_t restarts = kDefaultFefRestarts;
  std::uint64_t seed = 0;
  std::string format = "table";
};

inline int cmd_measures(const MeasuresOptions& o, std::ostream& out, std::ostream& err) {
  std::optional<DensityMatrix> rho;
  try {
    rho = load_state(o.state_path);
  } catch (const ValidationError& e) {
    err << "invalid state file: " << e.what() << '\n';
    return kBadState;
  } catch (const ParseError& e) {
    err << "invalid state file: " << e.what() << '\n';
    return kBadState;
  }
  const bool qubits = rho->d_local() == 2;
  std::string method = o.fef == "auto" ? (qubits ? "magic" : "optimize") : o.fef;
  if (!qubits && method != "optimize") {
    err << "--fef " << method << " requires d_local = 2\n";
    return kUsage;
  }
  MeasureSet ms = measure_all(*rho, o.restarts, o.seed);
  std::optional<double> gap;
  if (method == "optimize" || method == "both") {
    const double f_opt = singlet_fraction_optimize(*rho, o.restarts, o.seed);
    if (method == "both") gap = std::abs(ms.singlet_fraction - f_opt);
    else {
      ms.singlet_fraction = f_opt;
      ms.fef_exact = !qubits ? false : ms.fef_exact;
      ms.fidelity = fidelity_from_f(f_opt, rho->d_local());
    }
  }
  const Verdict v = classify(ms);

  nlohmann::ordered_json j;
  j["measures"] = measures_to_json(ms);
  j["fef_method"] = method;
  if (gap) j["fef_agreement_gap"] = *gap;
  nlohmann::ordered_json vj;
  auto opt = [](const auto& x) { return x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(); };
  vj["useful"] = v.useful;
  vj["vn_exceeds"] = v.vn_exceeds;
  vj["lin_exceeds"] = v.lin_exceeds;
  vj["conc_below"] = opt(v.conc_below);
  vj["useful_margin"] = v.useful_margin;
  vj["vn_margin"] = opt(v.vn_margin);
  vj["lin_margin"] = opt(v.lin_margin);
  vj["conc_margin"] = opt(v.conc_margin);
  j["verdict"] = vj;

  if (o.format == "json") {
    out << j.dump(2) << '\n';
    return kOk;
  }
  auto line = [&](const std::string& k, const std::string& val) {
    out << std::left << std::setw(22) << k << val << '\n';
  };
  auto num = [](double x) { return format_double(x); };
  line("rank", std::to_string(ms.rank));
  line("vn_entropy", num(ms.vn_entropy));
  line("linear_entropy", num(ms.linear_entropy));
  line("purity", num(ms.purity));
  line("concurrence", ms.concurrence ? num(*ms.concurrence) : "n/a (d != 2)");
  line("singlet_fraction", num(ms.singlet_fraction) + (ms.fef_exact ? "" : " (optimizer lower estimate)"));
  line("fidelity", num(ms.fidelity));
  line("fef_method", method);
  if (gap) line("fef_agreement_gap", num(*gap));
  line("useful", v.useful ? "true" : "false");
  line("vn_exceeds", v.vn_exceeds ? "true" : "false");
  line("lin_exceeds", v.lin_exceeds ? "true" : "false");
  line("conc_below", v.conc_below ? (*v.conc_below ? "true" : "false") : "n/a");
  return kOk;
}

struct SweepOptions {
  std::string family = "werner";
  int rank = 4;
  std::size_t steps = 101;
  std::string out = "-";
};

inline std::string sweep_csv(int rank, std::size_t steps) {
  std::string csv = std::string(kSweepHeader) + "\n";
  for (std::size_t k = 0; k < steps; ++k) {
    const double p = static_cast<double>(k) / static_cast<double>(steps - 1);
    const MeasureSet m = measure_all(werner({rank, p}));
    csv += format_double(p) + ',' + std::to_string(rank) + ',' + format_double(*m.concurrence) +
           ',' + format_double(m.fidelity) + ',' + format_double(m.singlet_fraction) + ',' +
           format_double(m.linear_entropy) + ',' + format_double(m.vn_entropy) + '\n';
  }
  return csv;
}

inline int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  if (o.steps < 2) {
    err << "--steps must be at least 2\n";
    return kUsage;
  }
  const std::string csv = sweep_csv(o.rank, o.steps);
  if (o.out == "-") {
    out << csv;
    return kOk;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!(f << csv)) {
    err << "cannot write '" << o.out << "'\n";
    return kUsage;
  }
  return kOk;
}

struct VerifyOptions {
  std::vector<std::string> claims;
  int rank = 4;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  std::string mode = "auto";
  double tolerance = kDefaultTolerance;
  std::size_t workers = 0;
  std::string out_dir = ".";
};

inline std::string report_path(const std::string& dir, ClaimId c, int rank) {
  return (std::filesystem::path(dir) /
          (std::string(to_string(c)) + "_r" + std::to_string(rank) + ".json"))
      .string();
}

inline int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<ClaimId> ids;
  for (const auto& name : o.claims) {
    const auto id = claim_from_string(name);
    if (!id) {
      err << "unknown claim '" << name << "'\n";
      return kUsage;
    }
    ids.push_back(*id);
  }
  std::error_code ec;
  std::filesystem::create_directories(o.out_dir, ec);
  bool violated = false;
  for (ClaimId id : ids) {
    ClaimSpec spec = ClaimSpec::with_default_mode(id, o.rank, o.trials, o.seed);
    if (o.mode != "auto") spec.mode = o.mode == "assert" ? Mode::Assert : Mode::Survey;
    spec.tolerance = o.tolerance;
    spec.workers = o.workers;
    const VerificationReport rep = run_claim(spec);
    const std::string path = report_path(o.out_dir, id, o.rank);
    std::ofstream f(path, std::ios::binary);
    if (!(f << report_to_json(rep).dump(2) << '\n')) {
      err << "cannot write '" << path << "'\n";
      return kUsage;
    }
    out << to_string(id) << " rank=" << o.rank << " mode=" << to_string(spec.mode)
        << " trials=" << rep.trials_run << " violations=" << rep.violations
        << " rate=" << format_double(rep.violation_rate())
        << " worst_margin=" << format_double(rep.worst_margin) << ' '
        << (rep.passed() ? "PASS" : "FAIL") << " -> " << path << '\n';
    violated = violated || !rep.passed();
  }
  return violated ? kViolation : kOk;
}

struct SearchOptionsCli {
  std::string claim;
  int rank = 4;
  std::size_t restarts = 64;
  std::uint64_t seed = 0;
  std::size_t workers = 0;
  std::string out = "-";
};

inline int cmd_search(const SearchOptionsCli& o, std::ostream& out, std::ostream& err) {
  const auto id = claim_from_string(o.claim);
  if (!id || !is_searchable_claim(*id)) {
    err << "claim '" << o.claim << "' is not searchable\n";
    return kUsage;
  }
  const SearchCandidate c = search_counterexample(*id, o.rank, o.restarts, o.seed, o.workers);
  const std::string text = candidate_to_json(c).dump(2) + "\n";
  if (o.out == "-") {
    out << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!(f << text)) {
      err << "cannot write '" << o.out << "'\n";
      return kUsage;
    }
  }
  return kOk;
}

struct MakeOptions {
  std::string family;
  int rank = 4;
  double p = 0.0;
  std::string spectrum;
  std::size_t dim = 2;
  std::uint64_t seed = 0;
  std::string out = "-";
};

inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  ss.imbue(std::locale::classic());
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double x = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    v.push_back(x);
  }
  return v;
}

inline int cmd_make(const MakeOptions& o, std::ostream& out, std::ostream& err) {
  std::optional<DensityMatrix> rho;
  try {
    if (o.family == "werner") {
      rho = werner({o.rank, o.p});
    } else if (o.family == "mems") {
      rho = mems(Spectrum(parse_list(o.spectrum)));
    } else if (o.family == "mixed") {
      rho = maximally_mixed(o.dim);
    } else if (o.family == "random") {
      rho = random_rank_r(o.dim, static_cast<std::size_t>(o.rank), o.seed);
    } else {
      err << "unknown family '" << o.family << "'\n";
      return kUsage;
    }
  } catch (const std::exception& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kUsage;
  }
  const std::string text = state_to_text(*rho);
  if (o.out == "-") {
    out << text;
    return kOk;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!(f << text)) {
    err << "cannot write '" << o.out << "'\n";
    return kUsage;
  }
  return kOk;
}

/// Parses argv and runs one subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank-dependent teleportation bounds: construct states, evaluate measures "
               "and thresholds, sweep Werner families, verify claims"};
  app.require_subcommand(1);
  std::function<int()> action;

  BoundsOptions bo;
  auto* bounds = app.add_subcommand("bounds", "Print rank-dependent thresholds S*, S_L*, C_r");
  bounds->add_option("--dim", bo.dim, "Local dimension d")->check(CLI::Range(2, 64));
  bounds->add_option("--rank", bo.rank, "State rank r (2 <= r <= d^2)")->required();
  bounds->add_option("--format", bo.format, "table | json | csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  bounds->callback([&] { action = [&] { return cmd_bounds(bo, out); }; });

  MeasuresOptions mo;
  auto* meas = app.add_subcommand("measures", "Measure a state file and classify it");
  meas->add_option("state", mo.state_path, "State JSON file")->required();
  meas->add_option("--fef", mo.fef, "auto | magic | optimize | both")
      ->check(CLI::IsMember({"auto", "magic", "optimize", "both"}));
  meas->add_option("--restarts", mo.restarts, "Optimizer restarts");
  meas->add_option("--seed", mo.seed, "Optimizer seed");
  meas->add_option("--format", mo.format, "table | json")->check(CLI::IsMember({"table", "json"}));
  meas->callback([&] { action = [&] { return cmd_measures(mo, out, err); }; });

  SweepOptions so;
  auto* sweep = app.add_subcommand("sweep", "Werner-family p sweep as CSV (fidelity vs concurrence)");
  sweep->add_option("--family", so.family, "State family")->check(CLI::IsMember({"werner"}));
  sweep->add_option("--rank", so.rank, "Werner rank 2, 3 or 4")->required()->check(CLI::Range(2, 4));
  sweep->add_option("--steps", so.steps, "Grid points on p in [0, 1] (>= 2)");
  sweep->add_option("--out", so.out, "Output CSV path ('-' for stdout)");
  sweep->callback([&] { action = [&] { return cmd_sweep(so, out, err); }; });

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Run claim verification and write report JSON");
  verify->add_option("--claims", vo.claims, "Comma-separated claim ids")->required()->delimiter(',');
  verify->add_option("--rank", vo.rank, "Rank of sampled states")->check(CLI::Range(2, 4));
  verify->add_option("--trials", vo.trials, "Samples (or grid points)")->check(CLI::PositiveNumber);
  verify->add_option("--seed", vo.seed, "Master seed");
  verify->add_option("--mode", vo.mode, "auto | assert | survey")
      ->check(CLI::IsMember({"auto", "assert", "survey"}));
  verify->add_option("--tolerance", vo.tolerance, "Violation tolerance");
  verify->add_option("--workers", vo.workers, "Worker threads (0 = all cores)");
  verify->add_option("--out", vo.out_dir, "Directory for report files");
  verify->callback([&] { action = [&] { return cmd_verify(vo, out, err); }; });

  SearchOptionsCli sc;
  auto* search = app.add_subcommand("search", "Derivative-free counterexample search");
  search->add_option("--claim", sc.claim, "vn_bound | lin_bound | conc_bound_state | fid_upper_r3")
      ->required();
  search->add_option("--rank", sc.rank, "Rank of candidate states")->check(CLI::Range(2, 4));
  search->add_option("--restarts", sc.restarts, "Seeded starts")->check(CLI::PositiveNumber);
  search->add_option("--seed", sc.seed, "Master seed");
  search->add_option("--workers", sc.workers, "Worker threads (0 = all cores)");
  search->add_option("--out", sc.out, "Output JSON path ('-' for stdout)");
  search->callback([&] { action = [&] { return cmd_search(sc, out, err); }; });

  MakeOptions ko;
  auto* make = app.add_subcommand("make", "Write a state file");
  make->add_option("--family", ko.family, "werner | mems | mixed | random")->required();
  make->add_option("--rank", ko.rank, "Werner rank, or rank of a random state");
  make->add_option("--p", ko.p, "Werner mixing parameter in [0, 1]");
  make->add_option("--spectrum", ko.spectrum, "MEMS eigenvalues, descending, comma-separated");
  make->add_option("--dim", ko.dim, "Local dimension (mixed, random)");
  make->add_option("--seed", ko.seed, "Seed (random)");
  make->add_option("--out", ko.out, "Output path ('-' for stdout)");
  make->callback([&] { action = [&] { return cmd_make(ko, out, err); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return action();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace tbounds::cli

#endif  // TBOUNDS_CLI_HPP
