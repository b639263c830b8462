#pragma once

// Driver logic behind the `mav` command-line tool, kept in the library so
// tests can run commands in-process.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mav/budget.hpp"
#include "mav/core.hpp"
#include "mav/election.hpp"
#include "mav/error.hpp"
#include "mav/io.hpp"
#include "mav/oracle.hpp"
#include "mav/ptas.hpp"
#include "mav/rng.hpp"

namespace mav::cli {

using Json = nlohmann::ordered_json;

enum class Algorithm { exact, minisum, kcompletion, ptas };
enum class Format { text, json };
enum class OracleMode { on, off, automatic };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::exact: return "exact";
    case Algorithm::minisum: return "minisum";
    case Algorithm::kcompletion: return "kcompletion";
    case Algorithm::ptas: return "ptas";
  }
  return "unknown";
}

inline Algorithm parse_algorithm(std::string_view name) {
  if (name == "exact") return Algorithm::exact;
  if (name == "minisum") return Algorithm::minisum;
  if (name == "kcompletion") return Algorithm::kcompletion;
  if (name == "ptas") return Algorithm::ptas;
  throw InputError("unknown algorithm '" + std::string(name) + "'");
}

/// One solver run. JSON field order and names are fixed:
///   record, instance, algorithm, n, m, k, committee, objective, opt, ratio,
///   epsilon, seed, elapsed_ms, diagnostics
/// Absent values are null. elapsed_ms is null unless timing was requested,
/// which keeps default output byte-reproducible.
struct RunReport {
  std::optional<std::size_t> instance;
  Algorithm algorithm = Algorithm::exact;
  std::size_t n = 0, m = 0, k = 0;
  std::string committee;
  std::size_t objective = 0;
  std::optional<std::size_t> opt;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> seed;
  double elapsed_ms = 0.0;
  Json diagnostics = nullptr;

  std::optional<double> ratio() const {
    if (!opt) return std::nullopt;
    if (*opt == 0) return objective == 0 ? std::optional<double>(1.0) : std::nullopt;
    return static_cast<double>(objective) / static_cast<double>(*opt);
  }

  Json to_json(bool timing) const {
    Json j;
    j["record"] = "run";
    j["instance"] = instance ? Json(*instance) : Json(nullptr);
    j["algorithm"] = std::string(to_string(algorithm));
    j["n"] = n;
    j["m"] = m;
    j["k"] = k;
    j["committee"] = committee;
    j["objective"] = objective;
    j["opt"] = opt ? Json(*opt) : Json(nullptr);
    const auto r = ratio();
    j["ratio"] = r ? Json(*r) : Json(nullptr);
    j["epsilon"] = epsilon ? Json(*epsilon) : Json(nullptr);
    j["seed"] = seed ? Json(*seed) : Json(nullptr);
    j["elapsed_ms"] = timing ? Json(elapsed_ms) : Json(nullptr);
    j["diagnostics"] = diagnostics;
    return j;
  }

  std::string to_text() const {
    std::ostringstream out;
    if (instance) out << "instance " << *instance << "  ";
    out << "algorithm " << to_string(algorithm) << "  n=" << n << " m=" << m << " k=" << k << "\n";
    out << "  committee " << committee << "  objective " << objective;
    if (opt) out << "  opt " << *opt;
    if (const auto r = ratio()) out << "  ratio " << *r;
    out << "\n";
    if (epsilon) out << "  epsilon " << *epsilon << "  seed " << seed.value_or(0) << "\n";
    out << "  elapsed " << elapsed_ms << " ms\n";
    if (!diagnostics.is_null()) out << "  diagnostics " << diagnostics.dump() << "\n";
    return out.str();
  }
};

inline Json diagnostics_json(const SolveReport& report, int force_case) {
  const auto& d = report.diagnostics;
  const auto& p = report.params;
  Json j;
  j["R"] = p.R;
  j["epsilon0"] = p.epsilon0;
  j["epsilon2"] = p.epsilon2;
  j["case1_threshold"] = p.case1_threshold;
  j["case2_threshold"] = p.case2_threshold;
  j["trials"] = p.trials;
  j["force_case"] = force_case == 0 ? Json("auto") : Json(force_case);
  j["subset_size"] = d.subset_size;
  j["subsets_examined"] = d.subsets_examined;
  j["pairs_considered"] = d.pairs_considered;
  j["pairs_solved"] = d.pairs_solved;
  j["skipped"] = {{"nostar_overflow", d.skipped_nostar_overflow}, {"lp_infeasible", d.skipped_lp_infeasible}};
  j["cases"] = {{"exhaustive_beta", d.case_counts[0]},
                {"exhaustive_k", d.case_counts[1]},
                {"lp_rounding", d.case_counts[2]}};
  j["budget_fallbacks"] = d.budget_fallbacks;
  return j;
}

struct SolveOptions {
  Algorithm algorithm = Algorithm::ptas;
  double epsilon = 0.9;
  std::uint64_t seed = 0;
  int force_case = 0;
  OracleMode oracle = OracleMode::automatic;
  unsigned threads = 1;
  Budgets budgets{};
};

/// Runs one algorithm (and optionally the oracle for the ratio).
inline RunReport run_solve(const Election& election, const SolveOptions& opts) {
  RunReport report;
  report.algorithm = opts.algorithm;
  report.n = election.n();
  report.m = election.m();
  report.k = election.k();

  std::optional<OracleResult> oracle;
  const bool oracle_fits = election.m() <= opts.budgets.oracle_max_candidates;
  // exact is its own oracle. Oracle time is not charged to the algorithm.
  if (opts.algorithm != Algorithm::exact &&
      (opts.oracle == OracleMode::on || (opts.oracle == OracleMode::automatic && oracle_fits))) {
    oracle = exact_opt(election, opts.budgets, opts.threads);
  }

  const auto started = std::chrono::steady_clock::now();
  switch (opts.algorithm) {
    case Algorithm::exact: {
      const OracleResult r = exact_opt(election, opts.budgets, opts.threads);
      report.committee = r.committee.to_string();
      report.objective = r.opt_value;
      oracle = r;
      break;
    }
    case Algorithm::minisum: {
      const Committee c = minisum_committee(election);
      report.committee = c.to_string();
      report.objective = objective(c, election);
      break;
    }
    case Algorithm::kcompletion: {
      const Committee c = three_approx(election);
      report.committee = c.to_string();
      report.objective = objective(c, election);
      break;
    }
    case Algorithm::ptas: {
      PtasConfig config;
      config.force_case = opts.force_case;
      config.threads = opts.threads;
      config.budgets = opts.budgets;
      const SolveReport r = ptas_solve(election, opts.epsilon, opts.seed, config);
      report.committee = r.committee.to_string();
      report.objective = r.objective;
      report.epsilon = opts.epsilon;
      report.seed = opts.seed;
      report.diagnostics = diagnostics_json(r, opts.force_case);
      break;
    }
  }
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  if (oracle) report.opt = oracle->opt_value;
  return report;
}

struct Range {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

// "a:b" or a single "a".
inline Range parse_range(std::string_view text) {
  auto parse_num = [&](std::string_view s) -> std::size_t {
    if (s.empty()) throw InputError("empty range bound in '" + std::string(text) + "'");
    std::size_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw InputError("bad range '" + std::string(text) + "'");
      v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
  };
  const auto colon = text.find(':');
  Range r;
  if (colon == std::string_view::npos) {
    r.lo = r.hi = parse_num(text);
  } else {
    r.lo = parse_num(text.substr(0, colon));
    r.hi = parse_num(text.substr(colon + 1));
  }
  if (r.lo > r.hi) throw InputError("range '" + std::string(text) + "' has lo > hi");
  return r;
}

enum class InstanceKind { random, planted, mixed };

inline InstanceKind parse_instance_kind(std::string_view name) {
  if (name == "random") return InstanceKind::random;
  if (name == "planted") return InstanceKind::planted;
  if (name == "mixed") return InstanceKind::mixed;
  throw InputError("unknown instance kind '" + std::string(name) + "'");
}

struct BenchOptions {
  std::size_t count = 50;
  Range n_range{2, 8};
  Range m_range{3, 10};
  // "half", "range:A:B" (clipped to m) or a fixed integer (clipped to m).
  std::string k_mode = "range:1:5";
  InstanceKind kind = InstanceKind::mixed;
  std::vector<Algorithm> algorithms{Algorithm::kcompletion, Algorithm::ptas};
  double epsilon = 0.9;
  std::uint64_t seed = 0;
  int force_case = 0;
  unsigned threads = 1;
  bool timing = false;
  Format format = Format::json;
  Budgets budgets{};
};

inline std::size_t pick_k(const std::string& mode, std::size_t m, Rng& rng) {
  if (mode == "half") return m / 2;
  if (mode.rfind("range:", 0) == 0) {
    const Range r = parse_range(mode.substr(6));
    const std::size_t hi = std::min(r.hi, m);
    const std::size_t lo = std::min(r.lo, hi);
    return static_cast<std::size_t>(rng.between(lo, hi));
  }
  return std::min(parse_range(mode).lo, m);
}

// Ratio bound an algorithm is expected to meet; nullopt when it has none.
inline std::optional<double> ratio_bound(Algorithm a, double epsilon) {
  switch (a) {
    case Algorithm::exact: return 1.0;
    case Algorithm::minisum: return std::nullopt;
    case Algorithm::kcompletion: return 3.0;
    case Algorithm::ptas: return 1.0 + epsilon;
  }
  return std::nullopt;
}

/// Instance i uses seed derive_seed(seed, i) for generation and for the PTAS.
/// Writes one record per (instance, algorithm) and a final summary record.
/// Returns the number of ratio-bound violations.
inline std::size_t run_bench(const BenchOptions& opts, std::ostream& out) {
  if (opts.n_range.lo < 1 || opts.m_range.lo < 1) throw InputError("bench ranges need n >= 1 and m >= 1");
  if (opts.m_range.hi > opts.budgets.oracle_max_candidates) {
    throw BudgetExceeded("bench m range exceeds oracle budget of " +
                         std::to_string(opts.budgets.oracle_max_candidates) + " candidates");
  }
  struct Stats {
    std::size_t runs = 0;
    std::size_t rated = 0;
    double max_ratio = 0.0;
    double sum_ratio = 0.0;
    std::size_t violations = 0;
  };
  std::vector<Stats> stats(opts.algorithms.size());
  std::size_t total_violations = 0;

  for (std::size_t i = 0; i < opts.count; ++i) {
    const std::uint64_t instance_seed = derive_seed({opts.seed, i});
    Rng rng(instance_seed);
    const auto n = static_cast<std::size_t>(rng.between(opts.n_range.lo, opts.n_range.hi));
    const auto m = static_cast<std::size_t>(rng.between(opts.m_range.lo, opts.m_range.hi));
    const std::size_t k = pick_k(opts.k_mode, m, rng);
    const bool planted = opts.kind == InstanceKind::planted || (opts.kind == InstanceKind::mixed && i % 2 == 1);
    const std::uint64_t gen_seed = rng.next();
    const Election election = planted
                                  ? generate_instance(n, m, k, static_cast<std::size_t>(rng.between(0, m / 2)),
                                                      gen_seed)
                                        .election
                                  : random_election(n, m, k, gen_seed);
    const OracleResult oracle = exact_opt(election, opts.budgets, opts.threads);

    for (std::size_t a = 0; a < opts.algorithms.size(); ++a) {
      SolveOptions so;
      so.algorithm = opts.algorithms[a];
      so.epsilon = opts.epsilon;
      so.seed = instance_seed;
      so.force_case = opts.force_case;
      so.oracle = OracleMode::off;
      so.threads = opts.threads;
      so.budgets = opts.budgets;
      RunReport report = run_solve(election, so);
      report.instance = i;
      report.opt = oracle.opt_value;

      Stats& s = stats[a];
      ++s.runs;
      if (const auto r = report.ratio()) {
        ++s.rated;
        s.max_ratio = std::max(s.max_ratio, *r);
        s.sum_ratio += *r;
      }
      const auto bound = ratio_bound(so.algorithm, opts.epsilon);
      if (bound && static_cast<double>(report.objective) > *bound * static_cast<double>(oracle.opt_value)) {
        ++s.violations;
        ++total_violations;
      }
      if (opts.format == Format::json) {
        out << report.to_json(opts.timing).dump() << "\n";
      } else {
        out << report.to_text();
      }
    }
  }

  Json summary;
  summary["record"] = "summary";
  summary["instances"] = opts.count;
  summary["epsilon"] = opts.epsilon;
  summary["seed"] = opts.seed;
  Json per_algorithm = Json::object();
  for (std::size_t a = 0; a < opts.algorithms.size(); ++a) {
    const Stats& s = stats[a];
    const auto bound = ratio_bound(opts.algorithms[a], opts.epsilon);
    Json entry;
    entry["runs"] = s.runs;
    entry["max_ratio"] = s.rated ? Json(s.max_ratio) : Json(nullptr);
    entry["mean_ratio"] = s.rated ? Json(s.sum_ratio / static_cast<double>(s.rated)) : Json(nullptr);
    entry["ratio_bound"] = bound ? Json(*bound) : Json(nullptr);
    entry["violations"] = s.violations;
    per_algorithm[std::string(to_string(opts.algorithms[a]))] = entry;
  }
  summary["algorithms"] = per_algorithm;
  if (opts.format == Format::json) {
    out << summary.dump() << "\n";
  } else {
    out << "summary " << summary.dump() << "\n";
  }
  return total_violations;
}

}  // namespace mav::cli
