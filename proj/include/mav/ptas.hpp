#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "mav/aux_lp.hpp"
#include "mav/aux_problem.hpp"
#include "mav/bit_vector.hpp"
#include "mav/budget.hpp"
#include "mav/combinatorics.hpp"
#include "mav/core.hpp"
#include "mav/election.hpp"
#include "mav/error.hpp"
#include "mav/lp.hpp"
#include "mav/rng.hpp"

namespace mav {

/// Constants of the (1 + epsilon) scheme. epsilon0 = epsilon / 3 sizes the
/// subsets (R = ceil(2 / epsilon0)); the auxiliary problem is solved to
/// within 1 + 2 * epsilon2 with epsilon2 = epsilon0 / 2. The two thresholds
/// decide which exact enumeration, if any, is polynomial for a given aux
/// problem.
struct PtasParams {
  double epsilon = 0.0;
  double epsilon0 = 0.0;
  std::size_t R = 0;
  double epsilon2 = 0.0;
  std::size_t n = 0;
  double case1_threshold = 0.0;  // on beta
  double case2_threshold = 0.0;  // on k'
  std::size_t trials = 64;
  std::uint64_t seed = 0;
  bool deterministic_fallback = true;
  bool center_lp = true;  // round from a central LP optimum instead of a vertex
};

inline PtasParams derive_params(double epsilon, std::size_t n, std::uint64_t seed, std::size_t trials = 64) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0, 1)");
  if (n == 0) throw InputError("derive_params needs n >= 1");
  if (trials == 0) throw InputError("at least one rounding trial is required");
  PtasParams p;
  p.epsilon = epsilon;
  p.epsilon0 = epsilon / 3.0;
  // 2 / (epsilon / 3) picks up a few ulps of error, e.g. 10.000000000000002
  // for epsilon = 0.6.
  p.R = static_cast<std::size_t>(std::ceil(2.0 / p.epsilon0 - 1e-9));
  p.epsilon2 = p.epsilon0 / 2.0;
  if (!(p.epsilon2 > 0.0 && p.epsilon2 < 0.5)) throw InputError("epsilon2 must lie in (0, 1/2)");
  p.n = n;
  const double e2sq = p.epsilon2 * p.epsilon2;
  const double r = static_cast<double>(p.R);
  p.case1_threshold = 3.0 * r * std::log(3.0 * static_cast<double>(n)) / e2sq;
  p.case2_threshold = 3.0 * r * r * std::log(6.0) / e2sq;
  p.trials = trials;
  p.seed = seed;
  return p;
}

enum class AuxCase : int { exhaustive_beta = 1, exhaustive_k = 2, lp_rounding = 3 };

inline std::string_view to_string(AuxCase c) {
  switch (c) {
    case AuxCase::exhaustive_beta: return "exhaustive_beta";
    case AuxCase::exhaustive_k: return "exhaustive_k";
    case AuxCase::lp_rounding: return "lp_rounding";
  }
  return "unknown";
}

struct AuxSolution {
  BitVector s_prime;
  std::size_t q = 0;
  AuxCase case_used = AuxCase::exhaustive_beta;
  std::optional<double> lp_value;  // q^LP, lp_rounding only
  bool budget_fallback = false;    // auto dispatch skipped an over-budget case
};

namespace detail {

inline bool better(std::size_t q, const BitVector& s, const std::optional<AuxSolution>& best) {
  return !best || q < best->q || (q == best->q && s < best->s_prime);
}

}  // namespace detail

/// Case 1: all 2^beta assignments, keeping those with k' ones. Exact.
inline std::optional<AuxSolution> solve_aux_case1(const AuxProblem& aux, const Budgets& budgets = {}) {
  const std::size_t beta = aux.beta();
  if (beta > budgets.case1_max_beta || beta >= 64) {
    throw BudgetExceeded("case 1: 2^" + std::to_string(beta) + " assignments exceed budget of 2^" +
                         std::to_string(budgets.case1_max_beta));
  }
  if (aux.k_prime > beta) return std::nullopt;

  std::vector<std::uint64_t> parts(aux.n());
  for (std::size_t i = 0; i < aux.n(); ++i) parts[i] = beta == 0 ? 0 : aux.star_part(i).words()[0];

  // Lexicographic order on masks: position 0 is bit 0.
  auto lex_less = [](std::uint64_t a, std::uint64_t b) {
    const std::uint64_t diff = a ^ b;
    return diff != 0 && ((a >> std::countr_zero(diff)) & 1U) == 0;
  };

  std::optional<std::uint64_t> best_mask;
  std::size_t best_q = 0;
  const std::uint64_t end = std::uint64_t{1} << beta;
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != aux.k_prime) continue;
    std::size_t q = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      q = std::max(q, static_cast<std::size_t>(std::popcount(mask ^ parts[i])) + aux.offsets[i]);
    }
    if (!best_mask || q < best_q || (q == best_q && lex_less(mask, *best_mask))) {
      best_mask = mask;
      best_q = q;
    }
  }
  return AuxSolution{BitVector::from_mask(*best_mask, beta), best_q, AuxCase::exhaustive_beta, std::nullopt, false};
}

/// Case 2: all C(beta, k') placements of the ones. Exact.
inline std::optional<AuxSolution> solve_aux_case2(const AuxProblem& aux, const Budgets& budgets = {}) {
  const std::size_t beta = aux.beta();
  if (aux.k_prime > beta) return std::nullopt;
  const std::uint64_t count = binomial(beta, aux.k_prime);
  if (count > budgets.case2_max_combinations) {
    throw BudgetExceeded("case 2: C(" + std::to_string(beta) + "," + std::to_string(aux.k_prime) +
                         ") placements exceed budget of " + std::to_string(budgets.case2_max_combinations));
  }
  std::optional<AuxSolution> best;
  for_each_combination(beta, aux.k_prime, [&](std::span<const std::size_t> ones) {
    BitVector s(beta);
    for (std::size_t j : ones) s.set(j, true);
    const std::size_t q = aux.evaluate(s);
    if (detail::better(q, s, best)) best = AuxSolution{std::move(s), q, AuxCase::exhaustive_k, std::nullopt, false};
  });
  return best;
}

/// Case 3: LP relaxation plus independent Bernoulli rounding, repaired by
/// k'-completion. Rounds from a central point of the optimal face unless
/// params.center_lp is off. Runs params.trials seeded trials and, if enabled, a
/// deterministic trial that sets the k' largest LP coordinates (ties to the
/// smaller index). Trial t draws from derive_seed(seed, stream, t).
inline std::optional<AuxSolution> solve_aux_case3(const AuxProblem& aux, const PtasParams& params,
                                                  std::uint64_t stream = 0) {
  const std::size_t beta = aux.beta();
  const LinearProgram relaxation = build_aux_lp(aux);
  const LPOutcome lp = solve_lp(relaxation);
  if (lp.status == LpStatus::infeasible) return std::nullopt;
  if (lp.status == LpStatus::unbounded) throw SolverError("auxiliary LP reported unbounded");

  std::vector<double> frac;
  if (params.center_lp) {
    frac = central_optimum(relaxation, lp);
  } else {
    frac.assign(lp.solution.begin(), lp.solution.begin() + static_cast<std::ptrdiff_t>(beta));
    for (double& x : frac) x = std::clamp(x, 0.0, 1.0);
  }

  std::optional<AuxSolution> best;
  auto offer = [&](BitVector s) {
    const std::size_t q = aux.evaluate(s);
    if (detail::better(q, s, best)) best = AuxSolution{std::move(s), q, AuxCase::lp_rounding, lp.value, false};
  };

  for (std::size_t t = 0; t < params.trials; ++t) {
    Rng rng(derive_seed({params.seed, stream, t}));
    BitVector s(beta);
    for (std::size_t j = 0; j < beta; ++j) s.set(j, rng.bernoulli(frac[j]));
    offer(k_completion(s, aux.k_prime));
  }
  if (params.deterministic_fallback) {
    std::vector<std::size_t> order(beta);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
    BitVector s(beta);
    for (std::size_t i = 0; i < aux.k_prime; ++i) s.set(order[i], true);
    offer(std::move(s));
  }
  return best;
}

/// Picks Case 1 when beta <= case1_threshold, else Case 2 when
/// k' <= case2_threshold, else Case 3. `force_case` (1..3) overrides the
/// choice and raises BudgetExceeded if that case is over budget. In auto mode
/// an over-budget exact case falls through to the next one.
inline std::optional<AuxSolution> solve_aux(const AuxProblem& aux, const PtasParams& params, int force_case = 0,
                                            const Budgets& budgets = {}, std::uint64_t stream = 0) {
  switch (force_case) {
    case 0: break;
    case 1: return solve_aux_case1(aux, budgets);
    case 2: return solve_aux_case2(aux, budgets);
    case 3: return solve_aux_case3(aux, params, stream);
    default: throw InputError("force_case must be 0 (auto), 1, 2 or 3");
  }
  const auto beta = static_cast<double>(aux.beta());
  const auto k_prime = static_cast<double>(aux.k_prime);
  const bool case1_fits = aux.beta() <= budgets.case1_max_beta && aux.beta() < 64;
  const bool case2_fits = binomial(aux.beta(), aux.k_prime) <= budgets.case2_max_combinations;

  std::optional<AuxSolution> out;
  bool fallback = false;
  if (beta <= params.case1_threshold) {
    if (case1_fits) return solve_aux_case1(aux, budgets);
    fallback = true;
  }
  if (fallback || k_prime <= params.case2_threshold) {
    if (case2_fits) {
      out = solve_aux_case2(aux, budgets);
    } else {
      fallback = true;
      out = solve_aux_case3(aux, params, stream);
    }
  } else {
    out = solve_aux_case3(aux, params, stream);
  }
  if (out) out->budget_fallback = fallback;
  return out;
}

struct PtasDiagnostics {
  std::size_t subset_size = 0;
  std::size_t subsets_examined = 0;
  std::size_t pairs_considered = 0;
  std::size_t pairs_solved = 0;
  std::size_t skipped_nostar_overflow = 0;
  std::size_t skipped_lp_infeasible = 0;
  std::array<std::size_t, 3> case_counts{};  // indexed by AuxCase - 1
  std::size_t budget_fallbacks = 0;
  double elapsed_ms = 0.0;

  void merge(const PtasDiagnostics& o) {
    subsets_examined += o.subsets_examined;
    pairs_considered += o.pairs_considered;
    pairs_solved += o.pairs_solved;
    skipped_nostar_overflow += o.skipped_nostar_overflow;
    skipped_lp_infeasible += o.skipped_lp_infeasible;
    for (std::size_t c = 0; c < case_counts.size(); ++c) case_counts[c] += o.case_counts[c];
    budget_fallbacks += o.budget_fallbacks;
  }
};

struct SolveReport {
  Committee committee;
  std::size_t objective = 0;
  PtasParams params;
  PtasDiagnostics diagnostics;
};

struct CandidateEvent {
  std::size_t subset_index = 0;
  std::size_t k_prime = 0;
  std::size_t objective = 0;
  std::size_t best_objective = 0;  // running best including this candidate
};

struct PtasConfig {
  int force_case = 0;
  unsigned threads = 1;
  std::size_t trials = 64;
  bool deterministic_fallback = true;
  bool center_lp = true;
  Budgets budgets{};
  // Called once per evaluated candidate, serialized under a lock.
  std::function<void(const CandidateEvent&)> on_candidate;
};

/// (1 + epsilon)-approximation. For every vote subset Y of size min(R, n)
/// (lexicographic order) and every split k = k' + k'' (k' ascending): fix the
/// no-star part to the k''-completion of p(Y)'', solve the auxiliary problem
/// over the star part, and score the assembled committee with the true
/// objective. The result is the minimum by (objective, lexicographic
/// committee), so it does not depend on the worker count.
inline SolveReport ptas_solve(const Election& input, double epsilon, std::uint64_t seed,
                              const PtasConfig& config = {}) {
  const auto started = std::chrono::steady_clock::now();
  const Election election = normalized(input);
  PtasParams params = derive_params(epsilon, election.n(), seed, config.trials);
  params.deterministic_fallback = config.deterministic_fallback;
  params.center_lp = config.center_lp;
  if (config.force_case < 0 || config.force_case > 3) throw InputError("force_case must be 0 (auto), 1, 2 or 3");

  const std::size_t n = election.n();
  const std::size_t k = election.k();
  const std::size_t r = std::min(params.R, n);
  const std::uint64_t subset_count = binomial(n, r);
  if (subset_count > config.budgets.max_subsets) {
    throw BudgetExceeded("ptas: C(" + std::to_string(n) + "," + std::to_string(r) + ") subsets exceed budget of " +
                         std::to_string(config.budgets.max_subsets));
  }
  std::vector<std::vector<std::size_t>> subsets;
  subsets.reserve(static_cast<std::size_t>(subset_count));
  for_each_combination(n, r, [&](std::span<const std::size_t> s) { subsets.emplace_back(s.begin(), s.end()); });

  struct Partial {
    std::optional<Committee> best;
    std::size_t best_value = 0;
    PtasDiagnostics diag;

    void offer(Committee c, std::size_t value) {
      if (!best || value < best_value || (value == best_value && c < *best)) {
        best = std::move(c);
        best_value = value;
      }
    }
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(subsets.size())));
  std::vector<Partial> partial(workers);
  std::atomic<std::size_t> next{0};
  std::mutex event_lock;
  std::optional<std::size_t> running_best;

  auto run = [&](unsigned w) {
    Partial& mine = partial[w];
    for (std::size_t idx = next.fetch_add(1); idx < subsets.size(); idx = next.fetch_add(1)) {
      ++mine.diag.subsets_examined;
      const auto projection = project(election, subsets[idx]);
      for (std::size_t k_prime = 0; k_prime <= k; ++k_prime) {
        ++mine.diag.pairs_considered;
        AuxBuild built = build_aux(projection, k, k_prime);
        if (const auto* reason = std::get_if<SkipReason>(&built)) {
          if (*reason == SkipReason::nostar_overflow) {
            ++mine.diag.skipped_nostar_overflow;
          } else {
            ++mine.diag.skipped_lp_infeasible;
          }
          continue;
        }
        const AuxProblem& aux = std::get<AuxProblem>(built);
        const auto solution =
            solve_aux(aux, params, config.force_case, config.budgets, derive_seed({idx, k_prime}));
        if (!solution) {
          ++mine.diag.skipped_lp_infeasible;
          continue;
        }
        ++mine.diag.pairs_solved;
        ++mine.diag.case_counts[static_cast<std::size_t>(solution->case_used) - 1];
        if (solution->budget_fallback) ++mine.diag.budget_fallbacks;

        Committee candidate{aux.assemble(solution->s_prime)};
        const std::size_t value = objective(candidate, election);
        if (config.on_candidate) {
          std::lock_guard<std::mutex> guard(event_lock);
          running_best = running_best ? std::min(*running_best, value) : value;
          config.on_candidate(CandidateEvent{idx, k_prime, value, *running_best});
        }
        mine.offer(std::move(candidate), value);
      }
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }

  Partial total;
  total.diag.subset_size = r;
  for (auto& p : partial) {
    total.diag.merge(p.diag);
    if (p.best) total.offer(std::move(*p.best), p.best_value);
  }
  // Some split always survives: k' = min(k, beta) fits both parts.
  if (!total.best) throw SolverError("ptas: no feasible (subset, split) pair");

  SolveReport report{std::move(*total.best), total.best_value, params, total.diag};
  report.diagnostics.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace mav
