#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "mav/aux_problem.hpp"
#include "mav/bit_vector.hpp"
#include "mav/budget.hpp"
#include "mav/combinatorics.hpp"
#include "mav/core.hpp"
#include "mav/election.hpp"
#include "mav/error.hpp"

// Ground truth for tests and for the ratio column of the CLI: exhaustive
// minimax search plus the inaccuracy machinery (t, ina, stable subsets)
// defined relative to a fixed optimum.
namespace mav {

struct OracleResult {
  Committee committee;
  std::size_t opt_value = 0;
};

namespace detail {

struct Best {
  std::optional<BitVector> vector;
  std::size_t value = 0;

  void offer(const BitVector& candidate, std::size_t candidate_value) {
    if (!vector || candidate_value < value || (candidate_value == value && candidate < *vector)) {
      vector = candidate;
      value = candidate_value;
    }
  }
};

// Objective with early exit once it can no longer beat `bound`.
inline std::size_t objective_capped(const BitVector& x, const Election& election, std::size_t bound) {
  std::size_t worst = 0;
  for (const auto& ballot : election.ballots()) {
    worst = std::max(worst, hamming(x, ballot));
    if (worst > bound) break;
  }
  return worst;
}

}  // namespace detail

/// Exhaustive search over all C(m, k) committees. The search space is split
/// by the smallest chosen candidate, so any number of workers reduces to the
/// same (objective, lexicographic) minimum.
inline OracleResult exact_opt(const Election& election, const Budgets& budgets = {}, unsigned threads = 1) {
  const std::size_t m = election.m();
  const std::size_t k = election.k();
  if (m > budgets.oracle_max_candidates) {
    throw BudgetExceeded("exact_opt: m=" + std::to_string(m) + " exceeds oracle budget of " +
                         std::to_string(budgets.oracle_max_candidates) + " candidates");
  }
  if (k == 0) {
    BitVector empty(m);
    return {Committee{empty}, objective(empty, election)};
  }

  const std::size_t first_positions = m - k + 1;
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(first_positions)));
  std::vector<detail::Best> partial(workers);

  auto run = [&](unsigned w) {
    detail::Best& best = partial[w];
    for (std::size_t first = w; first < first_positions; first += workers) {
      for_each_combination(
          m - first - 1, k - 1,
          [&](std::span<const std::size_t> rest) {
            BitVector x(m);
            x.set(first, true);
            for (std::size_t j : rest) x.set(j, true);
            const std::size_t bound = best.vector ? best.value : m;
            const std::size_t value = detail::objective_capped(x, election, bound);
            if (value <= bound) best.offer(x, value);
          },
          first + 1);
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

  detail::Best total;
  for (const auto& p : partial) {
    if (p.vector) total.offer(*p.vector, p.value);
  }
  return {Committee{*total.vector}, total.value};
}

// s_opt overwritten by the consensus of Y wherever Y is unanimous.
inline BitVector t_vector(const Election& election, std::span<const std::size_t> subset, const BitVector& s_opt) {
  const Pattern p = pattern(election, subset);
  s_opt.require_same_size(p.stars());
  return (s_opt & p.stars()) | p.values();
}

/// Inaccuracy of a vote subset with respect to a fixed optimum; the empty
/// subset is assigned 2 * OPT so that ina stays supermodular.
inline std::size_t ina(const Election& election, std::span<const std::size_t> subset, const BitVector& s_opt,
                       std::size_t opt_value) {
  if (subset.empty()) return 2 * opt_value;
  return hamming(t_vector(election, subset, s_opt), s_opt);
}

/// A subset X with |X| = min(R, n) whose inaccuracy drops by at most OPT/R
/// when any single further vote is added.
///
/// Builds the greedy chain S_1 = {s_1}, S_r = S_{r-1} + argmax drop (ties to
/// the smaller ballot index), picks the step r in [1, R] with the smallest
/// drop ina(S_r) - ina(S_{r+1}), and pads S_r with the lowest-index unused
/// ballots. Returned indices are sorted.
inline std::vector<std::size_t> find_stable_subset(const Election& election, std::size_t R, const BitVector& s_opt,
                                                   std::size_t opt_value) {
  if (R == 0) throw InputError("stable subset size R must be at least 1");
  const std::size_t n = election.n();
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  if (R >= n) return all;

  // chain[r-1] is the ballot added at step r; ina_at[r-1] = ina(S_r).
  std::vector<std::size_t> chain{0};
  std::vector<bool> used(n, false);
  used[0] = true;
  std::vector<std::size_t> ina_at{ina(election, chain, s_opt, opt_value)};
  while (chain.size() < R + 1) {
    std::optional<std::size_t> pick;
    std::size_t pick_value = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (used[s]) continue;
      chain.push_back(s);
      const std::size_t value = ina(election, chain, s_opt, opt_value);
      chain.pop_back();
      // Largest drop == smallest resulting ina.
      if (!pick || value < pick_value) {
        pick = s;
        pick_value = value;
      }
    }
    chain.push_back(*pick);
    used[*pick] = true;
    ina_at.push_back(pick_value);
  }

  std::size_t best_r = 1;
  std::size_t best_drop = ina_at[0] - ina_at[1];
  for (std::size_t r = 2; r <= R; ++r) {
    const std::size_t drop = ina_at[r - 1] - ina_at[r];
    if (drop < best_drop) {
      best_drop = drop;
      best_r = r;
    }
  }

  std::vector<std::size_t> subset(chain.begin(), chain.begin() + static_cast<std::ptrdiff_t>(best_r));
  std::vector<bool> in_subset(n, false);
  for (std::size_t i : subset) in_subset[i] = true;
  for (std::size_t i = 0; i < n && subset.size() < R; ++i) {
    if (!in_subset[i]) {
      subset.push_back(i);
      in_subset[i] = true;
    }
  }
  std::sort(subset.begin(), subset.end());
  return subset;
}

struct AuxIpResult {
  BitVector s_prime;
  std::size_t q = 0;
};

/// Reference solver for the auxiliary IP: depth-first over star positions in
/// order, 0 before 1, so the first minimizer met is the lexicographically
/// smallest. Distances are tallied per position, independent of the
/// word-level Hamming routine. Returns nullopt when k' > beta.
inline std::optional<AuxIpResult> aux_ip_bruteforce(const AuxProblem& aux, const Budgets& budgets = {}) {
  const std::size_t beta = aux.beta();
  if (beta > budgets.bruteforce_max_beta) {
    throw BudgetExceeded("aux_ip_bruteforce: beta=" + std::to_string(beta) + " exceeds budget of " +
                         std::to_string(budgets.bruteforce_max_beta));
  }
  if (aux.k_prime > beta) return std::nullopt;

  const std::size_t n = aux.n();
  std::vector<std::vector<char>> ballots(n, std::vector<char>(beta));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < beta; ++j) ballots[i][j] = aux.star_part(i).get(j) ? 1 : 0;
  }

  std::vector<char> current(beta, 0);
  std::vector<std::size_t> dist(n, 0);
  std::optional<AuxIpResult> best;

  auto recurse = [&](auto&& self, std::size_t pos, std::size_t ones) -> void {
    if (ones > aux.k_prime || aux.k_prime - ones > beta - pos) return;
    if (pos == beta) {
      std::size_t q = 0;
      for (std::size_t i = 0; i < n; ++i) q = std::max(q, dist[i] + aux.offsets[i]);
      if (!best || q < best->q) {
        BitVector s(beta);
        for (std::size_t j = 0; j < beta; ++j) s.set(j, current[j] != 0);
        best = AuxIpResult{std::move(s), q};
      }
      return;
    }
    for (char bit : {char{0}, char{1}}) {
      current[pos] = bit;
      for (std::size_t i = 0; i < n; ++i) dist[i] += (ballots[i][pos] != bit) ? 1 : 0;
      self(self, pos + 1, ones + static_cast<std::size_t>(bit));
      for (std::size_t i = 0; i < n; ++i) dist[i] -= (ballots[i][pos] != bit) ? 1 : 0;
    }
    current[pos] = 0;
  };
  recurse(recurse, 0, 0);
  return best;
}

}  // namespace mav
