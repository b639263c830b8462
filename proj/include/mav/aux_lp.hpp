#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "mav/aux_problem.hpp"
#include "mav/lp.hpp"

namespace mav {

/// LP relaxation of the auxiliary IP. Variables are s'[0..beta) in [0, 1]
/// followed by q in [0, inf). For each ballot,
///   d(s', s_i') = sum_j [s_i'[j] = 0] s'[j] + [s_i'[j] = 1] (1 - s'[j])
/// so the row d(s', s_i') - q <= -offset_i becomes
///   sum_j (+1 | -1) s'[j] - q <= -offset_i - ones(s_i').
inline LinearProgram build_aux_lp(const AuxProblem& aux) {
  const std::size_t beta = aux.beta();
  const std::size_t q = beta;
  LinearProgram lp(beta + 1);
  lp.objective[q] = 1.0;
  for (std::size_t j = 0; j < beta; ++j) lp.upper[j] = 1.0;

  LinearProgram::Row count{std::vector<double>(beta + 1, 0.0), static_cast<double>(aux.k_prime)};
  for (std::size_t j = 0; j < beta; ++j) count.coeffs[j] = 1.0;
  lp.equalities.push_back(std::move(count));

  for (std::size_t i = 0; i < aux.n(); ++i) {
    const BitVector& part = aux.star_part(i);
    LinearProgram::Row row{std::vector<double>(beta + 1, 0.0), 0.0};
    for (std::size_t j = 0; j < beta; ++j) row.coeffs[j] = part.get(j) ? -1.0 : 1.0;
    row.coeffs[q] = -1.0;
    row.rhs = -static_cast<double>(aux.offsets[i]) - static_cast<double>(part.ones_count());
    lp.inequalities.push_back(std::move(row));
  }
  return lp;
}

/// A central point of the optimal face of `lp`, given one optimum of it.
/// Averages that optimum with, for every s' coordinate j, an optimum that
/// minimizes and one that maximizes s'[j] under q <= q^LP. The average is
/// again optimal, and a coordinate is 0 or 1 only if every optimum fixes it
/// there. Returns the s' part only.
inline std::vector<double> central_optimum(const LinearProgram& lp, const LPOutcome& optimum,
                                           const LpOptions& options = {}) {
  const std::size_t q = lp.num_vars() - 1;
  std::vector<double> sum(optimum.solution.begin(), optimum.solution.begin() + static_cast<std::ptrdiff_t>(q));
  std::size_t points = 1;
  LinearProgram face = lp;
  face.upper[q] = optimum.value + 1e-9 * std::max(1.0, std::abs(optimum.value));
  for (std::size_t j = 0; j < q; ++j) {
    for (const double direction : {1.0, -1.0}) {
      std::fill(face.objective.begin(), face.objective.end(), 0.0);
      face.objective[j] = direction;
      const LPOutcome out = solve_lp(face, options);
      if (out.status != LpStatus::optimal) continue;
      for (std::size_t t = 0; t < q; ++t) sum[t] += out.solution[t];
      ++points;
    }
  }
  for (double& x : sum) x = std::clamp(x / static_cast<double>(points), 0.0, 1.0);
  return sum;
}

}  // namespace mav
