#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mav/bit_vector.hpp"
#include "mav/core.hpp"
#include "mav/election.hpp"
#include "mav/error.hpp"

namespace mav {

/// Ballots of an election split by the pattern of a vote subset Y: candidates
/// are reordered so the stars of p(Y) come first (the star part, length beta)
/// followed by the consensus positions (the no-star part). Independent of the
/// k' split, so one projection serves every k'.
struct SubsetProjection {
  std::vector<std::size_t> subset;
  Pattern pattern;           // p(Y) in original candidate order
  Permutation perm;          // original -> star-first order
  std::size_t beta = 0;      // number of stars
  BitVector nostar_pattern;  // (p(Y))'' as a bit string
  std::vector<BitVector> star_parts;    // s_i'
  std::vector<BitVector> nostar_parts;  // s_i''

  std::size_t n() const noexcept { return star_parts.size(); }
  std::size_t m() const noexcept { return perm.size(); }
};

inline std::shared_ptr<const SubsetProjection> project(const Election& election,
                                                       std::span<const std::size_t> subset) {
  if (subset.empty()) throw InputError("vote subset must be nonempty");
  for (std::size_t i : subset) {
    if (i >= election.n()) throw InputError("vote subset index out of range");
  }
  auto proj = std::make_shared<SubsetProjection>();
  proj->subset.assign(subset.begin(), subset.end());
  proj->pattern = pattern(election, subset);
  StarSplit split = star_permutation(proj->pattern);
  proj->perm = std::move(split.perm);
  proj->beta = proj->pattern.star_count();
  proj->nostar_pattern = split.reordered.values().suffix(proj->beta);
  proj->star_parts.reserve(election.n());
  proj->nostar_parts.reserve(election.n());
  for (const auto& ballot : election.ballots()) {
    const BitVector moved = apply_permutation(ballot, proj->perm);
    proj->star_parts.push_back(moved.prefix(proj->beta));
    proj->nostar_parts.push_back(moved.suffix(proj->beta));
  }
  return proj;
}

/// The integer program left after fixing the no-star part of the answer:
///
///   min q  s.t.  ones(s') = k',  d(s', s_i') <= q - offset_i  for all i,
///                q >= 0,  s' in {0,1}^beta
///
/// with offset_i = d(s_alg'', s_i'') and s_alg'' the k''-completion of
/// (p(Y))''.
struct AuxProblem {
  std::shared_ptr<const SubsetProjection> projection;
  std::size_t k_prime = 0;
  std::size_t k_second = 0;
  BitVector s_alg_nostar;
  std::vector<std::size_t> offsets;

  std::size_t beta() const noexcept { return projection->beta; }
  std::size_t n() const noexcept { return projection->n(); }
  std::size_t m() const noexcept { return projection->m(); }
  const BitVector& star_part(std::size_t i) const { return projection->star_parts[i]; }

  // q achieved by a given star-part assignment.
  std::size_t evaluate(const BitVector& s_prime) const {
    std::size_t q = 0;
    for (std::size_t i = 0; i < n(); ++i) q = std::max(q, hamming(s_prime, star_part(i)) + offsets[i]);
    return q;
  }

  // Full committee in original candidate order for s' . s_alg''.
  BitVector assemble(const BitVector& s_prime) const {
    return apply_permutation(concat(s_prime, s_alg_nostar), projection->perm.inverted());
  }
};

enum class SkipReason {
  nostar_overflow,  // k'' ones do not fit in the no-star part
  lp_infeasible,    // k' > beta
};

inline std::string_view to_string(SkipReason reason) {
  switch (reason) {
    case SkipReason::nostar_overflow: return "nostar_overflow";
    case SkipReason::lp_infeasible: return "lp_infeasible";
  }
  return "unknown";
}

using AuxBuild = std::variant<AuxProblem, SkipReason>;

inline AuxBuild build_aux(std::shared_ptr<const SubsetProjection> projection, std::size_t k,
                          std::size_t k_prime) {
  if (k_prime > k) throw InputError("k' exceeds k");
  const std::size_t k_second = k - k_prime;
  const std::size_t beta = projection->beta;
  if (k_second > projection->m() - beta) return SkipReason::nostar_overflow;
  if (k_prime > beta) return SkipReason::lp_infeasible;

  AuxProblem aux;
  aux.k_prime = k_prime;
  aux.k_second = k_second;
  aux.s_alg_nostar = k_completion(projection->nostar_pattern, k_second);
  aux.offsets.reserve(projection->n());
  for (const auto& part : projection->nostar_parts) aux.offsets.push_back(hamming(aux.s_alg_nostar, part));
  aux.projection = std::move(projection);
  return aux;
}

inline AuxBuild build_aux(const Election& election, std::span<const std::size_t> subset, std::size_t k_prime) {
  return build_aux(project(election, subset), election.k(), k_prime);
}

}  // namespace mav
