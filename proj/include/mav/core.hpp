#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mav/bit_vector.hpp"
#include "mav/election.hpp"
#include "mav/error.hpp"

namespace mav {

// Minimax objective: the largest Hamming distance from `x` to any ballot.
inline std::size_t objective(const BitVector& x, const Election& election) {
  std::size_t worst = 0;
  for (const auto& ballot : election.ballots()) worst = std::max(worst, hamming(x, ballot));
  return worst;
}

inline std::size_t objective(const Committee& committee, const Election& election) {
  return objective(committee.vector, election);
}

inline std::size_t sum_distance(const BitVector& x, const Election& election) {
  std::size_t total = 0;
  for (const auto& ballot : election.ballots()) total += hamming(x, ballot);
  return total;
}

/// Nearest vector with exactly k ones. Only adds or only deletes ones, always
/// at the smallest available positions, so the result is unique and
/// hamming(result, x) = |ones(x) - k|.
inline BitVector k_completion(const BitVector& x, std::size_t k) {
  if (k > x.size()) {
    throw InputError("k-completion target " + std::to_string(k) + " exceeds length " +
                     std::to_string(x.size()));
  }
  BitVector out = x;
  std::size_t ones = x.ones_count();
  const bool adding = ones < k;
  for (std::size_t j = 0; j < out.size() && ones != k; ++j) {
    if (out.get(j) != adding) {
      out.set(j, adding);
      ones = adding ? ones + 1 : ones - 1;
    }
  }
  return out;
}

/// Consensus of a vote subset: a position is 0 or 1 where every member agrees,
/// '*' otherwise.
class Pattern {
 public:
  static constexpr char kStar = '*';

  Pattern() = default;
  Pattern(BitVector stars, BitVector values) : stars_(std::move(stars)), values_(std::move(values)) {
    stars_.require_same_size(values_);
    for (std::size_t j = 0; j < stars_.size(); ++j) {
      if (stars_.get(j)) values_.set(j, false);
    }
  }

  static Pattern from_string(std::string_view symbols) {
    BitVector stars(symbols.size());
    BitVector values(symbols.size());
    for (std::size_t j = 0; j < symbols.size(); ++j) {
      switch (symbols[j]) {
        case '0': break;
        case '1': values.set(j, true); break;
        case kStar: stars.set(j, true); break;
        default: throw InputError("pattern contains '" + std::string(1, symbols[j]) + "'");
      }
    }
    return Pattern(std::move(stars), std::move(values));
  }

  std::size_t size() const noexcept { return stars_.size(); }
  std::size_t star_count() const noexcept { return stars_.ones_count(); }
  bool is_star(std::size_t j) const noexcept { return stars_.get(j); }
  // Consensus value at a non-star position; false at stars.
  bool value(std::size_t j) const noexcept { return values_.get(j); }
  char symbol(std::size_t j) const noexcept { return is_star(j) ? kStar : (value(j) ? '1' : '0'); }

  const BitVector& stars() const noexcept { return stars_; }
  const BitVector& values() const noexcept { return values_; }

  std::string to_string() const {
    std::string out(size(), '0');
    for (std::size_t j = 0; j < size(); ++j) out[j] = symbol(j);
    return out;
  }

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  BitVector stars_;
  BitVector values_;
};

namespace detail {

template <typename Get>
Pattern pattern_from(std::size_t count, Get&& get) {
  if (count == 0) throw InputError("pattern of an empty vote set");
  BitVector all = get(0);
  BitVector any = all;
  for (std::size_t i = 1; i < count; ++i) {
    const BitVector& v = get(i);
    all = all & v;
    any = any | v;
  }
  return Pattern(all ^ any, all);
}

}  // namespace detail

inline Pattern pattern(std::span<const BitVector> votes) {
  return detail::pattern_from(votes.size(), [&](std::size_t i) -> const BitVector& { return votes[i]; });
}

// Pattern of the ballots selected by `indices`.
inline Pattern pattern(const Election& election, std::span<const std::size_t> indices) {
  return detail::pattern_from(indices.size(),
                              [&](std::size_t i) -> const BitVector& { return election.ballot(indices[i]); });
}

/// Bijection on positions. forward[old] = new, inverse[new] = old.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(std::size_t size) {
    std::vector<std::size_t> order(size);
    std::iota(order.begin(), order.end(), 0);
    return from_order(std::move(order));
  }

  // `order[new]` names the old position that moves to `new` (0-based).
  static Permutation from_order(std::vector<std::size_t> order) {
    Permutation p;
    p.forward_.assign(order.size(), order.size());
    for (std::size_t dst = 0; dst < order.size(); ++dst) {
      const std::size_t src = order[dst];
      if (src >= order.size() || p.forward_[src] != order.size()) {
        throw InputError("order is not a permutation");
      }
      p.forward_[src] = dst;
    }
    p.inverse_ = std::move(order);
    return p;
  }

  std::size_t size() const noexcept { return forward_.size(); }
  std::size_t forward(std::size_t old_pos) const { return forward_[old_pos]; }
  std::size_t inverse(std::size_t new_pos) const { return inverse_[new_pos]; }
  const std::vector<std::size_t>& order() const noexcept { return inverse_; }

  Permutation inverted() const {
    Permutation p;
    p.forward_ = inverse_;
    p.inverse_ = forward_;
    return p;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> forward_;
  std::vector<std::size_t> inverse_;
};

inline BitVector apply_permutation(const BitVector& x, const Permutation& perm) {
  if (x.size() != perm.size()) {
    throw InputError("permutation of size " + std::to_string(perm.size()) + " applied to length " +
                     std::to_string(x.size()));
  }
  BitVector out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x.get(j)) out.set(perm.forward(j), true);
  }
  return out;
}

inline Pattern apply_permutation(const Pattern& p, const Permutation& perm) {
  return Pattern(apply_permutation(p.stars(), perm), apply_permutation(p.values(), perm));
}

struct StarSplit {
  Permutation perm;
  Pattern reordered;  // shape *...*0...01...1
};

// Stable reorder putting stars first, then zeros, then ones.
inline StarSplit star_permutation(const Pattern& p) {
  std::vector<std::size_t> order;
  order.reserve(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p.is_star(j)) order.push_back(j);
  }
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!p.is_star(j) && !p.value(j)) order.push_back(j);
  }
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!p.is_star(j) && p.value(j)) order.push_back(j);
  }
  Permutation perm = Permutation::from_order(std::move(order));
  Pattern reordered = apply_permutation(p, perm);
  return {std::move(perm), std::move(reordered)};
}

/// The k most-approved candidates, ties to the smaller index. Minimizes the
/// sum of distances to the ballots.
inline Committee minisum_committee(const Election& election) {
  std::vector<std::size_t> approvals(election.m(), 0);
  for (const auto& ballot : election.ballots()) {
    for (std::size_t j = 0; j < election.m(); ++j) approvals[j] += ballot.get(j) ? 1 : 0;
  }
  std::vector<std::size_t> order(election.m());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return approvals[a] > approvals[b]; });
  BitVector chosen(election.m());
  for (std::size_t i = 0; i < election.k(); ++i) chosen.set(order[i], true);
  return Committee{std::move(chosen)};
}

/// Best k-completion over all ballots (3-approximation). Ties go to the
/// lexicographically smallest committee.
inline Committee three_approx(const Election& election) {
  Committee best{k_completion(election.ballot(0), election.k())};
  std::size_t best_value = objective(best, election);
  for (std::size_t i = 1; i < election.n(); ++i) {
    Committee candidate{k_completion(election.ballot(i), election.k())};
    const std::size_t value = objective(candidate, election);
    if (value < best_value || (value == best_value && candidate < best)) {
      best = std::move(candidate);
      best_value = value;
    }
  }
  return best;
}

}  // namespace mav
