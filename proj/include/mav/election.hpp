#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mav/bit_vector.hpp"
#include "mav/error.hpp"

namespace mav {

/// A multiset of approval ballots over m candidates plus the committee size.
/// Invariants: n >= 1, m >= 1, 0 <= k <= m, every ballot has length m.
class Election {
 public:
  Election(std::vector<BitVector> ballots, std::size_t k) : ballots_(std::move(ballots)), k_(k) {
    if (ballots_.empty()) throw InputError("election needs at least one ballot");
    m_ = ballots_.front().size();
    if (m_ == 0) throw InputError("election needs at least one candidate");
    for (std::size_t i = 0; i < ballots_.size(); ++i) {
      if (ballots_[i].size() != m_) {
        throw InputError("ballot " + std::to_string(i + 1) + " has length " +
                         std::to_string(ballots_[i].size()) + ", expected " + std::to_string(m_));
      }
    }
    if (k_ > m_) {
      throw InputError("committee size k=" + std::to_string(k_) + " exceeds candidate count m=" +
                       std::to_string(m_));
    }
  }

  static Election from_strings(const std::vector<std::string>& rows, std::size_t k) {
    std::vector<BitVector> ballots;
    ballots.reserve(rows.size());
    for (const auto& row : rows) ballots.push_back(BitVector::from_string(row));
    return Election(std::move(ballots), k);
  }

  std::size_t n() const noexcept { return ballots_.size(); }
  std::size_t m() const noexcept { return m_; }
  std::size_t k() const noexcept { return k_; }
  const std::vector<BitVector>& ballots() const noexcept { return ballots_; }
  const BitVector& ballot(std::size_t i) const { return ballots_.at(i); }

  friend bool operator==(const Election&, const Election&) = default;

 private:
  std::vector<BitVector> ballots_;
  std::size_t m_ = 0;
  std::size_t k_ = 0;
};

/// A size-k candidate set. The vector is public; callers that build one by
/// hand are responsible for the ones-count.
struct Committee {
  BitVector vector;

  std::size_t size() const noexcept { return vector.ones_count(); }
  std::string to_string() const { return vector.to_string(); }

  friend bool operator==(const Committee&, const Committee&) = default;
  friend auto operator<=>(const Committee& a, const Committee& b) { return a.vector <=> b.vector; }
};

// Replicates the first ballot until n > k. The minimax objective of every
// committee is unchanged because the copies add no new distances.
inline Election normalized(const Election& election) {
  if (election.n() > election.k()) return election;
  std::vector<BitVector> ballots = election.ballots();
  const std::size_t copies = election.k() - election.n() + 1;
  for (std::size_t c = 0; c < copies; ++c) ballots.push_back(election.ballots().front());
  return Election(std::move(ballots), election.k());
}

}  // namespace mav
