#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mav/bit_vector.hpp"
#include "mav/election.hpp"
#include "mav/error.hpp"
#include "mav/rng.hpp"

namespace mav {

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Ballot file:
///
///   # optional comment lines (and blank lines) anywhere
///   n m k
///   <n rows of exactly m characters from {0,1}>
///
/// Trailing whitespace (including CR) on a line is ignored. No padding is
/// applied; solvers normalize internally.
inline Election parse_election(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string line(text.substr(start, end - start));
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] != '#') lines.emplace_back(line_no, std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  if (lines.empty()) throw ParseError(line_no, "missing header 'n m k'");

  const auto& [header_line, header] = lines.front();
  std::istringstream in(header);
  long long n = -1, m = -1, k = -1;
  std::string extra;
  if (!(in >> n >> m >> k) || (in >> extra)) throw ParseError(header_line, "malformed header, expected 'n m k'");
  if (n < 1) throw ParseError(header_line, "n must be at least 1");
  if (m < 1) throw ParseError(header_line, "m must be at least 1");
  if (k < 0) throw ParseError(header_line, "k must be nonnegative");
  if (k > m) throw ParseError(header_line, "k > m (" + std::to_string(k) + " > " + std::to_string(m) + ")");

  const auto rows = lines.size() - 1;
  if (rows < static_cast<std::size_t>(n)) {
    throw ParseError(line_no, "expected " + std::to_string(n) + " ballots, found " + std::to_string(rows));
  }
  if (rows > static_cast<std::size_t>(n)) {
    throw ParseError(lines[static_cast<std::size_t>(n) + 1].first,
                     "unexpected extra ballot beyond n=" + std::to_string(n));
  }

  std::vector<BitVector> ballots;
  ballots.reserve(static_cast<std::size_t>(n));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [where, row] = lines[i];
    if (row.size() != static_cast<std::size_t>(m)) {
      throw ParseError(where, "ballot has length " + std::to_string(row.size()) + ", expected " + std::to_string(m));
    }
    for (char c : row) {
      if (c != '0' && c != '1') throw ParseError(where, std::string("illegal character '") + c + "' in ballot");
    }
    ballots.push_back(BitVector::from_string(row));
  }
  return Election(std::move(ballots), static_cast<std::size_t>(k));
}

inline std::string render_election(const Election& election) {
  std::string out =
      std::to_string(election.n()) + " " + std::to_string(election.m()) + " " + std::to_string(election.k()) + "\n";
  for (const auto& ballot : election.ballots()) out += ballot.to_string() + "\n";
  return out;
}

struct GeneratedInstance {
  Election election;
  Committee planted;
  std::size_t radius = 0;
};

namespace detail {

// First `count` entries of a seeded Fisher-Yates shuffle of 0..size-1.
inline std::vector<std::size_t> sample_positions(Rng& rng, std::size_t size, std::size_t count) {
  std::vector<std::size_t> pool(size);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(size - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace detail

/// Planted instance: a uniform size-k committee and n ballots, each at
/// Hamming distance exactly `radius` from it. OPT <= radius by construction.
inline GeneratedInstance generate_instance(std::size_t n, std::size_t m, std::size_t k, std::size_t radius,
                                           std::uint64_t seed) {
  if (n < 1) throw InputError("n must be at least 1");
  if (m < 1) throw InputError("m must be at least 1");
  if (k > m) throw InputError("k must not exceed m");
  if (radius > m) throw InputError("radius must not exceed m");
  Rng rng(seed);
  BitVector planted(m);
  for (std::size_t j : detail::sample_positions(rng, m, k)) planted.set(j, true);
  std::vector<BitVector> ballots;
  ballots.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    BitVector b = planted;
    for (std::size_t j : detail::sample_positions(rng, m, radius)) b.flip(j);
    ballots.push_back(std::move(b));
  }
  return {Election(std::move(ballots), k), Committee{std::move(planted)}, radius};
}

// Ballots with independent fair-coin approvals.
inline Election random_election(std::size_t n, std::size_t m, std::size_t k, std::uint64_t seed) {
  if (n < 1 || m < 1 || k > m) throw InputError("random_election: need n >= 1, m >= 1, k <= m");
  Rng rng(seed);
  std::vector<BitVector> ballots;
  ballots.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    BitVector b(m);
    for (std::size_t j = 0; j < m; ++j) b.set(j, (rng.next() >> 63) != 0);
    ballots.push_back(std::move(b));
  }
  return Election(std::move(ballots), k);
}

}  // namespace mav
