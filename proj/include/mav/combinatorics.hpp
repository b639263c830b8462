#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace mav {

// C(n, r), saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    const std::uint64_t factor = n - r + i;
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t reduced = result / g;
    const std::uint64_t divisor = i / g;
    if (reduced > std::numeric_limits<std::uint64_t>::max() / factor) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    // divisor always divides factor here because C(n-r+i, i) is integral.
    result = reduced * (factor / divisor);
  }
  return result;
}

/// Calls fn(span of r sorted indices in [offset, offset + n)) for every
/// r-subset, in lexicographic order. fn returns void.
template <typename Fn>
void for_each_combination(std::size_t n, std::size_t r, Fn&& fn, std::size_t offset = 0) {
  if (r > n) return;
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), offset);
  while (true) {
    fn(std::span<const std::size_t>(idx));
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == offset + n - r + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace mav
