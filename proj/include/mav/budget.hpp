#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "mav/error.hpp"

namespace mav {

/// Limits on every exhaustive enumeration. Exceeding one is an explicit
/// BudgetExceeded error, never a silent approximation.
struct Budgets {
  std::size_t oracle_max_candidates = 20;        // exact_opt: m
  std::size_t bruteforce_max_beta = 24;          // aux_ip_bruteforce: beta
  std::size_t case1_max_beta = 22;               // solve_aux_case1: beta (2^beta masks)
  std::uint64_t case2_max_combinations = 1u << 22;  // solve_aux_case2: C(beta, k')
  std::uint64_t max_subsets = 1u << 20;          // ptas_solve: C(n, R)

  // Overrides from MAV_ORACLE_MAX_M, MAV_BRUTEFORCE_MAX_BETA, MAV_CASE1_MAX_BETA,
  // MAV_CASE2_MAX_COMBINATIONS and MAV_MAX_SUBSETS when set.
  static Budgets from_env() {
    Budgets b;
    read_env("MAV_ORACLE_MAX_M", b.oracle_max_candidates);
    read_env("MAV_BRUTEFORCE_MAX_BETA", b.bruteforce_max_beta);
    read_env("MAV_CASE1_MAX_BETA", b.case1_max_beta);
    read_env("MAV_CASE2_MAX_COMBINATIONS", b.case2_max_combinations);
    read_env("MAV_MAX_SUBSETS", b.max_subsets);
    return b;
  }

 private:
  template <typename T>
  static void read_env(const char* name, T& out) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0') throw InputError(std::string(name) + " is not a nonnegative integer");
    out = static_cast<T>(value);
  }
};

}  // namespace mav
