#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "mav/error.hpp"

namespace mav {

/// Dense LP: minimize objective . x subject to
///   equalities[r].coeffs . x == rhs,
///   inequalities[r].coeffs . x <= rhs,
///   lower[j] <= x[j] <= upper[j].
/// Lower bounds must be finite; upper bounds may be +infinity.
struct LinearProgram {
  struct Row {
    std::vector<double> coeffs;
    double rhs = 0.0;
  };

  std::vector<double> objective;
  std::vector<Row> equalities;
  std::vector<Row> inequalities;
  std::vector<double> lower;
  std::vector<double> upper;

  static constexpr double kInfinity = std::numeric_limits<double>::infinity();

  explicit LinearProgram(std::size_t num_vars = 0)
      : objective(num_vars, 0.0), lower(num_vars, 0.0), upper(num_vars, kInfinity) {}

  std::size_t num_vars() const noexcept { return objective.size(); }

  void validate() const {
    const std::size_t n = num_vars();
    if (lower.size() != n || upper.size() != n) throw InputError("LP bounds arity mismatch");
    for (const auto* rows : {&equalities, &inequalities}) {
      for (const auto& row : *rows) {
        if (row.coeffs.size() != n) throw InputError("LP row arity mismatch");
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(lower[j])) throw InputError("LP lower bounds must be finite");
      if (lower[j] > upper[j]) throw InputError("LP bound lo > hi for variable " + std::to_string(j));
    }
  }

  // Plain-text dump, one item per line:
  //   vars N
  //   min c_1 ... c_N
  //   eq a_1 ... a_N = b
  //   le a_1 ... a_N <= b
  //   bound j lo hi
  std::string to_text() const {
    std::string out = "vars " + std::to_string(num_vars()) + "\nmin";
    for (double c : objective) out += " " + format(c);
    out += "\n";
    for (const auto& row : equalities) out += dump_row("eq", row, "=");
    for (const auto& row : inequalities) out += dump_row("le", row, "<=");
    for (std::size_t j = 0; j < num_vars(); ++j) {
      out += "bound " + std::to_string(j) + " " + format(lower[j]) + " " + format(upper[j]) + "\n";
    }
    return out;
  }

 private:
  static std::string format(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

  static std::string dump_row(std::string_view tag, const Row& row, std::string_view op) {
    std::string out(tag);
    for (double a : row.coeffs) out += " " + format(a);
    out += " ";
    out += op;
    out += " " + format(row.rhs) + "\n";
    return out;
  }
};

enum class LpStatus { optimal, infeasible, unbounded };

inline std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

struct LPOutcome {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> solution;
  double value = 0.0;
};

struct LpOptions {
  double tolerance = 1e-9;
  std::size_t max_pivots = 100000;
};

namespace detail {

/// Two-phase dense tableau simplex with Bland's rule. Works on the shifted
/// variables y = x - lower >= 0; finite upper bounds become rows.
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const LpOptions& options) : lp_(lp), opt_(options) {}

  LPOutcome solve() {
    build();
    if (!phase_one()) return {LpStatus::infeasible, {}, 0.0};
    drop_artificials();
    if (!phase_two()) return {LpStatus::unbounded, {}, 0.0};
    return extract();
  }

 private:
  static constexpr double kPivotEps = 1e-11;

  // Tableau rows 0..rows_-1 are constraints, row rows_ the cost row.
  // Column cols_ holds the right-hand side.
  double& at(std::size_t r, std::size_t c) { return tab_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }

  void build() {
    const std::size_t n = lp_.num_vars();
    struct Std {
      std::vector<double> a;
      double b;
      int slack;  // +1 (<=), 0 (=)
    };
    std::vector<Std> raw;
    auto shifted_rhs = [&](const LinearProgram::Row& row) {
      double b = row.rhs;
      for (std::size_t j = 0; j < n; ++j) b -= row.coeffs[j] * lp_.lower[j];
      return b;
    };
    for (const auto& row : lp_.equalities) raw.push_back({row.coeffs, shifted_rhs(row), 0});
    for (const auto& row : lp_.inequalities) raw.push_back({row.coeffs, shifted_rhs(row), 1});
    for (std::size_t j = 0; j < n; ++j) {
      if (std::isfinite(lp_.upper[j])) {
        std::vector<double> a(n, 0.0);
        a[j] = 1.0;
        raw.push_back({std::move(a), lp_.upper[j] - lp_.lower[j], 1});
      }
    }

    rows_ = raw.size();
    structural_ = n;
    std::size_t slacks = 0;
    for (const auto& r : raw) slacks += r.slack != 0 ? 1 : 0;
    // One artificial per row whose slack cannot start basic.
    std::size_t artificials = 0;
    for (const auto& r : raw) artificials += (r.slack == 0 || r.b < 0) ? 1 : 0;
    first_artificial_ = n + slacks;
    cols_ = first_artificial_ + artificials;
    tab_.assign((rows_ + 1) * (cols_ + 1), 0.0);
    basis_.assign(rows_, 0);

    std::size_t next_slack = n;
    std::size_t next_art = first_artificial_;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double sign = raw[r].b < 0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n; ++j) at(r, j) = sign * raw[r].a[j];
      rhs(r) = sign * raw[r].b;
      std::size_t slack_col = cols_;
      if (raw[r].slack != 0) {
        slack_col = next_slack++;
        at(r, slack_col) = sign;
      }
      if (raw[r].slack != 0 && sign > 0) {
        basis_[r] = slack_col;
      } else {
        at(r, next_art) = 1.0;
        basis_[r] = next_art++;
      }
    }
  }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= p;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
    if (++pivots_ > opt_.max_pivots) throw SolverError("simplex pivot limit exceeded");
  }

  // Cost row holds reduced costs; rhs(rows_) holds -objective.
  void set_costs(const std::vector<double>& cost) {
    for (std::size_t c = 0; c <= cols_; ++c) at(rows_, c) = c < cost.size() ? cost[c] : 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double f = at(rows_, basis_[r]);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(rows_, c) -= f * at(r, c);
    }
  }

  // Bland's rule; returns false on unboundedness.
  bool iterate(std::size_t column_limit) {
    while (true) {
      std::size_t enter = column_limit;
      for (std::size_t c = 0; c < column_limit; ++c) {
        if (at(rows_, c) < -opt_.tolerance * 1e-2) {
          enter = c;
          break;
        }
      }
      if (enter == column_limit) return true;
      std::size_t leave = rows_;
      double best_ratio = 0.0;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = at(r, enter);
        if (a <= kPivotEps) continue;
        const double ratio = rhs(r) / a;
        if (leave == rows_ || ratio < best_ratio - kPivotEps ||
            (ratio <= best_ratio + kPivotEps && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
  }

  bool phase_one() {
    if (first_artificial_ == cols_) return true;
    std::vector<double> cost(cols_, 0.0);
    for (std::size_t c = first_artificial_; c < cols_; ++c) cost[c] = 1.0;
    set_costs(cost);
    iterate(cols_);
    double scale = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) scale = std::max(scale, std::abs(rhs(r)));
    return -rhs(rows_) <= opt_.tolerance * scale;
  }

  void drop_artificials() {
    for (std::size_t r = 0; r < rows_;) {
      if (basis_[r] < first_artificial_) {
        ++r;
        continue;
      }
      std::size_t col = first_artificial_;
      for (std::size_t c = 0; c < first_artificial_; ++c) {
        if (std::abs(at(r, c)) > 1e-9) {
          col = c;
          break;
        }
      }
      if (col < first_artificial_) {
        pivot(r, col);
        ++r;
      } else {
        remove_row(r);  // redundant equality
      }
    }
  }

  void remove_row(std::size_t r) {
    const std::size_t width = cols_ + 1;
    tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(r * width),
               tab_.begin() + static_cast<std::ptrdiff_t>((r + 1) * width));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

  bool phase_two() {
    std::vector<double> cost(cols_, 0.0);
    for (std::size_t j = 0; j < structural_; ++j) cost[j] = lp_.objective[j];
    set_costs(cost);
    return iterate(first_artificial_);
  }

  LPOutcome extract() {
    LPOutcome out;
    out.status = LpStatus::optimal;
    out.solution = lp_.lower;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < structural_) out.solution[basis_[r]] += std::max(0.0, rhs(r));
    }
    for (std::size_t j = 0; j < structural_; ++j) {
      out.solution[j] = std::min(out.solution[j], lp_.upper[j]);
      out.value += lp_.objective[j] * out.solution[j];
    }
    return out;
  }

  const LinearProgram& lp_;
  LpOptions opt_;
  std::vector<double> tab_;
  std::vector<std::size_t> basis_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t structural_ = 0;
  std::size_t first_artificial_ = 0;
  std::size_t pivots_ = 0;
};

}  // namespace detail

// Largest violation of any constraint or bound by `x`.
inline double max_violation(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  auto dot = [&](const std::vector<double>& a) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * x[j];
    return s;
  };
  for (const auto& row : lp.equalities) worst = std::max(worst, std::abs(dot(row.coeffs) - row.rhs));
  for (const auto& row : lp.inequalities) worst = std::max(worst, dot(row.coeffs) - row.rhs);
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    worst = std::max({worst, lp.lower[j] - x[j], x[j] - lp.upper[j]});
  }
  return worst;
}

/// Returns an optimal basic solution, or the infeasible/unbounded status.
/// Throws SolverError if the pivot limit trips or the final point violates
/// the constraints by more than a loose sanity margin.
inline LPOutcome solve_lp(const LinearProgram& lp, const LpOptions& options = {}) {
  lp.validate();
  LPOutcome out = detail::Simplex(lp, options).solve();
  if (out.status == LpStatus::optimal) {
    const double violation = max_violation(lp, out.solution);
    if (violation > 1e-6) {
      throw SolverError("simplex returned a point violating constraints by " + std::to_string(violation));
    }
  }
  return out;
}

}  // namespace mav
