#include <gtest/gtest.h>

#include <cmath>
#include <variant>
#include <vector>

#include "mav/oracle.hpp"
#include "mav/ptas.hpp"
#include "support/oracles.hpp"

namespace mav {
namespace {

BitVector bv(const char* s) { return BitVector::from_string(s); }

AuxProblem aux_of(const Election& e, std::vector<std::size_t> subset, std::size_t k_prime) {
  return std::get<AuxProblem>(build_aux(e, subset, k_prime));
}

// Random feasible aux instance with beta <= max_beta, or nullopt.
std::optional<AuxProblem> random_aux(Rng& rng, std::size_t max_beta) {
  const auto e = rng.bernoulli(0.5) ? testing::random_instance(rng, 2, 8, 3, 14, 0, 10)
                                    : testing::planted_instance(rng, 2, 8, 3, 14, 0, 10);
  const auto subset = testing::random_subset(rng, e.n());
  const std::size_t kp = rng.between(0, e.k());
  auto built = build_aux(e, subset, kp);
  if (!std::holds_alternative<AuxProblem>(built)) return std::nullopt;
  auto aux = std::get<AuxProblem>(std::move(built));
  if (aux.beta() > max_beta) return std::nullopt;
  return aux;
}

TEST(DeriveParams, Examples) {
  const auto p = derive_params(0.9, 10, 0);
  EXPECT_DOUBLE_EQ(p.epsilon0, 0.3);
  EXPECT_EQ(p.R, 7u);
  EXPECT_DOUBLE_EQ(p.epsilon2, 0.15);
  EXPECT_NEAR(p.case1_threshold, 3174.4, 0.1);
  EXPECT_NEAR(p.case2_threshold, 3.0 * 49.0 * std::log(6.0) / 0.0225, 1e-6);

  const auto q = derive_params(0.6, 4, 0);
  EXPECT_EQ(q.R, 10u);
  EXPECT_NEAR(q.epsilon2, 0.1, 1e-12);
}

TEST(DeriveParams, RejectsEpsilonOutsideUnitInterval) {
  EXPECT_THROW(derive_params(0.0, 3, 0), InputError);
  EXPECT_THROW(derive_params(1.0, 3, 0), InputError);
  EXPECT_THROW(derive_params(-0.5, 3, 0), InputError);
  EXPECT_THROW(derive_params(std::nan(""), 3, 0), InputError);
}

TEST(BuildAux, AllStars) {
  const auto aux = aux_of(Election::from_strings({"10", "01"}, 1), {0, 1}, 1);
  EXPECT_EQ(aux.beta(), 2u);
  EXPECT_EQ(aux.k_second, 0u);
  EXPECT_EQ(aux.s_alg_nostar.size(), 0u);
  EXPECT_EQ(aux.offsets, (std::vector<std::size_t>{0, 0}));
}

TEST(BuildAux, NoStars) {
  const auto e = Election::from_strings({"1100", "1010", "0011"}, 2);
  const auto aux = aux_of(e, {0}, 0);
  EXPECT_EQ(aux.beta(), 0u);
  // The no-star part is ordered zeros first, then ones.
  EXPECT_EQ(aux.s_alg_nostar, bv("0011"));
  EXPECT_EQ(aux.offsets, (std::vector<std::size_t>{0, 2, 4}));
  EXPECT_EQ(aux.assemble(BitVector(0)), bv("1100"));
}

TEST(BuildAux, SkipReasons) {
  // Y = {1000, 0100, 0010} has pattern ***0: beta = 3, one no-star slot.
  const auto e = Election::from_strings({"1000", "0100", "0010"}, 2);
  const auto overflow = build_aux(e, std::vector<std::size_t>{0, 1, 2}, 0);
  ASSERT_TRUE(std::holds_alternative<SkipReason>(overflow));
  EXPECT_EQ(std::get<SkipReason>(overflow), SkipReason::nostar_overflow);

  const auto e1 = Election::from_strings({"1100", "1010"}, 2);
  const auto too_many = build_aux(e1, std::vector<std::size_t>{0}, 1);
  ASSERT_TRUE(std::holds_alternative<SkipReason>(too_many));
  EXPECT_EQ(std::get<SkipReason>(too_many), SkipReason::lp_infeasible);

  EXPECT_THROW(build_aux(e1, std::vector<std::size_t>{0}, 3), InputError);
  EXPECT_THROW(build_aux(e1, std::vector<std::size_t>{}, 0), InputError);
}

TEST(BuildAux, AssembledCommitteeHasKOnesAndMatchesEvaluate) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    auto aux = random_aux(rng, 64);
    if (!aux) continue;
    BitVector s(aux->beta());
    for (std::size_t j = 0; j < aux->k_prime; ++j) s.set(j, true);
    const BitVector full = aux->assemble(s);
    EXPECT_EQ(full.ones_count(), aux->k_prime + aux->k_second);
    EXPECT_EQ(aux->s_alg_nostar.ones_count(), aux->k_second);
  }
}

TEST(Case1, TwoStarExample) {
  const auto aux = aux_of(Election::from_strings({"10", "01"}, 1), {0, 1}, 1);
  const auto r = solve_aux_case1(aux);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->q, 2u);
  EXPECT_EQ(r->s_prime, bv("01"));
  EXPECT_EQ(r->case_used, AuxCase::exhaustive_beta);
}

TEST(Case1, FullKPrimeForcesAllOnes) {
  const auto aux = aux_of(Election::from_strings({"1100", "1010", "1001"}, 3), {0, 1, 2}, 3);
  const auto r = solve_aux_case1(aux);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->s_prime, bv("111"));
  EXPECT_EQ(r->q, aux.evaluate(bv("111")));
}

TEST(Case1, BudgetIsEnforced) {
  const auto aux = aux_of(Election::from_strings({"1010", "0101"}, 2), {0, 1}, 2);
  Budgets b;
  b.case1_max_beta = 3;
  EXPECT_THROW(solve_aux_case1(aux, b), BudgetExceeded);
}

TEST(Case2, ZeroOnesIsSingleCandidate) {
  const auto aux = aux_of(Election::from_strings({"1100", "1010", "1001"}, 1), {0, 1, 2}, 0);
  const auto r = solve_aux_case2(aux);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->s_prime, bv("000"));
  std::size_t expected = 0;
  for (std::size_t i = 0; i < aux.n(); ++i) expected = std::max(expected, aux.star_part(i).ones_count() + aux.offsets[i]);
  EXPECT_EQ(r->q, expected);
}

TEST(Case2, OneOfThree) {
  const auto aux = aux_of(Election::from_strings({"1100", "1010", "1001"}, 2), {0, 1, 2}, 1);
  ASSERT_EQ(aux.beta(), 3u);
  const auto r = solve_aux_case2(aux);
  ASSERT_TRUE(r);
  std::size_t best = 100;
  for (const char* s : {"100", "010", "001"}) best = std::min(best, aux.evaluate(bv(s)));
  EXPECT_EQ(r->q, best);
}

TEST(Case2, BudgetIsEnforced) {
  const auto aux = aux_of(Election::from_strings({"101010", "010101"}, 3), {0, 1}, 3);
  Budgets b;
  b.case2_max_combinations = 19;  // C(6,3) = 20
  EXPECT_THROW(solve_aux_case2(aux, b), BudgetExceeded);
}

TEST(ExactCases, MatchBruteForceValueAndTieBreak) {
  Rng rng(2024);
  int checked = 0;
  while (checked < 200) {
    const auto aux = random_aux(rng, 12);
    if (!aux) continue;
    const auto ref = aux_ip_bruteforce(*aux);
    const auto c1 = solve_aux_case1(*aux);
    const auto c2 = solve_aux_case2(*aux);
    ASSERT_TRUE(ref && c1 && c2);
    EXPECT_EQ(c1->q, ref->q);
    EXPECT_EQ(c1->s_prime, ref->s_prime);
    EXPECT_EQ(c2->q, ref->q);
    EXPECT_EQ(c2->s_prime, ref->s_prime);
    ++checked;
  }
}

TEST(Case3, IntegralLpIsReturnedExactly) {
  // A single ballot: the LP optimum sets s' to that ballot's star part.
  const auto e = Election::from_strings({"1010", "0110"}, 1);
  const auto aux = aux_of(e, {0, 1}, 1);
  const auto params = derive_params(0.9, e.n(), 1);
  const auto r = solve_aux_case3(aux, params);
  ASSERT_TRUE(r);
  ASSERT_TRUE(r->lp_value);
  EXPECT_EQ(r->case_used, AuxCase::lp_rounding);
  EXPECT_EQ(r->q, aux_ip_bruteforce(aux)->q);
}

TEST(Case3, TwoStarExampleAlwaysGivesTwo) {
  const auto aux = aux_of(Election::from_strings({"10", "01"}, 1), {0, 1}, 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto params = derive_params(0.9, 2, seed, 1);
    params.deterministic_fallback = false;
    const auto r = solve_aux_case3(aux, params);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->q, 2u);
    EXPECT_EQ(r->s_prime.ones_count(), 1u);
    EXPECT_NEAR(*r->lp_value, 1.0, 1e-9);
  }
}

// The simplex vertex for this instance is (1/2, 1, 1/2): rounding always
// keeps candidate 1 and never reaches the unique integer optimum 101.
AuxProblem pinned_vertex_aux() {
  const auto e = Election::from_strings({"000", "000", "110", "110", "111", "111", "001", "100"}, 2);
  return aux_of(e, {0, 1, 2, 3, 4, 5, 6, 7}, 2);
}

TEST(Case3, VertexRoundingCanMissTheOptimum) {
  const auto aux = pinned_vertex_aux();
  ASSERT_EQ(aux.beta(), 3u);
  EXPECT_EQ(aux_ip_bruteforce(aux)->s_prime, bv("101"));
  auto params = derive_params(0.9, aux.n(), 1);
  params.center_lp = false;
  params.deterministic_fallback = false;
  const auto r = solve_aux_case3(aux, params);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->q, 3u);
}

TEST(Case3, CentralOptimumReachesIt) {
  const auto aux = pinned_vertex_aux();
  const auto lp = build_aux_lp(aux);
  const auto vertex = solve_lp(lp);
  const auto center = central_optimum(lp, vertex);
  ASSERT_EQ(center.size(), 3u);
  std::vector<double> point = center;
  point.push_back(vertex.value);
  EXPECT_LE(max_violation(lp, point), 1e-9);
  for (double x : center) {
    EXPECT_GT(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
  auto params = derive_params(0.9, aux.n(), 1);
  params.deterministic_fallback = false;
  const auto r = solve_aux_case3(aux, params);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->q, 2u);
  EXPECT_EQ(r->s_prime, bv("101"));
}

TEST(Case3, InfeasibleIsNullopt) {
  auto aux = aux_of(Election::from_strings({"10", "01"}, 1), {0, 1}, 1);
  aux.k_prime = 3;
  EXPECT_FALSE(solve_aux_case3(aux, derive_params(0.9, 2, 0)));
}

TEST(Case3, SeededAndNeverBelowTheIntegerOptimum) {
  Rng rng(31);
  int checked = 0;
  while (checked < 100) {
    const auto aux = random_aux(rng, 12);
    if (!aux) continue;
    const auto params = derive_params(0.9, aux->n(), 17, 8);
    const auto a = solve_aux_case3(*aux, params, 5);
    const auto b = solve_aux_case3(*aux, params, 5);
    const auto ref = aux_ip_bruteforce(*aux);
    ASSERT_TRUE(a && b && ref);
    EXPECT_EQ(a->s_prime, b->s_prime);
    EXPECT_EQ(a->s_prime.ones_count(), aux->k_prime);
    EXPECT_EQ(a->q, aux->evaluate(a->s_prime));
    EXPECT_GE(a->q, ref->q);
    EXPECT_LE(*a->lp_value, static_cast<double>(ref->q) + 1e-9);
    ++checked;
  }
}

TEST(SolveAux, DeskScalePicksCase1) {
  const auto aux = aux_of(Election::from_strings({"1100", "1010", "1001"}, 2), {0, 1, 2}, 1);
  const auto r = solve_aux(aux, derive_params(0.9, 3, 0));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->case_used, AuxCase::exhaustive_beta);
  EXPECT_FALSE(r->budget_fallback);
}

TEST(SolveAux, ForcedCasesAgreeOrAreWorse) {
  Rng rng(99);
  int checked = 0;
  while (checked < 100) {
    const auto aux = random_aux(rng, 12);
    if (!aux) continue;
    const auto params = derive_params(0.9, aux->n(), 3);
    const auto c1 = solve_aux(*aux, params, 1);
    const auto c2 = solve_aux(*aux, params, 2);
    const auto c3 = solve_aux(*aux, params, 3);
    ASSERT_TRUE(c1 && c2 && c3);
    EXPECT_EQ(c2->case_used, AuxCase::exhaustive_k);
    EXPECT_EQ(c3->case_used, AuxCase::lp_rounding);
    EXPECT_EQ(c2->q, c1->q);
    EXPECT_GE(c3->q, c1->q);
    ++checked;
  }
  const auto aux = aux_of(Election::from_strings({"10", "01"}, 1), {0, 1}, 1);
  EXPECT_THROW(solve_aux(aux, derive_params(0.9, 2, 0), 4), InputError);
}

TEST(SolveAux, OverBudgetAutoDispatchFallsThrough) {
  const auto aux = aux_of(Election::from_strings({"101010", "010101"}, 3), {0, 1}, 3);
  const auto params = derive_params(0.9, 2, 0);
  Budgets b;
  b.case1_max_beta = 4;
  const auto r2 = solve_aux(aux, params, 0, b);
  ASSERT_TRUE(r2);
  EXPECT_EQ(r2->case_used, AuxCase::exhaustive_k);
  EXPECT_TRUE(r2->budget_fallback);

  b.case2_max_combinations = 10;
  const auto r3 = solve_aux(aux, params, 0, b);
  ASSERT_TRUE(r3);
  EXPECT_EQ(r3->case_used, AuxCase::lp_rounding);
  EXPECT_TRUE(r3->budget_fallback);

  EXPECT_THROW(solve_aux(aux, params, 1, b), BudgetExceeded);
}

TEST(PtasSolve, TwoVoters) {
  const auto r = ptas_solve(Election::from_strings({"10", "01"}, 1), 0.9, 0);
  EXPECT_EQ(r.objective, 2u);
  EXPECT_EQ(r.committee.size(), 1u);
}

TEST(PtasSolve, ThreeVotersMatchesExactTieBreak) {
  const auto r = ptas_solve(Election::from_strings({"1100", "1010", "1001"}, 2), 0.9, 0);
  EXPECT_EQ(r.objective, 2u);
  EXPECT_EQ(r.committee.to_string(), "1001");
  EXPECT_EQ(r.diagnostics.subset_size, 3u);
  EXPECT_EQ(r.diagnostics.subsets_examined, 1u);
  EXPECT_EQ(r.diagnostics.pairs_considered, 3u);
}

TEST(PtasSolve, PadsWhenVotersDoNotExceedK) {
  const auto e = Election::from_strings({"0110"}, 2);
  const auto r = ptas_solve(e, 0.9, 0);
  EXPECT_EQ(r.objective, 0u);
  EXPECT_EQ(r.committee.to_string(), "0110");
}

TEST(PtasSolve, RatioFeasibilityAndDeterminism) {
  Rng rng(555);
  for (int trial = 0; trial < 200; ++trial) {
    const auto e = trial % 2 ? testing::planted_instance(rng, 2, 8, 3, 10, 1, 5)
                             : testing::random_instance(rng, 2, 8, 3, 10, 1, 5);
    const auto opt = exact_opt(e);
    const std::uint64_t seed = rng.next();
    const auto r = ptas_solve(e, 0.9, seed);
    EXPECT_EQ(r.committee.vector.ones_count(), e.k());
    EXPECT_EQ(r.objective, objective(r.committee, e));
    EXPECT_LE(static_cast<double>(r.objective), 1.9 * static_cast<double>(opt.opt_value));
    if (trial % 10 == 0) {
      PtasConfig threaded;
      threaded.threads = 4;
      const auto again = ptas_solve(e, 0.9, seed, threaded);
      EXPECT_EQ(again.committee, r.committee);
      EXPECT_EQ(again.objective, r.objective);
      EXPECT_EQ(again.diagnostics.pairs_solved, r.diagnostics.pairs_solved);
    }
  }
}

TEST(PtasSolve, ForcedCasesStillFeasible) {
  Rng rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const auto e = testing::random_instance(rng, 2, 6, 3, 9, 0, 5);
    for (int force = 1; force <= 3; ++force) {
      PtasConfig config;
      config.force_case = force;
      const auto r = ptas_solve(e, 0.9, 1, config);
      EXPECT_EQ(r.committee.vector.ones_count(), e.k());
      EXPECT_EQ(r.objective, objective(r.committee, e));
      EXPECT_EQ(r.diagnostics.case_counts[static_cast<std::size_t>(force - 1)], r.diagnostics.pairs_solved);
    }
  }
}

TEST(PtasSolve, RunningBestNeverIncreases) {
  const auto e = Election::from_strings({"110010", "011001", "101100", "000111", "111000"}, 3);
  std::vector<CandidateEvent> events;
  PtasConfig config;
  config.on_candidate = [&](const CandidateEvent& ev) { events.push_back(ev); };
  const auto r = ptas_solve(e, 0.9, 0, config);
  ASSERT_FALSE(events.empty());
  EXPECT_EQ(events.size(), r.diagnostics.pairs_solved);
  for (std::size_t i = 1; i < events.size(); ++i) EXPECT_LE(events[i].best_objective, events[i - 1].best_objective);
  EXPECT_EQ(events.back().best_objective, r.objective);
}

TEST(PtasSolve, SubsetBudget) {
  PtasConfig config;
  config.budgets.max_subsets = 10;
  // n = 12 > R = 7: C(12, 7) = 792 subsets.
  std::vector<std::string> rows(12, "1010");
  EXPECT_THROW(ptas_solve(Election::from_strings(rows, 2), 0.9, 0, config), BudgetExceeded);
  EXPECT_THROW(ptas_solve(Election::from_strings({"10"}, 1), 1.0, 0), InputError);
}

}  // namespace
}  // namespace mav
