#include <gtest/gtest.h>

#include "support/properties.hpp"

namespace mav::testing {
namespace {

TEST(InaProperties, MonotoneAlongChains) {
  const auto run = check_monotone_chains(1, 150);
  EXPECT_EQ(run.violations, 0u) << run.first_counterexample;
}

TEST(InaProperties, Supermodular) {
  const auto run = check_supermodularity(2, 300);
  EXPECT_EQ(run.violations, 0u) << run.first_counterexample;
}

TEST(InaProperties, GreedyStableSubset) {
  const auto run = check_stable_subsets(3, 150);
  EXPECT_EQ(run.violations, 0u) << run.first_counterexample;
}

TEST(PatternProperties, StarsBoundedBySubsetTimesOpt) {
  const auto run = check_star_bound(4, 300);
  EXPECT_EQ(run.violations, 0u) << run.first_counterexample;
}

TEST(PatternProperties, NoStarCompletionStaysClose) {
  const auto run = check_nostar_completion(5, 200);
  EXPECT_EQ(run.violations, 0u) << run.first_counterexample;
}

}  // namespace
}  // namespace mav::testing
