#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "mav/cli.hpp"
#include "mav/io.hpp"
#include "mav/oracle.hpp"
#include "support/oracles.hpp"

namespace mav {
namespace {

std::size_t error_line(const std::string& text) {
  try {
    parse_election(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return 0;
}

TEST(ParseElection, Basic) {
  const auto e = parse_election("2 4 2\n1100\n0011\n");
  EXPECT_EQ(e.n(), 2u);
  EXPECT_EQ(e.m(), 4u);
  EXPECT_EQ(e.k(), 2u);
  EXPECT_EQ(e.ballot(1).to_string(), "0011");
}

TEST(ParseElection, CommentsBlankLinesAndCarriageReturns) {
  const auto e = parse_election("# c\n1 3 1\n101\n");
  EXPECT_EQ(e.ballot(0).to_string(), "101");
  const auto f = parse_election("\n# header next\r\n2 2 1\r\n\n10  \r\n# mid\n01");
  EXPECT_EQ(f, Election::from_strings({"10", "01"}, 1));
}

TEST(ParseElection, NoPaddingApplied) {
  const auto e = parse_election("1 3 2\n110\n");
  EXPECT_EQ(e.n(), 1u);
}

TEST(ParseElection, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("2 4 5\n1100\n0011\n"), 1u);
  EXPECT_EQ(error_line("# x\n2 4\n1100\n0011\n"), 2u);
  EXPECT_EQ(error_line("2 4 2\n1100\n001\n"), 3u);
  EXPECT_EQ(error_line("2 4 2\n1100\n0021\n"), 3u);
  EXPECT_EQ(error_line("2 4 2\n1100\n0011\n1111\n"), 4u);
  EXPECT_EQ(error_line("0 4 2\n"), 1u);
  EXPECT_EQ(error_line("2 4 -1\n1100\n0011\n"), 1u);
  EXPECT_EQ(error_line("2 4 2 9\n1100\n0011\n"), 1u);
  EXPECT_GT(error_line("3 4 2\n1100\n0011\n"), 0u);
  EXPECT_GT(error_line("# only comments\n"), 0u);
  EXPECT_THROW(parse_election(""), InputError);
}

TEST(ParseElection, RenderRoundTrip) {
  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto e = testing::random_instance(rng, 1, 9, 1, 70, 0, 70);
    EXPECT_EQ(parse_election(render_election(e)), e);
  }
}

TEST(GenerateInstance, ZeroRadiusIsUnanimous) {
  const auto g = generate_instance(5, 8, 3, 0, 42);
  for (const auto& b : g.election.ballots()) EXPECT_EQ(b, g.planted.vector);
  EXPECT_EQ(exact_opt(g.election).opt_value, 0u);
}

TEST(GenerateInstance, PlantedRadiusBoundsOpt) {
  const auto g = generate_instance(6, 10, 4, 2, 1);
  EXPECT_EQ(g.planted.vector.ones_count(), 4u);
  for (const auto& b : g.election.ballots()) EXPECT_EQ(hamming(b, g.planted.vector), 2u);
  EXPECT_LE(exact_opt(g.election).opt_value, 2u);
}

TEST(GenerateInstance, DeterministicPerSeed) {
  EXPECT_EQ(generate_instance(6, 10, 4, 3, 9).election, generate_instance(6, 10, 4, 3, 9).election);
  EXPECT_NE(generate_instance(6, 10, 4, 3, 9).election, generate_instance(6, 10, 4, 3, 10).election);
  EXPECT_EQ(random_election(4, 12, 5, 3), random_election(4, 12, 5, 3));
  EXPECT_THROW(generate_instance(2, 4, 5, 1, 0), InputError);
  EXPECT_THROW(generate_instance(2, 4, 2, 5, 0), InputError);
}

TEST(RunSolve, Examples) {
  const auto two = Election::from_strings({"10", "01"}, 1);
  cli::SolveOptions exact;
  exact.algorithm = cli::Algorithm::exact;
  EXPECT_EQ(cli::run_solve(two, exact).objective, 2u);

  cli::SolveOptions ptas;
  ptas.algorithm = cli::Algorithm::ptas;
  ptas.epsilon = 0.9;
  ptas.seed = 7;
  const auto r = cli::run_solve(two, ptas);
  EXPECT_EQ(r.objective, 2u);
  ASSERT_TRUE(r.ratio());
  EXPECT_DOUBLE_EQ(*r.ratio(), 1.0);

  cli::SolveOptions minisum;
  minisum.algorithm = cli::Algorithm::minisum;
  EXPECT_EQ(cli::run_solve(Election::from_strings({"110", "101", "100"}, 1), minisum).committee, "100");
}

TEST(RunSolve, JsonSchemaIsFixed) {
  cli::SolveOptions opts;
  const auto j = cli::run_solve(Election::from_strings({"1100", "1010", "1001"}, 2), opts).to_json(false);
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"record", "instance", "algorithm", "n", "m", "k", "committee", "objective",
                                            "opt", "ratio", "epsilon", "seed", "elapsed_ms", "diagnostics"}));
  EXPECT_TRUE(j["elapsed_ms"].is_null());
  EXPECT_EQ(j["committee"], "1001");
  EXPECT_EQ(j["diagnostics"]["R"], 7);
  EXPECT_EQ(j.dump().find('\n'), std::string::npos);
}

TEST(RunSolve, OracleModes) {
  const auto e = Election::from_strings({"1100", "1010", "1001"}, 2);
  cli::SolveOptions opts;
  opts.algorithm = cli::Algorithm::kcompletion;
  opts.oracle = cli::OracleMode::off;
  EXPECT_FALSE(cli::run_solve(e, opts).opt);
  opts.oracle = cli::OracleMode::automatic;
  EXPECT_TRUE(cli::run_solve(e, opts).opt);
  opts.budgets.oracle_max_candidates = 3;
  EXPECT_FALSE(cli::run_solve(e, opts).opt);
  opts.oracle = cli::OracleMode::on;
  EXPECT_THROW(cli::run_solve(e, opts), BudgetExceeded);
}

TEST(ParseRange, Forms) {
  EXPECT_EQ(cli::parse_range("2:8").lo, 2u);
  EXPECT_EQ(cli::parse_range("2:8").hi, 8u);
  EXPECT_EQ(cli::parse_range("5").hi, 5u);
  EXPECT_THROW(cli::parse_range("8:2"), InputError);
  EXPECT_THROW(cli::parse_range("a:2"), InputError);
  EXPECT_THROW(cli::parse_range(":2"), InputError);
}

TEST(Bench, EmptySweepIsSummaryOnly) {
  cli::BenchOptions opts;
  opts.count = 0;
  std::ostringstream out;
  EXPECT_EQ(cli::run_bench(opts, out), 0u);
  const std::string text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
  EXPECT_EQ(cli::Json::parse(text)["record"], "summary");
}

TEST(Bench, ByteIdenticalAcrossRunsAndThreads) {
  cli::BenchOptions opts;
  opts.count = 8;
  opts.seed = 3;
  std::ostringstream a, b, c;
  cli::run_bench(opts, a);
  cli::run_bench(opts, b);
  opts.threads = 4;
  cli::run_bench(opts, c);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str(), c.str());
}

TEST(Bench, FiftyInstancesStayWithinRatioBounds) {
  cli::BenchOptions opts;
  opts.count = 50;
  opts.seed = 11;
  std::ostringstream out;
  EXPECT_EQ(cli::run_bench(opts, out), 0u);
  std::istringstream lines(out.str());
  std::string line, last;
  std::size_t runs = 0;
  while (std::getline(lines, line)) {
    const auto j = cli::Json::parse(line);
    if (j["record"] == "run") {
      ++runs;
      EXPECT_EQ(j["committee"].get<std::string>().size(), j["m"].get<std::size_t>());
    }
    last = line;
  }
  EXPECT_EQ(runs, 100u);
  const auto summary = cli::Json::parse(last);
  EXPECT_LE(summary["algorithms"]["kcompletion"]["max_ratio"].get<double>(), 3.0);
  EXPECT_LE(summary["algorithms"]["ptas"]["max_ratio"].get<double>(), 1.9);
  EXPECT_EQ(summary["algorithms"]["ptas"]["violations"], 0);
}

TEST(Bench, RejectsOracleOverBudget) {
  cli::BenchOptions opts;
  opts.m_range = {3, 25};
  std::ostringstream out;
  EXPECT_THROW(cli::run_bench(opts, out), BudgetExceeded);
}

}  // namespace
}  // namespace mav
