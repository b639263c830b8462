// mav: minimax approval voting solvers from the command line.
//
//   mav solve --input FILE [--algorithm exact|minisum|kcompletion|ptas] ...
//   mav gen   --n N --m M --k K --radius D --seed S [--out FILE]
//   mav bench --count C --n-range A:B --m-range A:B --k-mode MODE ...
//   mav lp    --input FILE --subset I,J,... --k-prime K
//
// Exit codes: 0 success, 2 usage or parse error, 3 budget exceeded,
// 1 solver failure.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "mav/aux_lp.hpp"
#include "mav/cli.hpp"
#include "mav/io.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitSolver = 1;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mav::InputError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

mav::Election load_election(const std::string& path) {
  try {
    return mav::parse_election(read_file(path));
  } catch (const mav::ParseError& e) {
    throw mav::InputError(path + ":" + e.what());
  }
}

int parse_force_case(const std::string& value) {
  if (value == "auto") return 0;
  if (value == "1" || value == "2" || value == "3") return value[0] - '0';
  throw mav::InputError("--force-case must be 1, 2, 3 or auto");
}

mav::cli::OracleMode parse_oracle(const std::string& value) {
  if (value == "on") return mav::cli::OracleMode::on;
  if (value == "off") return mav::cli::OracleMode::off;
  if (value == "auto") return mav::cli::OracleMode::automatic;
  throw mav::InputError("--oracle must be on, off or auto");
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto r = mav::cli::parse_range(item);
    if (r.lo != r.hi) throw mav::InputError("--subset takes single indices");
    if (r.lo == 0) throw mav::InputError("--subset indices are 1-based");
    out.push_back(r.lo - 1);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimax approval voting: exact, baseline and approximation-scheme solvers"};
  app.require_subcommand(1);

  std::string format = "text";
  unsigned threads = 1;
  bool timing = false;

  // solve
  auto* solve = app.add_subcommand("solve", "Solve one ballot file");
  std::string input;
  std::string algorithm = "ptas";
  double epsilon = 0.9;
  std::uint64_t seed = 0;
  std::string force_case = "auto";
  std::string oracle = "auto";
  solve->add_option("--input", input, "Ballot file")->required();
  solve->add_option("--algorithm", algorithm, "exact | minisum | kcompletion | ptas")
      ->check(CLI::IsMember({"exact", "minisum", "kcompletion", "ptas"}));
  solve->add_option("--epsilon", epsilon, "Approximation slack in (0,1) for ptas");
  solve->add_option("--seed", seed, "Seed for ptas rounding");
  solve->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  solve->add_option("--force-case", force_case, "1 | 2 | 3 | auto");
  solve->add_option("--oracle", oracle, "on | off | auto (run exact search for the ratio)");
  solve->add_option("--threads", threads, "Worker threads for ptas and the oracle");
  solve->add_flag("--timing", timing, "Include elapsed_ms in json output");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a planted instance");
  std::size_t gen_n = 0, gen_m = 0, gen_k = 0, gen_radius = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Ballots")->required();
  gen->add_option("--m", gen_m, "Candidates")->required();
  gen->add_option("--k", gen_k, "Committee size")->required();
  gen->add_option("--radius", gen_radius, "Distance of every ballot from the planted committee")->required();
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "Sweep random instances and compare against the oracle");
  mav::cli::BenchOptions bench_opts;
  bench_opts.format = mav::cli::Format::json;
  std::string n_range = "2:8", m_range = "3:10", instances = "mixed";
  std::string algorithms = "kcompletion,ptas";
  std::string bench_format = "json";
  std::string bench_force = "auto";
  bench->add_option("--count", bench_opts.count, "Number of instances");
  bench->add_option("--n-range", n_range, "Ballot count range A:B");
  bench->add_option("--m-range", m_range, "Candidate count range A:B");
  bench->add_option("--k-mode", bench_opts.k_mode, "half | range:A:B | fixed integer");
  bench->add_option("--instances", instances, "random | planted | mixed")
      ->check(CLI::IsMember({"random", "planted", "mixed"}));
  bench->add_option("--algorithms", algorithms, "Comma-separated algorithm list");
  bench->add_option("--epsilon", bench_opts.epsilon, "Approximation slack for ptas");
  bench->add_option("--seed", bench_opts.seed, "Sweep seed");
  bench->add_option("--force-case", bench_force, "1 | 2 | 3 | auto");
  bench->add_option("--threads", bench_opts.threads, "Worker threads");
  bench->add_option("--format", bench_format, "text | json")->check(CLI::IsMember({"text", "json"}));
  bench->add_flag("--timing", bench_opts.timing, "Include elapsed_ms in json output");

  // lp
  auto* lp_cmd = app.add_subcommand("lp", "Print the auxiliary LP for a vote subset and k'");
  std::string lp_input, lp_subset;
  std::size_t lp_k_prime = 0;
  lp_cmd->add_option("--input", lp_input, "Ballot file")->required();
  lp_cmd->add_option("--subset", lp_subset, "1-based ballot indices, comma separated")->required();
  lp_cmd->add_option("--k-prime", lp_k_prime, "Ones in the star part")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const mav::Budgets budgets = mav::Budgets::from_env();

    if (*solve) {
      const mav::Election election = load_election(input);
      mav::cli::SolveOptions opts;
      opts.algorithm = mav::cli::parse_algorithm(algorithm);
      opts.epsilon = epsilon;
      opts.seed = seed;
      opts.force_case = parse_force_case(force_case);
      opts.oracle = parse_oracle(oracle);
      opts.threads = threads;
      opts.budgets = budgets;
      const auto report = mav::cli::run_solve(election, opts);
      if (format == "json") {
        std::cout << report.to_json(timing).dump() << "\n";
      } else {
        std::cout << report.to_text();
      }
    } else if (*gen) {
      const auto inst = mav::generate_instance(gen_n, gen_m, gen_k, gen_radius, gen_seed);
      const std::string text = "# planted " + inst.planted.to_string() + " radius " + std::to_string(gen_radius) +
                               " seed " + std::to_string(gen_seed) + "\n" + mav::render_election(inst.election);
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(gen_out, std::ios::binary);
        if (!out) throw mav::InputError("cannot write '" + gen_out + "'");
        out << text;
      }
    } else if (*bench) {
      bench_opts.n_range = mav::cli::parse_range(n_range);
      bench_opts.m_range = mav::cli::parse_range(m_range);
      bench_opts.kind = mav::cli::parse_instance_kind(instances);
      bench_opts.algorithms.clear();
      std::stringstream ss(algorithms);
      std::string item;
      while (std::getline(ss, item, ',')) bench_opts.algorithms.push_back(mav::cli::parse_algorithm(item));
      bench_opts.force_case = parse_force_case(bench_force);
      bench_opts.format = bench_format == "json" ? mav::cli::Format::json : mav::cli::Format::text;
      bench_opts.budgets = budgets;
      mav::cli::run_bench(bench_opts, std::cout);
    } else if (*lp_cmd) {
      const mav::Election election = load_election(lp_input);
      const auto built = mav::build_aux(election, parse_index_list(lp_subset), lp_k_prime);
      if (const auto* reason = std::get_if<mav::SkipReason>(&built)) {
        std::cout << "skip " << mav::to_string(*reason) << "\n";
      } else {
        std::cout << mav::build_aux_lp(std::get<mav::AuxProblem>(built)).to_text();
      }
    }
  } catch (const mav::BudgetExceeded& e) {
    std::cerr << "mav: budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const mav::InputError& e) {
    std::cerr << "mav: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "mav: " << e.what() << "\n";
    return kExitSolver;
  }
  return 0;
}
