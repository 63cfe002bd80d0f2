#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#include "CLI11.hpp"

namespace mare::cli {

double default_tolerance() {
  const char* env = std::getenv("MARE_DEFAULT_TOL");
  if (env == nullptr) return kFallbackTol;
  double value = 0.0;
  const char* end = env + std::strlen(env);
  auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc{} || ptr != end || !(value > 0.0)) return kFallbackTol;
  return value;
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::BadDimensions:
      return kExitUsage;
    case ErrorCode::NotZ:
    case ErrorCode::NotMMatrix:
    case ErrorCode::NotRegular:
      return kExitNotRegular;
    default:
      return kExitFailure;
  }
}

namespace {

const std::vector<std::string> kMethodNames{"fixed_point", "newton", "doubling", "schur", "modified_schur"};

void add_method_option(CLI::App* cmd, std::string& target) {
  cmd->add_option("--method", target, "fixed_point, newton, doubling or schur")
      ->check(CLI::IsMember(kMethodNames))
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal nonnegative solutions of M-matrix algebraic Riccati equations"};
  app.name("mare");
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve the equation encoded by a matrix file");
  solve_cmd->add_option("input", solve.input, "Matrix file")->required();
  add_method_option(solve_cmd, solve.method);
  solve_cmd->add_option("--tol", solve.tol, "Relative residual tolerance")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--max-iter", solve.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--alpha", solve.alpha, "Doubling parameter for the A block");
  solve_cmd->add_option("--beta", solve.beta, "Doubling parameter for the D block");
  solve_cmd->add_option("--gamma", solve.gamma, "Single doubling parameter (alpha = beta = gamma)");
  solve_cmd->add_flag("--machine", solve.machine, "Flat key=value output");

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Categorize K and report structure, case and properties");
  analyze_cmd->add_option("input", analyze.input, "Matrix file")->required();
  add_method_option(analyze_cmd, analyze.method);
  analyze_cmd->add_option("--tol", analyze.tol, "Relative residual tolerance")->check(CLI::PositiveNumber);
  analyze_cmd->add_flag("--no-solve", analyze.no_solve, "Structure only; skip the solve and property checks");
  analyze_cmd->add_flag("--machine", analyze.machine, "Flat key=value output");

  CompareArgs compare;
  auto* compare_cmd = app.add_subcommand("compare", "Run several methods and compare their solutions");
  compare_cmd->add_option("input", compare.input, "Matrix file")->required();
  compare_cmd->add_option("--methods", compare.methods, "At least two methods")
      ->required()
      ->delimiter(',')
      ->check(CLI::IsMember(kMethodNames));
  compare_cmd->add_option("--tol", compare.tol, "Relative residual tolerance")->check(CLI::PositiveNumber);
  compare_cmd->add_option("--max-iter", compare.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
  compare_cmd->add_flag("--machine", compare.machine, "Flat key=value output");

  HuntArgs hunt;
  auto* hunt_cmd = app.add_subcommand("hunt", "Search random singular problems for rho(Phi Psi) >= 1");
  hunt_cmd->add_option("--trials", hunt.trials, "Number of trials")->check(CLI::PositiveNumber)->capture_default_str();
  hunt_cmd->add_option("--seed", hunt.seed, "Base seed; trial i uses seed + i")->capture_default_str();
  hunt_cmd->add_option("--size", hunt.size, "Largest n and m")->check(CLI::PositiveNumber)->capture_default_str();
  hunt_cmd->add_option("--out", hunt.out, "Directory for candidate files");
  hunt_cmd->add_option("--threads", hunt.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  hunt_cmd->add_flag("--critical", hunt.critical, "Generate critical problems instead (every trial is skipped)");
  add_method_option(hunt_cmd, hunt.method);
  hunt_cmd->add_flag("--machine", hunt.machine, "Flat key=value output");

  GenArgs gen;
  std::string category = "nonsingular";
  std::vector<std::size_t> closed;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random matrix file");
  gen_cmd->add_option("--category", category, "nonsingular, irreducible_singular or reducible_singular_regular")
      ->check(CLI::IsMember({"nonsingular", "irreducible_singular", "reducible_singular_regular"}))
      ->capture_default_str();
  gen_cmd->add_option("--n", gen.spec.n, "Size of the D block")->check(CLI::PositiveNumber)->capture_default_str();
  gen_cmd->add_option("--m", gen.spec.m, "Size of the A block")->check(CLI::PositiveNumber)->capture_default_str();
  gen_cmd->add_option("--seed", gen.spec.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_flag("--zero-row-sums,!--no-zero-row-sums", gen.spec.zero_row_sums, "Keep K e = 0 (default on)");
  gen_cmd->add_option("--closed-class", closed, "Indices of the closed class")->delimiter(',');
  gen_cmd->add_flag("--critical", gen.spec.critical, "Require a zero gap");
  gen_cmd->add_flag("--nonzero-gap", gen.spec.nonzero_gap, "Require a nonzero gap");
  gen_cmd->add_option("--density", gen.spec.density, "Off-diagonal fill probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output path (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*solve_cmd) return cmd_solve(solve, out, err);
  if (*analyze_cmd) return cmd_analyze(analyze, out, err);
  if (*compare_cmd) {
    if (compare.methods.size() < 2) {
      err << "compare: --methods needs at least two methods\n";
      return kExitUsage;
    }
    return cmd_compare(compare, out, err);
  }
  if (*hunt_cmd) return cmd_hunt(hunt, out, err);
  if (*gen_cmd) {
    gen.spec.category = *parse_category(category);
    if (!closed.empty()) gen.spec.closed_class = closed;
    if (gen.spec.critical && gen.spec.nonzero_gap) {
      err << "gen: --critical and --nonzero-gap are exclusive\n";
      return kExitUsage;
    }
    return cmd_gen(gen, out, err);
  }
  return kExitUsage;
}

}  // namespace mare::cli
