#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mare/error.hpp"
#include "mare/generators.hpp"

namespace mare::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;       // bad flags, unreadable or malformed input
inline constexpr int kExitNotRegular = 2;  // K is not a (regular) M-matrix
inline constexpr int kExitFailure = 3;     // solver failure, generation failure

inline constexpr double kFallbackTol = 1e-12;

/// Default tolerance: MARE_DEFAULT_TOL when set and a positive number, else 1e-12.
double default_tolerance();

int exit_code_for(ErrorCode code) noexcept;

struct SolveArgs {
  std::filesystem::path input;
  std::string method = "doubling";
  std::optional<double> tol;
  std::optional<std::size_t> max_iter;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma;
  bool machine = false;
};

struct AnalyzeArgs {
  std::filesystem::path input;
  std::string method = "doubling";
  std::optional<double> tol;
  bool no_solve = false;
  bool machine = false;
};

struct CompareArgs {
  std::filesystem::path input;
  std::vector<std::string> methods;
  std::optional<double> tol;
  std::optional<std::size_t> max_iter;
  bool machine = false;
};

struct HuntArgs {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  /// Upper bound for n and m; each trial draws both from [1, size].
  std::size_t size = 4;
  std::optional<std::filesystem::path> out;
  std::size_t threads = 1;
  bool critical = false;
  std::string method = "doubling";
  bool machine = false;
};

struct GenArgs {
  GenSpec spec;
  std::optional<std::filesystem::path> out;
};

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err);
int cmd_compare(const CompareArgs& args, std::ostream& out, std::ostream& err);
int cmd_hunt(const HuntArgs& args, std::ostream& out, std::ostream& err);
int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mare::cli
