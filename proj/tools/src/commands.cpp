#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "cli.hpp"
#include "mare/analysis.hpp"
#include "mare/linalg.hpp"
#include "mare/matrix_file.hpp"
#include "mare/mmatrix.hpp"
#include "mare/riccati.hpp"
#include "mare/solvers.hpp"
#include "report.hpp"

namespace mare::cli {

namespace {

constexpr double kCompareLimit = 1e-6;

Problem load_problem(const std::filesystem::path& input) {
  const MatrixFile file = read_matrix_file(input);
  return from_k(file.k, file.n);
}

SolverOptions make_options(std::string_view method, std::optional<double> tol, std::optional<std::size_t> max_iter) {
  const auto parsed = parse_method(method);
  if (!parsed) throw Error(ErrorCode::InvalidArgument, "unknown method " + std::string(method));
  SolverOptions opts;
  opts.method = *parsed;
  opts.tol = tol.value_or(default_tolerance());
  opts.max_iter = max_iter;
  return opts;
}

// Prints the failure and returns its exit code. `body` carries whatever was
// computed before the failure and is rendered after the status keys.
int report_error(const Error& e, bool machine, std::ostream& out, std::ostream& err, const Report* body = nullptr) {
  std::string message = e.what();
  if (e.code() == ErrorCode::NotRegular) message += " (a regular M-matrix K is required)";
  err << "mare: " << message << '\n';
  if (machine) {
    Report head;
    head.text("status", "error");
    head.text("error.code", std::string(to_string(e.code())));
    head.text("error.message", message);
    if (const auto* failure = dynamic_cast<const SolverFailure*>(&e)) {
      head.count("log.iterations", failure->log().iterations);
      if (!failure->log().residual_history.empty())
        head.number("log.final_residual", failure->log().residual_history.back());
    }
    head.render(out, true);
    if (body) body->render(out, true);
  } else if (body) {
    body->render(out, false);
  }
  return exit_code_for(e.code());
}

void add_kind(Report& rep, const MatrixKind& kind) {
  rep.section("categorization");
  rep.flag("kind.is_z", kind.is_z);
  rep.flag("kind.is_m", kind.is_m);
  rep.flag("kind.singular", kind.singular);
  rep.flag("kind.irreducible", kind.irreducible);
  rep.flag("kind.regular", kind.regular);
  rep.count("kind.null_rank", kind.null_rank);
  rep.number("kind.spectral_gap", kind.spectral_gap);
  if (kind.certificate) rep.vector("kind.certificate", *kind.certificate);
}

void add_log(Report& rep, const std::string& prefix, const ConvergenceLog& log) {
  rep.text(prefix + ".method", std::string(to_string(log.method)));
  rep.count(prefix + ".iterations", log.iterations);
  rep.number(prefix + ".final_residual",
             log.residual_history.empty() ? std::numeric_limits<double>::quiet_NaN() : log.residual_history.back());
  rep.number(prefix + ".rate_estimate", log.rate_estimate);
  rep.number(prefix + ".alpha", log.alpha);
  rep.number(prefix + ".beta", log.beta);
  rep.number(prefix + ".rate_bound", log.rate_bound);
  rep.number(prefix + ".condition", log.condition);
  rep.flag(prefix + ".shift_retry", log.shift_retry);
  rep.text(prefix + ".note", log.note);
}

void add_solution(Report& rep, const Problem& p, const Solution& sol, bool closed_loop) {
  rep.section("solution");
  rep.matrix("phi", sol.phi);
  if (sol.psi) rep.matrix("psi", *sol.psi);
  if (closed_loop) {
    rep.matrix("r", sol.r);
    if (sol.s) rep.matrix("s", *sol.s);
  }
  rep.section("residuals");
  rep.number("residual.phi", sol.residual_phi);
  rep.number("residual.phi_relative", relative_residual(p, sol.phi));
  if (sol.psi) {
    rep.number("residual.psi", sol.residual_psi);
    rep.number("residual.psi_relative", relative_residual(dual(p), *sol.psi));
  } else {
    rep.text("residual.psi_error", sol.diagnostics.dual_error);
  }
  rep.number("rho_phi_psi", sol.diagnostics.rho_phi_psi);
  rep.number("margin", 1.0 - sol.diagnostics.rho_phi_psi);
  rep.flag("factorization.ok", sol.diagnostics.factorization.ok);
  rep.number("factorization.defect", sol.diagnostics.factorization.defect);
  rep.count("reduction.r", sol.diagnostics.reduced_rows);
  rep.section("convergence");
  add_log(rep, "log", sol.log);
  if (sol.dual_log) add_log(rep, "dual_log", *sol.dual_log);
}

}  // namespace

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  Report rep;
  try {
    const Problem p = load_problem(args.input);
    SolverOptions opts = make_options(args.method, args.tol, args.max_iter);
    opts.alpha = args.alpha;
    opts.beta = args.beta;
    opts.gamma = args.gamma;
    const Solution sol = solve(p, opts);

    rep.text("status", "ok");
    rep.text("method", args.method);
    rep.count("n", p.n());
    rep.count("m", p.m());
    add_kind(rep, sol.diagnostics.kind);
    rep.section("spectrum");
    rep.text("case", std::string(to_string(sol.diagnostics.case_label)));
    auto lambdas = eigenvalues(h_matrix(p));
    sort_eigenvalues(lambdas);
    rep.eigenvalues("eig", lambdas);
    add_solution(rep, p, sol, true);
  } catch (const Error& e) {
    return report_error(e, args.machine, out, err);
  }
  rep.render(out, args.machine);
  return kExitOk;
}

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err) {
  Report rep;
  try {
    const Problem p = load_problem(args.input);
    const MatrixKind kind = categorize(k_matrix(p));
    rep.count("n", p.n());
    rep.count("m", p.m());
    add_kind(rep, kind);
    if (!kind.is_m) throw Error(ErrorCode::NotMMatrix, "K is not an M-matrix");
    if (!kind.regular) throw Error(ErrorCode::NotRegular, "K is not a regular M-matrix: no v > 0 with K v >= 0");

    const EigenStructure es = zero_eigen_structure(p);
    rep.section("eigen structure");
    rep.text("case", std::string(to_string(classify_case(p, kind))));
    rep.count("m1", es.m1);
    rep.count("n1", es.n1);
    rep.count("r", es.r);
    rep.count("eigvec_count", es.eigvec_count);
    rep.eigenvalues("eig", es.lambdas);

    std::optional<NullData> nd;
    if (kind.singular) {
      rep.section("null vectors");
      try {
        nd = null_data(k_matrix(p), p.n());
        rep.number("null.gap", nd->gap);
        rep.number("null.scale", nd->scale);
        rep.vector("null.u1", nd->u1);
        rep.vector("null.u2", nd->u2);
        rep.vector("null.v1", nd->v1);
        rep.vector("null.v2", nd->v2);
      } catch (const Error& e) {
        rep.text("null.error", e.what());
      }
    }

    if (!args.no_solve) {
      const Solution sol = solve(p, make_options(args.method, args.tol, std::nullopt));
      add_solution(rep, p, sol, false);
      if (sol.psi && kind.certificate) {
        rep.section("properties");
        const PropertyReport props = verify_properties(p, sol, *kind.certificate, nd);
        rep.flag("prop.all_pass", props.all_pass());
        for (const auto& c : props.checks) {
          rep.flag("prop." + c.name + ".pass", c.pass);
          rep.number("prop." + c.name + ".margin", c.margin);
        }
      }
      rep.section("probe");
      const ProbeResult probe = conjecture_probe(p, sol);
      rep.flag("probe.skipped", probe.skipped);
      if (probe.skipped) {
        rep.text("probe.reason", probe.reason);
      } else {
        rep.number("probe.rho", probe.rho);
        rep.number("probe.margin", probe.margin);
        rep.flag("probe.candidate", probe.candidate);
      }
    }
  } catch (const Error& e) {
    return report_error(e, args.machine, out, err, &rep);
  }
  if (args.machine) out << "status=ok\n";
  rep.render(out, args.machine);
  return kExitOk;
}

int cmd_compare(const CompareArgs& args, std::ostream& out, std::ostream& err) {
  Report rep;
  std::vector<std::pair<std::string, Matrix>> results;
  try {
    const Problem p = load_problem(args.input);
    for (const auto& name : args.methods) {
      const std::string key = "compare." + name;
      rep.section(name);
      try {
        const Solution sol = solve(p, make_options(name, args.tol, args.max_iter));
        rep.text(key + ".status", "ok");
        rep.count(key + ".iterations", sol.log.iterations);
        rep.number(key + ".residual", relative_residual(p, sol.phi));
        results.emplace_back(name, sol.phi);
      } catch (const Error& e) {
        if (exit_code_for(e.code()) != kExitFailure) throw;
        rep.text(key + ".status", "failed");
        if (const auto* failure = dynamic_cast<const SolverFailure*>(&e)) {
          rep.count(key + ".iterations", failure->log().iterations);
          if (!failure->log().residual_history.empty())
            rep.number(key + ".residual", failure->log().residual_history.back());
        }
        rep.text(key + ".error", e.what());
      }
    }
  } catch (const Error& e) {
    return report_error(e, args.machine, out, err);
  }

  double max_diff = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (std::size_t j = i + 1; j < results.size(); ++j) {
      max_diff = std::max(max_diff, max_abs_diff(results[i].second, results[j].second));
      ++pairs;
    }
  }
  rep.section("agreement");
  rep.count("compare.succeeded", results.size());
  rep.count("compare.pairs", pairs);
  rep.number("compare.max_diff", pairs > 0 ? max_diff : std::numeric_limits<double>::quiet_NaN());

  int code = kExitOk;
  if (results.empty()) {
    err << "mare: compare: every method failed\n";
    code = kExitFailure;
  } else if (max_diff > kCompareLimit) {
    err << "mare: compare: solutions differ by " << format_double(max_diff) << '\n';
    code = kExitFailure;
  }
  if (args.machine) out << "status=" << (code == kExitOk ? "ok" : "error") << '\n';
  rep.render(out, args.machine);
  return code;
}

namespace {

enum class TrialStatus { Solved, Skipped, GenerationFailed, SolveFailed };

std::string_view to_string(TrialStatus s) {
  switch (s) {
    case TrialStatus::Solved: return "ok";
    case TrialStatus::Skipped: return "skipped";
    case TrialStatus::GenerationFailed: return "generation_failed";
    case TrialStatus::SolveFailed: return "solve_failed";
  }
  return "unknown";
}

struct Trial {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  TrialStatus status = TrialStatus::Skipped;
  std::string reason;
  double rho = 0.0;
  double margin = 0.0;
  bool candidate = false;
  Matrix k;
};

Trial run_trial(const HuntArgs& args, std::uint64_t seed) {
  Trial t;
  t.seed = seed;
  Rng sizes(seed);
  t.n = 1 + sizes.below(args.size);
  t.m = 1 + sizes.below(args.size);

  GenSpec spec;
  spec.n = t.n;
  spec.m = t.m;
  spec.seed = seed;
  spec.category = Category::ReducibleSingularRegular;
  spec.critical = args.critical;
  spec.nonzero_gap = !args.critical;
  try {
    t.k = random_generator_k(spec);
  } catch (const Error& e) {
    t.status = TrialStatus::GenerationFailed;
    t.reason = e.what();
    return t;
  }

  const Problem p = from_k(t.k, t.n);
  const CaseLabel label = classify_case(p);
  if (label != CaseLabel::CaseI && label != CaseLabel::CaseII) {
    t.status = TrialStatus::Skipped;
    t.reason = "case " + std::string(mare::to_string(label)) + " is outside the probe";
    return t;
  }
  try {
    SolverOptions opts = make_options(args.method, std::nullopt, std::nullopt);
    const Solution sol = solve(p, opts);
    const ProbeResult probe = conjecture_probe(p, sol);
    if (probe.skipped) {
      t.status = TrialStatus::Skipped;
      t.reason = probe.reason;
      return t;
    }
    t.status = TrialStatus::Solved;
    t.rho = probe.rho;
    t.margin = probe.margin;
    t.candidate = probe.candidate;
  } catch (const Error& e) {
    t.status = TrialStatus::SolveFailed;
    t.reason = e.what();
  }
  return t;
}

struct Bin {
  const char* label;
  double upper;
};

// Margins fall into the first bin whose upper edge is not exceeded.
constexpr Bin kBins[] = {{"le_0", 0.0},       {"0_1e-8", 1e-8},  {"1e-8_1e-4", 1e-4}, {"1e-4_1e-2", 1e-2},
                         {"1e-2_1e-1", 1e-1}, {"1e-1_5e-1", 0.5}, {"5e-1_1", 1.0}};

}  // namespace

int cmd_hunt(const HuntArgs& args, std::ostream& out, std::ostream& err) {
  std::vector<Trial> trials(args.trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < trials.size(); i = next++) trials[i] = run_trial(args, args.seed + i);
  };
  const std::size_t workers = std::min(args.threads, args.trials);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  Report rep;
  std::size_t solved = 0, skipped = 0, gen_failed = 0, solve_failed = 0, candidates = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  std::size_t hist[std::size(kBins) + 1] = {};
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const Trial& t = trials[i];
    const std::string key = "trial." + std::to_string(i);
    if (args.machine) {
      rep.text(key + ".status", std::string(to_string(t.status)));
      rep.count(key + ".seed", t.seed);
      rep.count(key + ".n", t.n);
      rep.count(key + ".m", t.m);
      if (t.status == TrialStatus::Solved) {
        rep.number(key + ".rho", t.rho);
        rep.number(key + ".margin", t.margin);
      } else {
        rep.text(key + ".reason", t.reason);
      }
    } else if (t.status == TrialStatus::Solved) {
      out << "trial " << i << " seed " << t.seed << " n " << t.n << " m " << t.m << " margin "
          << format_double(t.margin) << " rho " << format_double(t.rho) << '\n';
    } else {
      out << "trial " << i << " seed " << t.seed << " " << to_string(t.status) << ": " << t.reason << '\n';
    }

    switch (t.status) {
      case TrialStatus::Solved: {
        ++solved;
        min_margin = std::min(min_margin, t.margin);
        std::size_t b = 0;
        while (b < std::size(kBins) && t.margin > kBins[b].upper) ++b;
        ++hist[b];
        break;
      }
      case TrialStatus::Skipped: ++skipped; break;
      case TrialStatus::GenerationFailed: ++gen_failed; break;
      case TrialStatus::SolveFailed: ++solve_failed; break;
    }

    if (t.candidate) {
      ++candidates;
      if (args.out) {
        std::error_code ec;
        std::filesystem::create_directories(*args.out, ec);
        const auto path = *args.out / ("candidate_" + std::to_string(i) + ".mare");
        std::ostringstream comment;
        comment << "hunt candidate: trial " << i << ", seed " << t.seed << ", size " << args.size << "\n"
                << "rho(Phi Psi) = " << format_double(t.rho) << ", margin = " << format_double(t.margin);
        try {
          write_matrix_file(path, t.k, t.n, comment.str());
          rep.text(key + ".file", path.string());
        } catch (const Error& e) {
          err << "mare: hunt: " << e.what() << '\n';
        }
      }
    }
  }

  rep.section("summary");
  rep.count("hunt.trials", trials.size());
  rep.count("hunt.solved", solved);
  rep.count("hunt.skipped", skipped);
  rep.count("hunt.generation_failures", gen_failed);
  rep.count("hunt.solve_failures", solve_failed);
  rep.count("hunt.candidates", candidates);
  rep.number("hunt.min_margin", solved > 0 ? min_margin : std::numeric_limits<double>::quiet_NaN());
  rep.section("margin histogram");
  for (std::size_t b = 0; b < std::size(kBins); ++b) rep.count(std::string("hist.") + kBins[b].label, hist[b]);
  rep.count("hist.gt_1", hist[std::size(kBins)]);

  if (args.machine) out << "status=ok\n";
  rep.render(out, args.machine);
  return kExitOk;
}

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const Matrix k = random_generator_k(args.spec);
    std::ostringstream comment;
    comment << "generated: category " << to_string(args.spec.category) << ", seed " << args.spec.seed;
    if (args.out) {
      write_matrix_file(*args.out, k, args.spec.n, comment.str());
    } else {
      write_matrix_file(out, k, args.spec.n, comment.str());
    }

    const MatrixKind kind = categorize(k);
    std::ostream& summary = args.out ? out : err;
    summary << "category " << to_string(args.spec.category) << ": n " << args.spec.n << " m " << args.spec.m
            << (kind.singular ? " singular" : " nonsingular") << (kind.irreducible ? " irreducible" : " reducible")
            << (kind.regular ? " regular" : " not-regular") << '\n';
  } catch (const Error& e) {
    return report_error(e, false, out, err);
  }
  return kExitOk;
}

}  // namespace mare::cli
