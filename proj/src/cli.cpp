#include "curveopt/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "curveopt/bench.hpp"
#include "curveopt/errors.hpp"
#include "curveopt/objective.hpp"
#include "curveopt/solvers.hpp"
#include "curveopt/theory.hpp"

namespace curveopt {

namespace {

struct SolverFlags {
  RunConfig cfg;
  std::optional<int> memory;
  bool alpha_star = false;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--alpha", f.cfg.params.alpha, "heavy-ball gradient weight")
      ->capture_default_str();
  cmd->add_option("--beta", f.cfg.params.beta, "heavy-ball momentum weight")
      ->capture_default_str();
  cmd->add_option("--gf", f.cfg.params.g_f, "scale of the curve's initial velocity")
      ->capture_default_str();
  cmd->add_option("--delta0", f.cfg.search.delta0, "initial trial step")
      ->capture_default_str();
  cmd->add_option("--sigma", f.cfg.search.sigma, "sufficient decrease fraction")
      ->capture_default_str();
  cmd->add_option("--delta", f.cfg.search.delta, "backtracking factor")
      ->capture_default_str();
  cmd->add_option("--memory", f.memory, "nonmonotone window for CS_NMT (default 20)");
  cmd->add_option("--eps", f.cfg.eps, "stop when |grad f|_inf <= eps")
      ->capture_default_str();
  cmd->add_option("--max-iters", f.cfg.max_iters, "iteration limit")
      ->capture_default_str();
  cmd->add_option("--time-limit", f.cfg.time_limit, "wall-clock limit in seconds")
      ->capture_default_str();
}

RunConfig finalize(const SolverFlags& f) {
  RunConfig cfg = f.cfg;
  if (f.memory) cfg.search.memory = *f.memory;
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

void apply_alpha_star(const Problem& problem, RunConfig& cfg) {
  if (!problem.strong_mu() || !problem.lipschitz_L()) {
    throw ConfigError("--alpha-star needs mu and L, which problem '" +
                      problem.name() + "' does not provide");
  }
  const HeavyBallParams hb =
      optimal_hb_params({*problem.strong_mu(), *problem.lipschitz_L()});
  cfg.params.alpha = hb.alpha_star;
  cfg.params.beta = hb.beta_star;
}

std::string format_vector(const Vector& x) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) s += ',';
    s += format_real(x[i]);
  }
  return s + "]";
}

std::string_view boundary_name(const std::optional<SearchBoundary>& b) {
  if (!b) return "";
  return *b == SearchBoundary::AcceptedFirst ? "AcceptedFirst" : "Backtracked";
}

std::string_view step_name(StepKind k) {
  switch (k) {
    case StepKind::None: return "";
    case StepKind::Search: return "search";
    case StepKind::Restart: return "restart";
    case StepKind::Pure: return "pure";
  }
  return "";
}

void write_trace(const SolverReport& rep, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open trace file '" + path.string() + "'");
  out << "k,f,grad_inf,grad_norm,t,trials,boundary,step,dist_to_min\n";
  for (std::size_t k = 0; k < rep.trace.size(); ++k) {
    const TraceEntry& e = rep.trace[k];
    out << k << ',' << format_real(e.f) << ',' << format_real(e.grad_inf) << ','
        << format_real(e.grad_norm) << ',' << format_real(e.t) << ',' << e.trials
        << ',' << boundary_name(e.boundary) << ',' << step_name(e.step) << ','
        << (e.dist_to_min ? format_real(*e.dist_to_min) : "") << '\n';
  }
}

void print_summary(std::ostream& out, const Problem& problem, SolverKind kind,
                   const SolverReport& rep, bool pretty) {
  if (pretty) {
    out << std::left << std::setw(16) << "problem" << problem.name() << '\n'
        << std::setw(16) << "solver" << to_string(kind) << '\n'
        << std::setw(16) << "status" << to_string(rep.status) << '\n'
        << std::setw(16) << "iterations" << rep.iters << '\n'
        << std::setw(16) << "f evals" << rep.f_evals << '\n'
        << std::setw(16) << "g evals" << rep.g_evals << '\n'
        << std::setw(16) << "f final" << format_real(rep.f_final) << '\n'
        << std::setw(16) << "|g|_inf final" << format_real(rep.grad_inf_final) << '\n'
        << std::setw(16) << "time [s]" << rep.wall_time << '\n';
    if (problem.dim() <= 10) {
      out << std::setw(16) << "x0" << format_vector(problem.x0()) << '\n'
          << std::setw(16) << "x final" << format_vector(rep.x_final) << '\n';
    }
    return;
  }
  out << "problem=" << problem.name() << " solver=" << to_string(kind)
      << " status=" << to_string(rep.status) << " iters=" << rep.iters
      << " f_evals=" << rep.f_evals << " g_evals=" << rep.g_evals
      << " f=" << format_real(rep.f_final)
      << " grad_inf=" << format_real(rep.grad_inf_final)
      << " time_s=" << format_real(rep.wall_time);
  if (problem.dim() <= 10) {
    out << " x0=" << format_vector(problem.x0())
        << " x=" << format_vector(rep.x_final);
  }
  out << '\n';
}

int cmd_run(std::ostream& out, const std::string& key, const std::string& tag,
            SolverFlags& flags, std::uint64_t seed,
            const std::optional<std::string>& trace_path, bool pretty) {
  RunConfig cfg = finalize(flags);
  const SolverKind kind = parse_solver_kind(tag);
  const Problem problem = make_problem(key, seed);
  if (flags.alpha_star) apply_alpha_star(problem, cfg);
  if (trace_path) cfg.trace = TraceMode::Scalars;
  const SolverReport rep = solve(problem, kind, cfg, problem.x0());
  print_summary(out, problem, kind, rep, pretty);
  if (trace_path) write_trace(rep, *trace_path);
  return rep.status == RunStatus::Converged ? kExitOk : kExitSolverFailure;
}

int cmd_bench(std::ostream& out, std::vector<std::string> problems,
              std::vector<std::string> solvers, SolverFlags& flags, int jobs,
              std::uint64_t seed, const std::string& out_path, bool pretty) {
  const RunConfig cfg = finalize(flags);
  if (problems.empty()) problems = default_suite_keys();
  if (solvers.empty()) {
    for (SolverKind k : kAllSolvers) solvers.emplace_back(to_string(k));
  }
  if (jobs < 1) throw ConfigError("--jobs must be at least 1");
  const auto records = run_grid(problems, solvers, cfg, jobs, seed);
  write_records(records, std::filesystem::path(out_path));
  if (pretty) {
    out << std::left << std::setw(18) << "problem" << std::setw(8) << "solver"
        << std::setw(20) << "status" << std::setw(8) << "iters"
        << "f_star\n";
    for (const auto& r : records) {
      out << std::setw(18) << r.problem << std::setw(8) << r.solver
          << std::setw(20) << r.status << std::setw(8) << r.iters
          << format_real(r.f_star) << '\n';
    }
  }
  std::size_t converged = 0;
  for (const auto& r : records) converged += r.converged() ? 1 : 0;
  out << "records=" << records.size() << " converged=" << converged
      << " out=" << out_path << '\n';
  return kExitOk;
}

int cmd_profile(std::ostream& out, const std::string& in_path,
                std::optional<std::string> out_prefix, const std::string& metric_name) {
  const ProfileMetric metric = parse_profile_metric(metric_name);
  const auto records = read_records(std::filesystem::path(in_path));
  const auto curves = performance_profile(records, metric);

  std::filesystem::path prefix =
      out_prefix ? std::filesystem::path(*out_prefix)
                 : std::filesystem::path("profile_" + metric_name);
  if (prefix.extension() == ".csv" || prefix.extension() == ".svg") {
    prefix.replace_extension();
  }
  const auto csv_path = std::filesystem::path(prefix.string() + ".csv");
  const auto svg_path = std::filesystem::path(prefix.string() + ".svg");
  {
    std::ofstream csv(csv_path);
    if (!csv) throw IoError("cannot open '" + csv_path.string() + "'");
    csv << "# metric=" << metric_name
        << (metric == ProfileMetric::FStar
                ? " m=f_star-f_best+" + format_real(kFStarShift)
                : std::string(" m=time_s"))
        << " failures=inf\n";
    write_profile_csv(curves, csv);
  }
  {
    std::ofstream svg(svg_path);
    if (!svg) throw IoError("cannot open '" + svg_path.string() + "'");
    write_profile_svg(curves, "performance profile: " + metric_name, svg);
  }
  for (const auto& c : curves) {
    out << "solver=" << c.solver << " rho(1)=" << format_real(c.rho_at(1.0))
        << " rho(inf)=" << format_real(c.points.back().rho) << '\n';
  }
  out << "wrote " << csv_path.string() << ' ' << svg_path.string() << '\n';
  return kExitOk;
}

struct CheckFlags {
  std::optional<double> mu, L, c, c1, f0, flow;
  double sigma = 1e-7, eps = 1e-3, delta0 = 1.0, delta = 0.5, gf = 0.125;
};

int cmd_check(std::ostream& out, const CheckFlags& f) {
  out << std::setprecision(9);
  bool printed = false;
  if (f.mu && !f.L) throw ConfigError("check: --mu needs --L");
  if (f.mu) {
    const HeavyBallParams hb = optimal_hb_params({*f.mu, *f.L});
    out << "alpha_star=" << hb.alpha_star << " beta_star=" << hb.beta_star
        << " q_star=" << hb.q_star << '\n';
    printed = true;
  }
  if (f.L) {
    // Default constants c1 = c = g_f match the direction d = -g_f grad f.
    const double c1 = f.c1.value_or(f.gf);
    const double c = f.c.value_or(f.gf);
    const double low = delta_low(c1, c, *f.L, f.sigma);
    out << "delta_low=" << low << " c1=" << c1 << " c=" << c
        << " sigma=" << f.sigma << '\n';
    if (f.f0 && f.flow) {
      const auto k = iteration_bound(
          {*f.f0, *f.flow, f.sigma, c1, c, f.delta0, f.delta, f.eps, *f.L});
      out << "iteration_bound=" << k << " eps=" << f.eps << '\n';
    }
    printed = true;
  }
  if (!printed) throw ConfigError("check: give --mu/--L (and optionally --f0/--flow)");
  return kExitOk;
}

int cmd_figure_sc(std::ostream& out, SolverFlags& flags, const std::string& out_path) {
  RunConfig cfg = finalize(flags);
  const Problem problem = make_problem("logistic:2");
  apply_alpha_star(problem, cfg);
  cfg.trace = TraceMode::Full;
  const Vector& x_star = problem.known_min()->x;

  const SolverKind kinds[] = {SolverKind::CS, SolverKind::CS_NMT, SolverKind::GD,
                              SolverKind::M_HB, SolverKind::M_RES};
  std::vector<SolverReport> reports;
  std::ofstream csv(out_path);
  if (!csv) throw IoError("cannot open '" + out_path + "'");
  csv << "# problem=logistic:2 x0=" << format_vector(problem.x0())
      << " alpha=" << format_real(cfg.params.alpha)
      << " beta=" << format_real(cfg.params.beta)
      << " memory=" << cfg.search.memory << '\n';
  csv << "solver,k,dist\n";
  bool all_converged = true;
  for (SolverKind kind : kinds) {
    SolverReport rep = solve(problem, kind, cfg, problem.x0());
    for (std::size_t k = 0; k < rep.trace.size(); ++k) {
      csv << to_string(kind) << ',' << k << ','
          << format_real((rep.trace[k].x - x_star).norm()) << '\n';
    }
    print_summary(out, problem, kind, rep, false);
    all_converged = all_converged && rep.status == RunStatus::Converged;
    reports.push_back(std::move(rep));
  }

  const SolverReport& nmt = reports[1];
  const SolverReport& hb = reports[3];
  std::size_t k0 = nmt.trace.size();
  while (k0 > 0) {
    const TraceEntry& e = nmt.trace[k0 - 1];
    if (e.step != StepKind::None && e.t != 1.0) break;
    --k0;
  }
  const auto gaps = trajectory_distance(nmt, hb);
  const auto first_gap = std::find_if(gaps.begin(), gaps.end(),
                                      [](double v) { return v != 0.0; });
  out << "cs_nmt_unit_steps_from_k=" << k0 << " cs_nmt_matches_m_hb_through_k="
      << (first_gap - gaps.begin()) - 1 << " of " << gaps.size() << '\n';
  out << "wrote " << out_path << '\n';
  return all_converged ? kExitOk : kExitSolverFailure;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Curve-search globalization of heavy-ball methods", "curveopt"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run one solver on one problem");
  std::string run_problem, run_solver;
  SolverFlags run_flags;
  std::uint64_t run_seed = 0;
  std::optional<std::string> run_trace;
  bool run_pretty = false;
  run->add_option("--problem", run_problem, "problem key family:dim[:param]")->required();
  run->add_option("--solver", run_solver, "CS, CS_NMT, GD, M_HB, M_RES or M_BETA")
      ->required();
  add_solver_flags(run, run_flags);
  run->add_flag("--alpha-star", run_flags.alpha_star,
                "use optimal heavy-ball alpha and beta from the problem's mu and L");
  run->add_option("--seed", run_seed, "seed for randomized problem instances");
  run->add_option("--trace", run_trace, "write a per-iteration CSV trace");
  run->add_flag("--pretty", run_pretty, "human-readable output");

  // bench
  auto* bench = app.add_subcommand("bench", "run a problem x solver grid");
  std::vector<std::string> bench_problems, bench_solvers;
  SolverFlags bench_flags;
  int bench_jobs = 1;
  std::uint64_t bench_seed = 0;
  std::string bench_out = "records.csv";
  bool bench_pretty = false;
  bench->add_option("--problem", bench_problems, "problem keys (default: full suite)");
  bench->add_option("--solver", bench_solvers, "solver tags (default: all)");
  add_solver_flags(bench, bench_flags);
  bench->add_option("--jobs", bench_jobs, "worker threads")
      ->envname("CURVEOPT_JOBS")
      ->capture_default_str();
  bench->add_option("--seed", bench_seed, "seed for randomized problem instances");
  bench->add_option("--out", bench_out, "records CSV path")->capture_default_str();
  bench->add_flag("--pretty", bench_pretty, "print a results table");

  // profile
  auto* profile = app.add_subcommand("profile", "performance profiles from records");
  std::string profile_in, profile_metric = "time";
  std::optional<std::string> profile_out;
  profile->add_option("--in", profile_in, "records CSV")->required();
  profile->add_option("--out", profile_out, "output prefix for .csv and .svg");
  profile->add_option("--metric", profile_metric, "time or fstar")
      ->check(CLI::IsMember({"time", "fstar"}))
      ->capture_default_str();

  // check
  auto* check = app.add_subcommand("check", "print theory constants");
  CheckFlags check_flags;
  check->add_option("--mu", check_flags.mu, "strong convexity modulus");
  check->add_option("--L", check_flags.L, "gradient Lipschitz constant");
  check->add_option("--c", check_flags.c, "direction norm bound constant");
  check->add_option("--c1", check_flags.c1, "gradient-related constant");
  check->add_option("--f0", check_flags.f0, "f(x0)");
  check->add_option("--flow", check_flags.flow, "lower bound on f");
  check->add_option("--sigma", check_flags.sigma)->capture_default_str();
  check->add_option("--eps", check_flags.eps)->capture_default_str();
  check->add_option("--delta0", check_flags.delta0)->capture_default_str();
  check->add_option("--delta", check_flags.delta)->capture_default_str();
  check->add_option("--gf", check_flags.gf)->capture_default_str();

  // figure-sc
  auto* figure = app.add_subcommand(
      "figure-sc", "strongly convex logistic study with optimal heavy-ball parameters");
  SolverFlags figure_flags;
  std::string figure_out = "figure_sc.csv";
  add_solver_flags(figure, figure_flags);
  figure->add_option("--out", figure_out, "distance trace CSV")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) {
      return cmd_run(out, run_problem, run_solver, run_flags, run_seed, run_trace,
                     run_pretty);
    }
    if (*bench) {
      return cmd_bench(out, bench_problems, bench_solvers, bench_flags, bench_jobs,
                       bench_seed, bench_out, bench_pretty);
    }
    if (*profile) return cmd_profile(out, profile_in, profile_out, profile_metric);
    if (*check) return cmd_check(out, check_flags);
    if (*figure) return cmd_figure_sc(out, figure_flags, figure_out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolverFailure;
  }
  return kExitUsage;
}

}  // namespace curveopt
