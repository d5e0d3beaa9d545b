#include "curveopt/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "curveopt/curve.hpp"
#include "curveopt/errors.hpp"

namespace curveopt {

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::CS: return "CS";
    case SolverKind::CS_NMT: return "CS_NMT";
    case SolverKind::GD: return "GD";
    case SolverKind::M_HB: return "M_HB";
    case SolverKind::M_RES: return "M_RES";
    case SolverKind::M_BETA: return "M_BETA";
  }
  return "?";
}

SolverKind parse_solver_kind(std::string_view tag) {
  for (SolverKind k : kAllSolvers) {
    if (to_string(k) == tag) return k;
  }
  throw ConfigError("unknown solver '" + std::string(tag) + "'");
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Converged: return "Converged";
    case RunStatus::MaxIters: return "MaxIters";
    case RunStatus::TimeLimit: return "TimeLimit";
    case RunStatus::LineSearchFailure: return "LineSearchFailure";
    case RunStatus::EvaluationFailure: return "EvaluationFailure";
  }
  return "?";
}

RunStatus parse_run_status(std::string_view text) {
  for (RunStatus s : {RunStatus::Converged, RunStatus::MaxIters,
                      RunStatus::TimeLimit, RunStatus::LineSearchFailure,
                      RunStatus::EvaluationFailure}) {
    if (to_string(s) == text) return s;
  }
  throw ConfigError("unknown run status '" + std::string(text) + "'");
}

void RunConfig::validate() const {
  params.validate();
  search.validate();
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  if (max_iters < 1) throw DomainError("max_iters must be at least 1");
  if (!(time_limit > 0.0)) throw DomainError("time_limit must be positive");
  if (max_halvings < 0) throw DomainError("max_halvings must be nonnegative");
}

namespace {

using Clock = std::chrono::steady_clock;

struct Step {
  Vector x_next;
  double f_next = 0.0;
  double t = 0.0;
  int trials = 0;
  std::optional<SearchBoundary> boundary;
  std::optional<double> last_rejected;
  StepKind kind = StepKind::Search;
  double reference_f = 0.0;
  double beta_used = 0.0;
};

// Armijo curve search along gamma(t) = x + t d + t^2 (s - d).
Step curve_step(CountingProblem& counted, const Vector& x, const Vector& g,
                Vector d, Vector s, double reference_f,
                const SearchConfig& search) {
  const double slope0 = g.dot(d);
  const QuadraticCurve curve(x, std::move(d), std::move(s));
  Vector trial;
  auto phi = [&](double t) {
    trial = curve.point(t);
    return counted.value(trial);
  };
  const SearchOutcome out = armijo_curve_search(phi, slope0, reference_f, search);
  Step step;
  // The last phi call was at the accepted t.
  step.x_next = std::move(trial);
  step.f_next = out.value;
  step.t = out.t;
  step.trials = out.trials;
  step.boundary = out.boundary;
  step.last_rejected = out.last_rejected;
  step.reference_f = reference_f;
  return step;
}

// Line search along p, realized as the degenerate curve d = s = p.
Step line_step(CountingProblem& counted, const Vector& x, const Vector& g,
               const Vector& p, double f, const SearchConfig& search) {
  return curve_step(counted, x, g, p, p, f, search);
}

TraceEntry make_entry(const Problem& problem, const Vector& x, double f,
                      const Vector& g, TraceMode mode) {
  TraceEntry e;
  e.f = f;
  e.grad_inf = g.lpNorm<Eigen::Infinity>();
  e.grad_norm = g.norm();
  if (problem.known_min()) e.dist_to_min = (x - problem.known_min()->x).norm();
  if (mode == TraceMode::Full) e.x = x;
  return e;
}

void record_step(TraceEntry& e, const Step& step) {
  e.t = step.t;
  e.trials = step.trials;
  e.boundary = step.boundary;
  e.last_rejected = step.last_rejected;
  e.step = step.kind;
  e.reference_f = step.reference_f;
  e.beta_used = step.beta_used;
}

}  // namespace

SolverReport solve(const Problem& problem, SolverKind kind,
                   const RunConfig& cfg, const Vector& x0) {
  if (x0.size() != problem.dim()) {
    throw DimensionError("solve: x0 has dimension " + std::to_string(x0.size()) +
                         ", problem '" + problem.name() + "' has " +
                         std::to_string(problem.dim()));
  }
  cfg.validate();

  const auto start = Clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  CountingProblem counted(problem);
  SolverReport report;
  const bool tracing = cfg.trace != TraceMode::Off;

  Vector x = x0;
  double f = std::numeric_limits<double>::quiet_NaN();
  Vector g;
  MomentumState mom = MomentumState::at_start(x0);
  FHistory history(kind == SolverKind::CS_NMT ? cfg.search.memory : 0);

  auto finish = [&](RunStatus status) {
    report.status = status;
    report.f_evals = counted.f_evals();
    report.g_evals = counted.g_evals();
    report.f_final = f;
    report.grad_inf_final = g.size() == x.size()
                                ? g.lpNorm<Eigen::Infinity>()
                                : std::numeric_limits<double>::infinity();
    report.x_final = x;
    report.wall_time = elapsed();
    return report;
  };

  try {
    f = counted.value(x);
    g = counted.gradient(x);
  } catch (const EvaluationFailure&) {
    return finish(RunStatus::EvaluationFailure);
  }
  history.push(f);

  while (true) {
    TraceEntry entry;
    if (tracing) entry = make_entry(problem, x, f, g, cfg.trace);

    std::optional<RunStatus> stop;
    if (g.lpNorm<Eigen::Infinity>() <= cfg.eps) {
      stop = RunStatus::Converged;
    } else if (report.iters >= cfg.max_iters) {
      stop = RunStatus::MaxIters;
    } else if (elapsed() >= cfg.time_limit) {
      stop = RunStatus::TimeLimit;
    }
    if (stop) {
      if (tracing) report.trace.push_back(std::move(entry));
      return finish(*stop);
    }

    Step step;
    try {
      switch (kind) {
        case SolverKind::CS:
        case SolverKind::CS_NMT: {
          Vector d = gradient_direction(g, cfg.params.g_f);
          Vector s = heavy_ball_direction(g, mom, cfg.params);
          const double ref = history.reference();
          step = curve_step(counted, x, g, std::move(d), std::move(s), ref,
                            cfg.search);
          step.beta_used = cfg.params.beta;
          break;
        }
        case SolverKind::GD:
          step = line_step(counted, x, g, -g, f, cfg.search);
          break;
        case SolverKind::M_HB: {
          const Vector s = heavy_ball_direction(g, mom, cfg.params);
          step.x_next = x + s;
          step.f_next = counted.value(step.x_next);
          step.t = 1.0;
          step.kind = StepKind::Pure;
          step.reference_f = f;
          step.beta_used = cfg.params.beta;
          break;
        }
        case SolverKind::M_RES: {
          const Vector s = heavy_ball_direction(g, mom, cfg.params);
          if (is_descent(g, s)) {
            step = line_step(counted, x, g, s, f, cfg.search);
            step.beta_used = cfg.params.beta;
          } else {
            mom.reset();
            step = line_step(counted, x, g, -g, f, cfg.search);
            step.kind = StepKind::Restart;
          }
          break;
        }
        case SolverKind::M_BETA: {
          SafeguardedDirection sd =
              safeguard_beta(g, mom, cfg.params, cfg.max_halvings);
          step = line_step(counted, x, g, sd.s, f, cfg.search);
          step.beta_used = sd.beta_used;
          break;
        }
      }
    } catch (const SearchStalled&) {
      if (tracing) report.trace.push_back(std::move(entry));
      return finish(RunStatus::LineSearchFailure);
    } catch (const NotDescent&) {
      if (tracing) report.trace.push_back(std::move(entry));
      return finish(RunStatus::LineSearchFailure);
    } catch (const EvaluationFailure&) {
      if (tracing) report.trace.push_back(std::move(entry));
      return finish(RunStatus::EvaluationFailure);
    }

    if (tracing) {
      record_step(entry, step);
      report.trace.push_back(std::move(entry));
    }

    mom.advance(step.x_next);
    x = std::move(step.x_next);
    f = step.f_next;
    ++report.iters;
    try {
      g = counted.gradient(x);
    } catch (const EvaluationFailure&) {
      g.resize(0);
      return finish(RunStatus::EvaluationFailure);
    }
    history.push(f);
  }
}

std::vector<double> trajectory_distance(const SolverReport& a,
                                        const SolverReport& b) {
  auto has_points = [](const SolverReport& r) {
    return !r.trace.empty() &&
           std::all_of(r.trace.begin(), r.trace.end(),
                       [](const TraceEntry& e) { return e.x.size() > 0; });
  };
  if (!has_points(a) || !has_points(b)) {
    throw UsageError("trajectory_distance needs full traces on both reports");
  }
  const std::size_t n = std::min(a.trace.size(), b.trace.size());
  std::vector<double> gaps(n);
  for (std::size_t k = 0; k < n; ++k) {
    gaps[k] = (a.trace[k].x - b.trace[k].x).lpNorm<Eigen::Infinity>();
  }
  return gaps;
}

}  // namespace curveopt
