#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "curveopt/directions.hpp"
#include "curveopt/objective.hpp"
#include "curveopt/search.hpp"

namespace curveopt {

enum class SolverKind { CS, CS_NMT, GD, M_HB, M_RES, M_BETA };

inline constexpr std::array<SolverKind, 6> kAllSolvers = {
    SolverKind::CS,   SolverKind::CS_NMT, SolverKind::GD,
    SolverKind::M_HB, SolverKind::M_RES,  SolverKind::M_BETA};

std::string_view to_string(SolverKind kind);
/// Exact tag match; throws ConfigError for anything else.
SolverKind parse_solver_kind(std::string_view tag);

enum class RunStatus {
  Converged,
  MaxIters,
  TimeLimit,
  LineSearchFailure,
  EvaluationFailure
};

std::string_view to_string(RunStatus status);
RunStatus parse_run_status(std::string_view text);

enum class TraceMode {
  Off,
  Scalars,  // per-iteration scalars only
  Full      // scalars plus the iterate itself
};

struct RunConfig {
  DirectionParams params;
  SearchConfig search{.memory = 20};  // memory is read by CS_NMT only
  double eps = 1e-3;                  // stop when |grad f|_inf <= eps
  int max_iters = 5000;
  double time_limit = 120.0;  // seconds, checked once per iteration
  int max_halvings = 50;      // M_BETA safeguard
  TraceMode trace = TraceMode::Off;

  void validate() const;
};

/// How the step leaving an iterate was produced.
enum class StepKind { None, Search, Restart, Pure };

struct TraceEntry {
  double f = 0.0;
  double grad_inf = 0.0;
  double grad_norm = 0.0;  // Euclidean
  // Step leaving this iterate; t == 0 on the final entry.
  double t = 0.0;
  int trials = 0;
  std::optional<SearchBoundary> boundary;
  std::optional<double> last_rejected;
  StepKind step = StepKind::None;
  double reference_f = 0.0;  // Armijo right-hand side base used for the step
  double beta_used = 0.0;
  std::optional<double> dist_to_min;
  Vector x;  // empty unless TraceMode::Full
};

struct SolverReport {
  RunStatus status = RunStatus::MaxIters;
  std::int64_t iters = 0;
  std::int64_t f_evals = 0;
  std::int64_t g_evals = 0;
  double f_final = 0.0;
  double grad_inf_final = 0.0;
  Vector x_final;
  double wall_time = 0.0;
  std::vector<TraceEntry> trace;
};

/// Runs one method from x0 until |grad f|_inf <= eps, the iteration or time
/// limit, or a failure. Failures are reported through status, never thrown;
/// a wrong-sized x0 throws DimensionError before iterating.
SolverReport solve(const Problem& problem, SolverKind kind,
                   const RunConfig& cfg, const Vector& x0);

/// |x_a^k - x_b^k|_inf over the common iterations of two full traces.
std::vector<double> trajectory_distance(const SolverReport& a,
                                        const SolverReport& b);

}  // namespace curveopt
