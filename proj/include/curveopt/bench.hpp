#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "curveopt/solvers.hpp"

namespace curveopt {

struct BenchmarkRecord {
  std::string problem;
  std::int64_t dim = 0;
  std::string solver;
  std::string status;
  std::int64_t iters = 0;
  std::int64_t f_evals = 0;
  std::int64_t g_evals = 0;
  double f_star = 0.0;
  double grad_inf = 0.0;
  double time_s = 0.0;
  std::string config_hash;

  bool converged() const { return status == "Converged"; }
  friend bool operator==(const BenchmarkRecord&, const BenchmarkRecord&) = default;
};

inline constexpr std::string_view kRecordHeader =
    "problem,dim,solver,status,iters,f_evals,g_evals,f_star,grad_inf,time_s,"
    "config_hash";

/// Stable 16-hex-digit digest of every RunConfig field that affects a run.
std::string config_hash(const RunConfig& cfg);

/// Runs every (problem, solver) pair from each problem's own x0. Output is
/// ordered problem-major, solver-minor regardless of parallelism. Unknown
/// keys or empty lists throw ConfigError before any run starts.
std::vector<BenchmarkRecord> run_grid(const std::vector<std::string>& problems,
                                      const std::vector<std::string>& solvers,
                                      const RunConfig& cfg, int parallelism,
                                      std::uint64_t seed = 0);

/// Shortest decimal form that parses back to the same double.
std::string format_real(double v);

void write_records(const std::vector<BenchmarkRecord>& records, std::ostream& out);
void write_records(const std::vector<BenchmarkRecord>& records,
                   const std::filesystem::path& path);
std::vector<BenchmarkRecord> read_records(std::istream& in);
std::vector<BenchmarkRecord> read_records(const std::filesystem::path& path);

enum class ProfileMetric { Time, FStar };

ProfileMetric parse_profile_metric(std::string_view text);

struct ProfilePoint {
  double tau;
  double rho;
};

/// Breakpoints of rho_s(tau) = |{p : r_{p,s} <= tau}| / |P|. The last point
/// has tau = +inf and rho = fraction of converged runs.
struct ProfileCurve {
  std::string solver;
  std::vector<ProfilePoint> points;

  /// Value of the right-continuous step function at tau >= 1.
  double rho_at(double tau) const;
};

/// Shift added to f* - f_best so ratios are defined for f* <= 0.
inline constexpr double kFStarShift = 1e-12;

/// Dolan-More performance profile. Non-converged runs have ratio +inf.
/// Throws UsageError with fewer than two solvers or no problems.
std::vector<ProfileCurve> performance_profile(
    const std::vector<BenchmarkRecord>& records, ProfileMetric metric);

void write_profile_csv(const std::vector<ProfileCurve>& curves, std::ostream& out);
/// Standalone SVG step plot with a log2-scaled tau axis.
void write_profile_svg(const std::vector<ProfileCurve>& curves,
                       std::string_view title, std::ostream& out);

}  // namespace curveopt
