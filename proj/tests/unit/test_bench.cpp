#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>

#include "curveopt/bench.hpp"
#include "curveopt/errors.hpp"

using namespace curveopt;

namespace {

BenchmarkRecord make_record(std::string problem, std::string solver, double time_s,
                            bool converged = true, double f_star = 0.0) {
  BenchmarkRecord r;
  r.problem = std::move(problem);
  r.dim = 2;
  r.solver = std::move(solver);
  r.status = converged ? "Converged" : "MaxIters";
  r.iters = 10;
  r.f_evals = 11;
  r.g_evals = 11;
  r.f_star = f_star;
  r.grad_inf = 1e-4;
  r.time_s = time_s;
  r.config_hash = "0123456789abcdef";
  return r;
}

const ProfileCurve& curve_of(const std::vector<ProfileCurve>& curves,
                             const std::string& solver) {
  for (const auto& c : curves) {
    if (c.solver == solver) return c;
  }
  throw std::runtime_error("no curve for " + solver);
}

}  // namespace

TEST(PerformanceProfile, TwoByTwoExample) {
  const std::vector<BenchmarkRecord> recs{
      make_record("p1", "A", 1.0), make_record("p1", "B", 2.0),
      make_record("p2", "A", 4.0), make_record("p2", "B", 2.0)};
  const auto curves = performance_profile(recs, ProfileMetric::Time);
  ASSERT_EQ(curves.size(), 2u);
  for (const char* s : {"A", "B"}) {
    const ProfileCurve& c = curve_of(curves, s);
    EXPECT_EQ(c.rho_at(1.0), 0.5) << s;
    EXPECT_EQ(c.rho_at(1.999), 0.5) << s;
    EXPECT_EQ(c.rho_at(2.0), 1.0) << s;
    EXPECT_EQ(c.rho_at(std::numeric_limits<double>::infinity()), 1.0) << s;
  }
}

TEST(PerformanceProfile, AllFailuresGiveZero) {
  const std::vector<BenchmarkRecord> recs{
      make_record("p1", "A", 1.0, false), make_record("p1", "B", 2.0),
      make_record("p2", "A", 4.0, false), make_record("p2", "B", 2.0)};
  const auto curves = performance_profile(recs, ProfileMetric::Time);
  const ProfileCurve& a = curve_of(curves, "A");
  for (double tau : {1.0, 10.0, 1e300}) EXPECT_EQ(a.rho_at(tau), 0.0);
  EXPECT_EQ(a.rho_at(std::numeric_limits<double>::infinity()), 0.0);
  EXPECT_EQ(curve_of(curves, "B").rho_at(1.0), 1.0);
}

TEST(PerformanceProfile, TiesCountAsBest) {
  const std::vector<BenchmarkRecord> recs{make_record("p1", "A", 3.0),
                                          make_record("p1", "B", 3.0)};
  const auto curves = performance_profile(recs, ProfileMetric::Time);
  EXPECT_EQ(curve_of(curves, "A").rho_at(1.0), 1.0);
  EXPECT_EQ(curve_of(curves, "B").rho_at(1.0), 1.0);
}

TEST(PerformanceProfile, FStarMetricUsesShiftedGap) {
  const std::vector<BenchmarkRecord> recs{
      make_record("p1", "A", 1.0, true, -5.0), make_record("p1", "B", 1.0, true, -5.0),
      make_record("p2", "A", 1.0, true, 2.0),
      make_record("p2", "B", 1.0, true, 2.0 + 1e-12)};
  const auto curves = performance_profile(recs, ProfileMetric::FStar);
  EXPECT_EQ(curve_of(curves, "A").rho_at(1.0), 1.0);
  const ProfileCurve& b = curve_of(curves, "B");
  EXPECT_EQ(b.rho_at(1.0), 0.5);
  EXPECT_EQ(b.rho_at(2.5), 1.0);
}

TEST(PerformanceProfile, InvariantUnderCommonScaling) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  std::bernoulli_distribution fails(0.15);
  std::vector<BenchmarkRecord> recs;
  std::vector<BenchmarkRecord> scaled;
  for (int p = 0; p < 30; ++p) {
    for (const char* s : {"A", "B", "C"}) {
      const double t = u(rng);
      const bool ok = !fails(rng);
      recs.push_back(make_record("p" + std::to_string(p), s, t, ok));
      scaled.push_back(make_record("p" + std::to_string(p), s, 7.3 * t, ok));
    }
  }
  const auto a = performance_profile(recs, ProfileMetric::Time);
  const auto b = performance_profile(scaled, ProfileMetric::Time);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t s = 0; s < a.size(); ++s) {
    ASSERT_EQ(a[s].points.size(), b[s].points.size());
    for (std::size_t i = 0; i < a[s].points.size(); ++i) {
      const double ta = a[s].points[i].tau;
      const double tb = b[s].points[i].tau;
      if (std::isinf(ta)) {
        EXPECT_TRUE(std::isinf(tb));
      } else {
        EXPECT_NEAR(ta, tb, 1e-12 * ta);
      }
      EXPECT_EQ(a[s].points[i].rho, b[s].points[i].rho);
    }
  }
}

TEST(PerformanceProfile, MonotoneAndBounded) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  std::vector<BenchmarkRecord> recs;
  for (int p = 0; p < 40; ++p) {
    for (const char* s : {"A", "B"}) {
      recs.push_back(make_record("p" + std::to_string(p), s, u(rng), p % 5 != 0));
    }
  }
  for (const auto& c : performance_profile(recs, ProfileMetric::Time)) {
    double prev = 0.0;
    for (const auto& pt : c.points) {
      EXPECT_GE(pt.tau, 1.0);
      EXPECT_GE(pt.rho, prev);
      EXPECT_LE(pt.rho, 1.0);
      prev = pt.rho;
    }
  }
}

TEST(PerformanceProfile, Errors) {
  EXPECT_THROW(performance_profile({}, ProfileMetric::Time), UsageError);
  EXPECT_THROW(performance_profile({make_record("p1", "A", 1.0)}, ProfileMetric::Time),
               UsageError);
  EXPECT_THROW(performance_profile({make_record("p1", "A", 1.0), make_record("p1", "A", 2.0),
                                    make_record("p1", "B", 1.0)},
                                   ProfileMetric::Time),
               UsageError);
  EXPECT_THROW(performance_profile({make_record("p1", "A", 0.0), make_record("p1", "B", 1.0)},
                                   ProfileMetric::Time),
               UsageError);
  EXPECT_EQ(parse_profile_metric("fstar"), ProfileMetric::FStar);
  EXPECT_THROW(parse_profile_metric("iters"), ConfigError);
}

TEST(Records, RoundTripIsExact) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  std::vector<BenchmarkRecord> recs;
  for (int i = 0; i < 100; ++i) {
    BenchmarkRecord r = make_record("rosen:" + std::to_string(i + 1),
                                    std::string(to_string(kAllSolvers[i % 6])),
                                    std::exp(u(rng)), i % 3 != 0, u(rng) * std::exp(u(rng)));
    r.dim = i + 1;
    r.status = std::string(to_string(RunStatus(i % 5)));
    r.iters = i * 37;
    r.grad_inf = std::exp(u(rng));
    if (i == 7) r.f_star = std::numeric_limits<double>::infinity();
    recs.push_back(r);
  }
  std::stringstream ss;
  write_records(recs, ss);
  EXPECT_EQ(read_records(ss), recs);
}

TEST(Records, EmptyListIsHeaderOnly) {
  std::stringstream ss;
  write_records({}, ss);
  EXPECT_EQ(ss.str(), std::string(kRecordHeader) + "\n");
  EXPECT_TRUE(read_records(ss).empty());
}

TEST(Records, ExactLayout) {
  BenchmarkRecord r = make_record("quad:2:k1", "GD", 0.25);
  r.iters = 1;
  r.f_evals = 2;
  r.g_evals = 2;
  r.f_star = 0.0;
  r.grad_inf = 0.0;
  std::stringstream ss;
  write_records({r}, ss);
  EXPECT_EQ(ss.str(),
            "problem,dim,solver,status,iters,f_evals,g_evals,f_star,grad_inf,time_s,"
            "config_hash\n"
            "quad:2:k1,2,GD,Converged,1,2,2,0,0,0.25,0123456789abcdef\n");
}

TEST(Records, ParseErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_records(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  const std::string header = std::string(kRecordHeader) + "\n";
  const std::string good = "quad:2:k1,2,GD,Converged,1,2,2,0,0,0.25,abc\n";
  EXPECT_EQ(line_of(""), 1u);
  EXPECT_EQ(line_of("problem,dim\n"), 1u);
  EXPECT_EQ(line_of(header + good + "quad:2:k1,2,GD,Converged,1,2\n"), 3u);
  EXPECT_EQ(line_of(header + good + good + "quad:2:k1,x,GD,Converged,1,2,2,0,0,0.25,abc\n"),
            4u);
  EXPECT_EQ(line_of(header + "quad:2:k1,2,GD,Happy,1,2,2,0,0,0.25,abc\n"), 2u);
  EXPECT_EQ(line_of(header + "quad:2:k1,2,GD,Converged,1,2,2,0,0,1.5e,abc\n"), 2u);
}

TEST(Records, MissingFileIsIoError) {
  EXPECT_THROW(read_records(std::filesystem::path("/nonexistent/records.csv")), IoError);
}

TEST(ConfigHash, StableAndSensitive) {
  const RunConfig base;
  EXPECT_EQ(config_hash(base), config_hash(RunConfig{}));
  EXPECT_EQ(config_hash(base).size(), 16u);
  RunConfig other;
  other.params.beta = 0.5;
  EXPECT_NE(config_hash(base), config_hash(other));
  other = RunConfig{};
  other.search.sigma = 1e-4;
  EXPECT_NE(config_hash(base), config_hash(other));
}

TEST(RunGrid, SmallGrid) {
  const auto recs = run_grid({"quad:2:k1"}, {"GD", "CS"}, RunConfig{}, 1);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].solver, "GD");
  EXPECT_EQ(recs[1].solver, "CS");
  for (const auto& r : recs) {
    EXPECT_TRUE(r.converged()) << r.solver;
    EXPECT_EQ(r.problem, "quad:2:k1");
    EXPECT_EQ(r.dim, 2);
    EXPECT_GT(r.time_s, 0.0);
  }
}

TEST(RunGrid, ConfigErrors) {
  EXPECT_THROW(run_grid({"quad:2"}, {}, RunConfig{}, 1), ConfigError);
  EXPECT_THROW(run_grid({}, {"GD"}, RunConfig{}, 1), ConfigError);
  EXPECT_THROW(run_grid({"quad:2"}, {"GD"}, RunConfig{}, 0), ConfigError);
  EXPECT_THROW(run_grid({"nope:2"}, {"GD"}, RunConfig{}, 1), ConfigError);
  EXPECT_THROW(run_grid({"quad:2"}, {"Newton"}, RunConfig{}, 1), ConfigError);
}

TEST(RunGrid, ParallelismDoesNotChangeResults) {
  const std::vector<std::string> problems{"rosen:10", "logistic:10", "trig:10",
                                          "broyden:10", "powell:4"};
  const std::vector<std::string> solvers{"CS", "CS_NMT", "GD", "M_HB", "M_RES", "M_BETA"};
  auto serial = run_grid(problems, solvers, RunConfig{}, 1, 3);
  auto parallel = run_grid(problems, solvers, RunConfig{}, 4, 3);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    serial[i].time_s = parallel[i].time_s = 0.0;
    EXPECT_EQ(serial[i], parallel[i]) << i;
  }
}
