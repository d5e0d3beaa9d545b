#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "curveopt/curve.hpp"
#include "curveopt/errors.hpp"
#include "curveopt/search.hpp"

using namespace curveopt;

namespace {

double half_sq(const Vector& x) { return 0.5 * x.squaredNorm(); }

SearchConfig default_config() { return SearchConfig{1.0, 1e-7, 0.5, 0, 60}; }

}  // namespace

TEST(ArmijoCurveSearch, LineCurveAcceptedAtFirstTrial) {
  const Vector x{{1.0, 0.0}};
  const Vector d{{-1.0, 0.0}};
  const QuadraticCurve c(x, d, d);
  auto phi = [&](double t) { return half_sq(c.point(t)); };
  const SearchOutcome out = armijo_curve_search(phi, x.dot(d), half_sq(x), default_config());
  EXPECT_EQ(out.t, 1.0);
  EXPECT_EQ(out.value, 0.0);
  EXPECT_EQ(out.trials, 1);
  EXPECT_EQ(out.boundary, SearchBoundary::AcceptedFirst);
  EXPECT_FALSE(out.last_rejected);
}

TEST(ArmijoCurveSearch, CurvedOvershootBacktracksOnce) {
  // gamma(t) = (1 - 2t - 2t^2, 0): phi(1) = 4.5 rejected, phi(0.5) = 0.125.
  const Vector x{{1.0, 0.0}};
  const QuadraticCurve c(x, Vector{{-2.0, 0.0}}, Vector{{-4.0, 0.0}});
  auto phi = [&](double t) { return half_sq(c.point(t)); };
  const SearchOutcome out = armijo_curve_search(phi, -2.0, 0.5, default_config());
  EXPECT_EQ(out.t, 0.5);
  EXPECT_EQ(out.value, 0.125);
  EXPECT_EQ(out.trials, 2);
  EXPECT_EQ(out.boundary, SearchBoundary::Backtracked);
  ASSERT_TRUE(out.last_rejected);
  EXPECT_EQ(*out.last_rejected, 1.0);
  EXPECT_GT(phi(1.0), 0.5 - 1e-7 * 2.0);
}

TEST(ArmijoCurveSearch, LargeReferenceAcceptsFirstTrial) {
  const QuadraticCurve c(Vector{{1.0, 0.0}}, Vector{{-2.0, 0.0}}, Vector{{-40.0, 3.0}});
  auto phi = [&](double t) { return half_sq(c.point(t)); };
  const SearchOutcome out = armijo_curve_search(phi, -2.0, 1e6, default_config());
  EXPECT_EQ(out.t, 1.0);
  EXPECT_EQ(out.boundary, SearchBoundary::AcceptedFirst);
}

TEST(ArmijoCurveSearch, EqualityIsAccepted) {
  SearchConfig cfg = default_config();
  cfg.sigma = 0.5;
  // phi(1) equals the right-hand side exactly: 1 + 0.5 * 1 * (-2) = 0.
  auto phi = [](double t) { return t == 1.0 ? 0.0 : 1.0; };
  const SearchOutcome out = armijo_curve_search(phi, -2.0, 1.0, cfg);
  EXPECT_EQ(out.t, 1.0);
}

TEST(ArmijoCurveSearch, Errors) {
  auto phi = [](double) { return 0.0; };
  EXPECT_THROW(armijo_curve_search(phi, 0.0, 1.0, default_config()), NotDescent);
  EXPECT_THROW(armijo_curve_search(phi, 1.0, 1.0, default_config()), NotDescent);

  SearchConfig cfg = default_config();
  cfg.max_backtracks = 5;
  auto never = [](double) { return 10.0; };
  try {
    armijo_curve_search(never, -1.0, 0.0, cfg);
    FAIL() << "expected SearchStalled";
  } catch (const SearchStalled& e) {
    EXPECT_EQ(e.best_t(), std::ldexp(1.0, -5));
  }

  auto nan_phi = [](double) { return std::nan(""); };
  EXPECT_THROW(armijo_curve_search(nan_phi, -1.0, 0.0, default_config()),
               EvaluationFailure);

  cfg = default_config();
  cfg.delta0 = 1.5;
  EXPECT_THROW(armijo_curve_search(phi, -1.0, 0.0, cfg), DomainError);
  cfg = default_config();
  cfg.sigma = 1.0;
  EXPECT_THROW(armijo_curve_search(phi, -1.0, 0.0, cfg), DomainError);
  cfg = default_config();
  cfg.delta = 0.0;
  EXPECT_THROW(armijo_curve_search(phi, -1.0, 0.0, cfg), DomainError);
}

TEST(ArmijoCurveSearch, TrialsCountEvaluations) {
  int calls = 0;
  auto phi = [&](double t) {
    ++calls;
    return t > 0.1 ? 5.0 : 0.0;
  };
  const SearchOutcome out = armijo_curve_search(phi, -1.0, 1.0, default_config());
  EXPECT_EQ(out.trials, calls);
  EXPECT_EQ(out.t, 0.0625);
  EXPECT_EQ(out.trials, 5);
}

// Monotone and M = 0 nonmonotone searches see the same reference.
TEST(ArmijoCurveSearch, ZeroMemoryMatchesMonotone) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n01;
  for (int i = 0; i < 200; ++i) {
    Vector x(3), d(3), s(3);
    for (auto* v : {&x, &d, &s}) {
      for (auto& e : *v) e = n01(rng);
    }
    d = -x + 0.1 * d;  // descent for 0.5|x|^2 most of the time
    if (x.dot(d) >= 0) continue;
    const QuadraticCurve c(x, d, 3.0 * s);
    auto phi = [&](double t) { return half_sq(c.point(t)); };
    FHistory hist(0);
    hist.push(7.0);
    hist.push(half_sq(x));
    const SearchOutcome a = armijo_curve_search(phi, x.dot(d), half_sq(x), default_config());
    const SearchOutcome b =
        armijo_curve_search(phi, x.dot(d), nonmonotone_reference(hist), default_config());
    EXPECT_EQ(a.t, b.t);
    EXPECT_EQ(a.trials, b.trials);
    EXPECT_EQ(a.boundary, b.boundary);
  }
}

TEST(FHistory, Examples) {
  FHistory h0(5);
  EXPECT_THROW(nonmonotone_reference(h0), UsageError);
  h0.push(0.7);
  EXPECT_EQ(nonmonotone_reference(h0), 0.7);

  FHistory h2(2);
  h2.push(1.0);
  h2.push(0.8);
  h2.push(1.2);
  EXPECT_EQ(h2.size(), 3u);
  EXPECT_EQ(nonmonotone_reference(h2), 1.2);
  h2.push(0.5);
  EXPECT_EQ(h2.size(), 3u);
  EXPECT_EQ(nonmonotone_reference(h2), 1.2);
  h2.push(0.4);
  EXPECT_EQ(nonmonotone_reference(h2), 1.2);
  h2.push(0.3);
  EXPECT_EQ(nonmonotone_reference(h2), 0.5);

  FHistory mono(0);
  for (double f : {3.0, 5.0, 1.0}) {
    mono.push(f);
    EXPECT_EQ(nonmonotone_reference(mono), f);
  }
  EXPECT_THROW(FHistory(-1), DomainError);
}

TEST(FHistory, WindowLengthIsMinKPlusOneAndM) {
  for (int memory : {0, 1, 3, 20}) {
    FHistory h(memory);
    for (int k = 0; k < 50; ++k) {
      const std::size_t before = h.size();
      h.push(static_cast<double>(k % 7));
      EXPECT_EQ(h.size(), static_cast<std::size_t>(std::min(k, memory) + 1));
      EXPECT_LE(h.size(), before + 1);
      EXPECT_EQ(h.iteration(), k);
    }
  }
}
