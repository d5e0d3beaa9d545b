#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace curveopt {

using Vector = Eigen::VectorXd;

/// Smooth function R^n -> R with a closed-form gradient.
///
/// Implementations must be deterministic and free of mutable state so that a
/// single instance can be shared by concurrent runs.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual double value(const Vector& x) const = 0;
  virtual void gradient(const Vector& x, Vector& g) const = 0;
};

struct Evaluation {
  double f;
  Vector g;
};

struct KnownMinimum {
  Vector x;
  double f;
};

/// A named test problem: objective plus the metadata the solvers and the
/// theory checks consume.
class Problem {
 public:
  Problem(std::string name, std::shared_ptr<const Objective> objective,
          Vector x0);

  const std::string& name() const noexcept { return name_; }
  Eigen::Index dim() const noexcept { return x0_.size(); }
  const Vector& x0() const noexcept { return x0_; }

  const std::optional<double>& lipschitz_L() const noexcept { return L_; }
  const std::optional<double>& strong_mu() const noexcept { return mu_; }
  const std::optional<KnownMinimum>& known_min() const noexcept {
    return known_min_;
  }

  Problem& rename(std::string name) {
    name_ = std::move(name);
    return *this;
  }
  Problem& with_lipschitz(double L);
  Problem& with_strong_convexity(double mu);
  Problem& with_known_min(Vector x, double f);

  /// Objective value; throws DimensionError or EvaluationFailure.
  double value(const Vector& x) const;
  /// Gradient; throws DimensionError or EvaluationFailure.
  Vector gradient(const Vector& x) const;
  Evaluation evaluate(const Vector& x) const;

 private:
  void check_point(const Vector& x) const;

  std::string name_;
  std::shared_ptr<const Objective> objective_;
  Vector x0_;
  std::optional<double> L_;
  std::optional<double> mu_;
  std::optional<KnownMinimum> known_min_;
};

/// Per-run decorator counting function and gradient evaluations.
class CountingProblem {
 public:
  explicit CountingProblem(const Problem& problem) : problem_(problem) {}

  const Problem& problem() const noexcept { return problem_; }

  double value(const Vector& x) {
    ++f_evals_;
    return problem_.value(x);
  }
  Vector gradient(const Vector& x) {
    ++g_evals_;
    return problem_.gradient(x);
  }
  Evaluation evaluate(const Vector& x) {
    double f = value(x);
    return {f, gradient(x)};
  }

  std::int64_t f_evals() const noexcept { return f_evals_; }
  std::int64_t g_evals() const noexcept { return g_evals_; }

 private:
  const Problem& problem_;
  std::int64_t f_evals_ = 0;
  std::int64_t g_evals_ = 0;
};

/// Largest coordinatewise discrepancy between the analytic gradient and a
/// central difference with step h, each scaled by 1/(1 + |g_i|).
double fd_check(const Problem& problem, const Vector& x, double h);

// Problem families.

Problem logistic_ridge(const Vector& c);
Problem quadratic_diag(int n, double condition);
Problem rosenbrock(int n);
Problem extended_powell(int n);
Problem broyden_tridiagonal(int n);
Problem trigonometric(int n);

/// The logistic-ridge weights used for keys `logistic:n`. n == 2 gives the
/// fixed vector (34, -1); other sizes draw from U[-5, 5] with the seed.
Vector logistic_weights(int n, std::uint64_t seed);

/// Builds a problem from a `family:dim[:param]` key, e.g. `logistic:2`,
/// `quad:100:k1e4`, `rosen:1000`. Throws ConfigError on a malformed key.
Problem make_problem(std::string_view key, std::uint64_t seed = 0);

/// Whether the key names a problem whose data depends on the seed.
bool is_randomized(std::string_view key);

/// Keys of the default benchmark suite (every family at n in
/// {2, 10, 100, 1000} where the family allows it).
std::vector<std::string> default_suite_keys();

}  // namespace curveopt
