// Analytic test families with closed-form gradients.

#include <charconv>
#include <cmath>
#include <random>
#include <string>

#include "curveopt/errors.hpp"
#include "curveopt/objective.hpp"
#include "summation.hpp"

namespace curveopt {

namespace {

using detail::CompensatedSum;

double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double compensated_dot(const Vector& a, const Vector& b) {
  CompensatedSum sum;
  for (Eigen::Index i = 0; i < a.size(); ++i) sum.add(a[i] * b[i]);
  return sum.result();
}

// log(1 + exp(c'x)) + 0.5 |x|^2
class LogisticRidge final : public Objective {
 public:
  explicit LogisticRidge(Vector c) : c_(std::move(c)) {}

  double value(const Vector& x) const override {
    CompensatedSum sum;
    sum.add(softplus(compensated_dot(c_, x)));
    for (Eigen::Index i = 0; i < x.size(); ++i) sum.add(0.5 * x[i] * x[i]);
    return sum.result();
  }

  void gradient(const Vector& x, Vector& g) const override {
    const double w = sigmoid(compensated_dot(c_, x));
    g = w * c_ + x;
  }

  const Vector& weights() const { return c_; }

 private:
  Vector c_;
};

// 0.5 sum lambda_i x_i^2 with lambda log-spaced on [1, condition].
class DiagonalQuadratic final : public Objective {
 public:
  explicit DiagonalQuadratic(Vector lambda) : lambda_(std::move(lambda)) {}

  double value(const Vector& x) const override {
    CompensatedSum sum;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      sum.add(0.5 * lambda_[i] * x[i] * x[i]);
    }
    return sum.result();
  }

  void gradient(const Vector& x, Vector& g) const override {
    g = lambda_.cwiseProduct(x);
  }

 private:
  Vector lambda_;
};

// Chained Rosenbrock: sum 100 (x_{i+1} - x_i^2)^2 + (1 - x_i)^2.
class ChainedRosenbrock final : public Objective {
 public:
  double value(const Vector& x) const override {
    CompensatedSum sum;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      const double a = x[i + 1] - x[i] * x[i];
      const double b = 1.0 - x[i];
      sum.add(100.0 * a * a);
      sum.add(b * b);
    }
    return sum.result();
  }

  void gradient(const Vector& x, Vector& g) const override {
    g.setZero();
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      const double a = x[i + 1] - x[i] * x[i];
      g[i] += -400.0 * x[i] * a - 2.0 * (1.0 - x[i]);
      g[i + 1] += 200.0 * a;
    }
  }
};

// Extended Powell singular function, blocks of four variables.
class ExtendedPowell final : public Objective {
 public:
  double value(const Vector& x) const override {
    CompensatedSum sum;
    for (Eigen::Index j = 0; j + 3 < x.size(); j += 4) {
      const double t1 = x[j] + 10.0 * x[j + 1];
      const double t2 = x[j + 2] - x[j + 3];
      const double t3 = x[j + 1] - 2.0 * x[j + 2];
      const double t4 = x[j] - x[j + 3];
      sum.add(t1 * t1);
      sum.add(5.0 * t2 * t2);
      sum.add(t3 * t3 * t3 * t3);
      sum.add(10.0 * t4 * t4 * t4 * t4);
    }
    return sum.result();
  }

  void gradient(const Vector& x, Vector& g) const override {
    for (Eigen::Index j = 0; j + 3 < x.size(); j += 4) {
      const double t1 = x[j] + 10.0 * x[j + 1];
      const double t2 = x[j + 2] - x[j + 3];
      const double t3 = x[j + 1] - 2.0 * x[j + 2];
      const double t4 = x[j] - x[j + 3];
      const double c3 = 4.0 * t3 * t3 * t3;
      const double c4 = 40.0 * t4 * t4 * t4;
      g[j] = 2.0 * t1 + c4;
      g[j + 1] = 20.0 * t1 + c3;
      g[j + 2] = 10.0 * t2 - 2.0 * c3;
      g[j + 3] = -10.0 * t2 - c4;
    }
  }
};

// Broyden tridiagonal residuals r_i = (3 - 2x_i)x_i - x_{i-1} - 2x_{i+1} + 1
// with x_0 = x_{n+1} = 0; f = sum r_i^2.
class BroydenTridiagonal final : public Objective {
 public:
  double value(const Vector& x) const override {
    CompensatedSum sum;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double r = residual(x, i);
      sum.add(r * r);
    }
    return sum.result();
  }

  void gradient(const Vector& x, Vector& g) const override {
    const Eigen::Index n = x.size();
    Vector r(n);
    for (Eigen::Index i = 0; i < n; ++i) r[i] = residual(x, i);
    for (Eigen::Index j = 0; j < n; ++j) {
      double v = r[j] * (3.0 - 4.0 * x[j]);
      if (j + 1 < n) v -= r[j + 1];
      if (j > 0) v -= 2.0 * r[j - 1];
      g[j] = 2.0 * v;
    }
  }

 private:
  static double residual(const Vector& x, Eigen::Index i) {
    const double left = i > 0 ? x[i - 1] : 0.0;
    const double right = i + 1 < x.size() ? x[i + 1] : 0.0;
    return (3.0 - 2.0 * x[i]) * x[i] - left - 2.0 * right + 1.0;
  }
};

// Trigonometric function with residuals scaled by 1/n:
// r_i = (n - sum_j cos x_j + i (1 - cos x_i) - sin x_i) / n, i = 1..n.
// Started from 0.5 everywhere; the classical 1/n start is already stationary
// to within 1e-3 for n >= 10.
class Trigonometric final : public Objective {
 public:
  double value(const Vector& x) const override {
    const Vector r = residuals(x);
    CompensatedSum sum;
    for (Eigen::Index i = 0; i < r.size(); ++i) sum.add(r[i] * r[i]);
    return sum.result();
  }

  void gradient(const Vector& x, Vector& g) const override {
    const Eigen::Index n = x.size();
    const Vector r = residuals(x);
    CompensatedSum total;
    for (Eigen::Index i = 0; i < n; ++i) total.add(r[i]);
    const double r_sum = total.result();
    const double scale = 2.0 / static_cast<double>(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double idx = static_cast<double>(j + 1);
      const double sj = std::sin(x[j]);
      const double cj = std::cos(x[j]);
      g[j] = scale * (sj * r_sum + r[j] * (idx * sj - cj));
    }
  }

 private:
  static Vector residuals(const Vector& x) {
    const Eigen::Index n = x.size();
    const double nd = static_cast<double>(n);
    CompensatedSum cos_sum;
    for (Eigen::Index j = 0; j < n; ++j) cos_sum.add(std::cos(x[j]));
    const double base = nd - cos_sum.result();
    Vector r(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double idx = static_cast<double>(i + 1);
      r[i] = (base + idx * (1.0 - std::cos(x[i])) - std::sin(x[i])) / nd;
    }
    return r;
  }
};

// Solves u = sigmoid(-|c|^2 u) by bisection; the minimizer is -u c.
Vector logistic_minimizer(const Vector& c) {
  const double c2 = c.squaredNorm();
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (mid - sigmoid(-c2 * mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return -0.5 * (lo + hi) * c;
}

int parse_dim(std::string_view text, std::string_view key) {
  int n = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc() || ptr != text.data() + text.size() || n <= 0) {
    throw ConfigError("bad dimension in problem key '" + std::string(key) + "'");
  }
  return n;
}

double parse_real(std::string_view text, std::string_view key) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("bad parameter in problem key '" + std::string(key) + "'");
  }
  return v;
}

constexpr double kDefaultCondition = 100.0;

}  // namespace

Vector logistic_weights(int n, std::uint64_t seed) {
  if (n <= 0) throw DomainError("logistic: dimension must be positive");
  if (n == 2) return Vector{{34.0, -1.0}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  Vector c(n);
  for (int i = 0; i < n; ++i) c[i] = dist(rng);
  return c;
}

Problem logistic_ridge(const Vector& c) {
  auto objective = std::make_shared<const LogisticRidge>(c);
  const Eigen::Index n = c.size();
  Problem p("logistic:" + std::to_string(n), objective, Vector::Ones(n));
  p.with_strong_convexity(1.0);
  p.with_lipschitz(0.25 * c.squaredNorm() + 1.0);
  Vector xs = logistic_minimizer(c);
  const double fs = objective->value(xs);
  p.with_known_min(std::move(xs), fs);
  return p;
}

Problem quadratic_diag(int n, double condition) {
  if (n <= 0) throw DomainError("quad: dimension must be positive");
  if (!(condition >= 1.0) || !std::isfinite(condition)) {
    throw DomainError("quad: condition number must be >= 1");
  }
  Vector lambda(n);
  for (int i = 0; i < n; ++i) {
    lambda[i] = n == 1 ? 1.0
                       : std::pow(condition, static_cast<double>(i) /
                                                 static_cast<double>(n - 1));
  }
  const double L = lambda.maxCoeff();
  Problem p("quad:" + std::to_string(n),
            std::make_shared<const DiagonalQuadratic>(lambda), Vector::Ones(n));
  p.with_strong_convexity(1.0);
  p.with_lipschitz(L);
  p.with_known_min(Vector::Zero(n), 0.0);
  return p;
}

Problem rosenbrock(int n) {
  if (n < 2) throw DomainError("rosen: dimension must be at least 2");
  Vector x0(n);
  for (int i = 0; i < n; ++i) x0[i] = i % 2 == 0 ? -1.2 : 1.0;
  Problem p("rosen:" + std::to_string(n),
            std::make_shared<const ChainedRosenbrock>(), std::move(x0));
  p.with_known_min(Vector::Ones(n), 0.0);
  return p;
}

Problem extended_powell(int n) {
  if (n <= 0 || n % 4 != 0) {
    throw DomainError("powell: dimension must be a positive multiple of 4");
  }
  Vector x0(n);
  for (int j = 0; j < n; j += 4) {
    x0[j] = 3.0;
    x0[j + 1] = -1.0;
    x0[j + 2] = 0.0;
    x0[j + 3] = 1.0;
  }
  Problem p("powell:" + std::to_string(n),
            std::make_shared<const ExtendedPowell>(), std::move(x0));
  p.with_known_min(Vector::Zero(n), 0.0);
  return p;
}

Problem broyden_tridiagonal(int n) {
  if (n <= 0) throw DomainError("broyden: dimension must be positive");
  return Problem("broyden:" + std::to_string(n),
                 std::make_shared<const BroydenTridiagonal>(),
                 Vector::Constant(n, -1.0));
}

Problem trigonometric(int n) {
  if (n <= 0) throw DomainError("trig: dimension must be positive");
  return Problem("trig:" + std::to_string(n),
                 std::make_shared<const Trigonometric>(),
                 Vector::Constant(n, 0.5));
}

bool is_randomized(std::string_view key) {
  return key.starts_with("logistic:") && key != "logistic:2";
}

Problem make_problem(std::string_view key, std::uint64_t seed) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = key.find(':', start);
    parts.push_back(key.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw ConfigError("problem key '" + std::string(key) +
                      "' must look like family:dim[:param]");
  }
  const std::string_view family = parts[0];
  const int n = parse_dim(parts[1], key);
  const bool has_param = parts.size() == 3;

  auto reject_param = [&] {
    if (has_param) {
      throw ConfigError("family '" + std::string(family) +
                        "' takes no parameter: '" + std::string(key) + "'");
    }
  };

  try {
    Problem p = [&]() -> Problem {
      if (family == "logistic") {
        reject_param();
        return logistic_ridge(logistic_weights(n, seed));
      }
      if (family == "quad") {
        double condition = kDefaultCondition;
        if (has_param) {
          const std::string_view param = parts[2];
          if (!param.starts_with("k")) {
            throw ConfigError("quad parameter must be k<condition>: '" +
                              std::string(key) + "'");
          }
          condition = parse_real(param.substr(1), key);
        }
        return quadratic_diag(n, condition);
      }
      if (family == "rosen") {
        reject_param();
        return rosenbrock(n);
      }
      if (family == "powell") {
        reject_param();
        return extended_powell(n);
      }
      if (family == "broyden") {
        reject_param();
        return broyden_tridiagonal(n);
      }
      if (family == "trig") {
        reject_param();
        return trigonometric(n);
      }
      throw ConfigError("unknown problem family '" + std::string(family) + "'");
    }();
    p.rename(std::string(key));
    return p;
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

std::vector<std::string> default_suite_keys() {
  std::vector<std::string> keys;
  const int dims[] = {2, 10, 100, 1000};
  for (int n : dims) keys.push_back("logistic:" + std::to_string(n));
  for (int n : dims) keys.push_back("quad:" + std::to_string(n) + ":k100");
  for (int n : dims) keys.push_back("rosen:" + std::to_string(n));
  for (int n : {4, 100, 1000}) keys.push_back("powell:" + std::to_string(n));
  for (int n : dims) keys.push_back("broyden:" + std::to_string(n));
  for (int n : dims) keys.push_back("trig:" + std::to_string(n));
  return keys;
}

}  // namespace curveopt
