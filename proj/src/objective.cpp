#include "curveopt/objective.hpp"

#include <cmath>
#include <string>

#include "curveopt/errors.hpp"

namespace curveopt {

namespace {

std::vector<double> to_std(const Vector& x) {
  return std::vector<double>(x.data(), x.data() + x.size());
}

}  // namespace

Problem::Problem(std::string name, std::shared_ptr<const Objective> objective,
                 Vector x0)
    : name_(std::move(name)), objective_(std::move(objective)),
      x0_(std::move(x0)) {
  if (!objective_) throw UsageError("problem '" + name_ + "' has no objective");
  if (x0_.size() == 0) throw DimensionError("problem '" + name_ + "' has dim 0");
}

Problem& Problem::with_lipschitz(double L) {
  if (!(L > 0.0)) throw DomainError("Lipschitz constant must be positive");
  L_ = L;
  return *this;
}

Problem& Problem::with_strong_convexity(double mu) {
  if (!(mu > 0.0)) throw DomainError("strong convexity modulus must be positive");
  mu_ = mu;
  return *this;
}

Problem& Problem::with_known_min(Vector x, double f) {
  if (x.size() != dim()) throw DimensionError("known minimizer has wrong dimension");
  known_min_ = KnownMinimum{std::move(x), f};
  return *this;
}

void Problem::check_point(const Vector& x) const {
  if (x.size() != dim()) {
    throw DimensionError(name_ + ": expected a point of dimension " +
                         std::to_string(dim()) + ", got " +
                         std::to_string(x.size()));
  }
  if (!x.allFinite()) {
    throw EvaluationFailure(name_ + ": non-finite evaluation point", to_std(x));
  }
}

double Problem::value(const Vector& x) const {
  check_point(x);
  const double f = objective_->value(x);
  if (!std::isfinite(f)) {
    throw EvaluationFailure(name_ + ": non-finite objective value", to_std(x));
  }
  return f;
}

Vector Problem::gradient(const Vector& x) const {
  check_point(x);
  Vector g(x.size());
  objective_->gradient(x, g);
  if (!g.allFinite()) {
    throw EvaluationFailure(name_ + ": non-finite gradient", to_std(x));
  }
  return g;
}

Evaluation Problem::evaluate(const Vector& x) const {
  const double f = value(x);
  return {f, gradient(x)};
}

double fd_check(const Problem& problem, const Vector& x, double h) {
  if (!(h > 0.0)) throw DomainError("fd_check: step must be positive");
  const Vector g = problem.gradient(x);
  double worst = 0.0;
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double f_plus = problem.value(probe);
    probe[i] = x[i] - h;
    const double f_minus = problem.value(probe);
    probe[i] = x[i];
    const double slope = (f_plus - f_minus) / (2.0 * h);
    worst = std::max(worst, std::abs(slope - g[i]) / (1.0 + std::abs(g[i])));
  }
  return worst;
}

}  // namespace curveopt
