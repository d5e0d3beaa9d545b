#include "curveopt/theory.hpp"

#include <algorithm>
#include <cmath>

#include "curveopt/errors.hpp"

namespace curveopt {

HeavyBallParams optimal_hb_params(const StrongConvexSpec& spec) {
  if (!(spec.mu > 0.0) || !(spec.L >= spec.mu) || !std::isfinite(spec.L)) {
    throw DomainError("optimal_hb_params requires 0 < mu <= L");
  }
  const double rl = std::sqrt(spec.L);
  const double rm = std::sqrt(spec.mu);
  const double sum = rl + rm;
  const double q = (rl - rm) / sum;
  return {4.0 / (sum * sum), q * q, q};
}

double curve_smoothness_bound(double c, double L, double grad_norm) {
  if (!(c > 0.0) || !(L > 0.0)) {
    throw DomainError("curve_smoothness_bound requires c > 0 and L > 0");
  }
  if (!(grad_norm >= 0.0)) throw DomainError("gradient norm must be nonnegative");
  return (4.0 * c + 37.0 * c * c * L) * grad_norm * grad_norm;
}

double delta_low(double c1, double c, double L, double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw DomainError("sigma must lie in (0, 1)");
  if (!(c1 > 0.0) || !(c > 0.0) || !(L > 0.0)) {
    throw DomainError("delta_low requires c1, c, L > 0");
  }
  return 2.0 * c1 * (1.0 - sigma) / (4.0 * c + 37.0 * c * c * L);
}

std::int64_t iteration_bound(const ComplexityInputs& in) {
  if (!(in.eps > 0.0)) throw DomainError("eps must be positive");
  if (!(in.f0 >= in.f_low)) throw DomainError("f0 must be >= f_low");
  if (!(in.delta0 > 0.0 && in.delta0 <= 1.0)) {
    throw DomainError("delta0 must lie in (0, 1]");
  }
  if (!(in.delta > 0.0 && in.delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  const double low = delta_low(in.c1, in.c, in.L, in.sigma);
  const double step = std::min(in.delta0, in.delta * low);
  const double bound = (in.f0 - in.f_low) / (in.sigma * in.c1 * step * in.eps * in.eps);
  return static_cast<std::int64_t>(std::ceil(bound));
}

}  // namespace curveopt
