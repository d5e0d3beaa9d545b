#pragma once

#include <cstdint>

namespace curveopt {

struct StrongConvexSpec {
  double mu;
  double L;
};

struct HeavyBallParams {
  double alpha_star;
  double beta_star;
  double q_star;  // local linear rate of the heavy-ball iteration
};

/// alpha* = 4 / (sqrt L + sqrt mu)^2, beta* = q*^2,
/// q* = (sqrt L - sqrt mu) / (sqrt L + sqrt mu). Requires 0 < mu <= L.
HeavyBallParams optimal_hb_params(const StrongConvexSpec& spec);

/// Lipschitz constant of phi'(t) on [0, 1] for a quadratic curve whose
/// directions satisfy |d|, |s| <= c |grad f(x)|: (4c + 37 c^2 L) |grad|^2.
double curve_smoothness_bound(double c, double L, double grad_norm);

/// Steps at or below 2 c1 (1 - sigma) / (4c + 37 c^2 L) always pass the
/// Armijo curve test.
double delta_low(double c1, double c, double L, double sigma);

struct ComplexityInputs {
  double f0;
  double f_low;
  double sigma;
  double c1;
  double c;
  double delta0;
  double delta;
  double eps;
  double L;
};

/// ceil((f0 - f_low) / (sigma c1 min(delta0, delta * delta_low) eps^2)).
std::int64_t iteration_bound(const ComplexityInputs& in);

}  // namespace curveopt
