#include "curveopt/directions.hpp"

#include "curveopt/errors.hpp"

namespace curveopt {

void DirectionParams::validate() const {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  if (!(beta >= 0.0)) throw DomainError("beta must be nonnegative");
  if (!(g_f > 0.0)) throw DomainError("g_f must be positive");
}

Vector gradient_direction(const Vector& g, double g_f) { return -g_f * g; }

Vector heavy_ball_direction(const Vector& g, const MomentumState& mom,
                            const DirectionParams& p) {
  if (g.size() != mom.x_curr.size() || mom.x_prev.size() != mom.x_curr.size()) {
    throw DimensionError("heavy_ball_direction: size mismatch");
  }
  return -p.alpha * g + p.beta * (mom.x_curr - mom.x_prev);
}

bool is_descent(const Vector& g, const Vector& s) { return g.dot(s) < 0.0; }

SafeguardedDirection safeguard_beta(const Vector& g, const MomentumState& mom,
                                    const DirectionParams& p,
                                    int max_halvings) {
  DirectionParams trial = p;
  for (int h = 0; h < max_halvings; ++h) {
    Vector s = heavy_ball_direction(g, mom, trial);
    if (is_descent(g, s)) return {std::move(s), trial.beta, h};
    trial.beta *= 0.5;
  }
  trial.beta = 0.0;
  return {heavy_ball_direction(g, mom, trial), 0.0, max_halvings};
}

}  // namespace curveopt
