#pragma once

#include "curveopt/objective.hpp"

namespace curveopt {

/// The two most recent iterates. At k = 0 both equal x^0, so the momentum
/// term vanishes.
struct MomentumState {
  Vector x_prev;
  Vector x_curr;

  static MomentumState at_start(const Vector& x0) { return {x0, x0}; }

  Vector momentum() const { return x_curr - x_prev; }
  void advance(const Vector& x_next) {
    x_prev = std::move(x_curr);
    x_curr = x_next;
  }
  void reset() { x_prev = x_curr; }
};

struct DirectionParams {
  double alpha = 1.0;  // gradient weight of the heavy-ball step
  double beta = 0.9;   // momentum weight
  double g_f = 0.125;  // scale of the gradient-related direction

  void validate() const;
};

/// -g_f * g.
Vector gradient_direction(const Vector& g, double g_f);

/// -alpha * g + beta * (x^k - x^{k-1}).
Vector heavy_ball_direction(const Vector& g, const MomentumState& mom,
                            const DirectionParams& p);

/// Strict descent test g^T s < 0.
bool is_descent(const Vector& g, const Vector& s);

struct SafeguardedDirection {
  Vector s;
  double beta_used;
  int halvings;
};

/// Tries beta, beta/2, ..., beta/2^(max_halvings-1) and returns the first
/// heavy-ball direction that is a descent direction; otherwise beta drops to
/// exactly zero, which is a descent direction whenever g != 0.
SafeguardedDirection safeguard_beta(const Vector& g, const MomentumState& mom,
                                    const DirectionParams& p,
                                    int max_halvings = 50);

}  // namespace curveopt
