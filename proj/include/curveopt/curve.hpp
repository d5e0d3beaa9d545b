#pragma once

#include "curveopt/objective.hpp"

namespace curveopt {

/// Control points of the quadratic Bezier form of a search curve.
struct BezierControls {
  Vector p0;
  Vector p1;
  Vector p2;

  /// (1-t)^2 P0 + 2t(1-t) P1 + t^2 P2.
  Vector point(double t) const;
};

/// gamma(t) = x + t d + t^2 (s - d) on t in [0, 1].
///
/// The curve starts at x with velocity d and ends at x + s. With s == d it
/// degenerates to the segment from x to x + d.
class QuadraticCurve {
 public:
  QuadraticCurve(Vector x, Vector d, Vector s);

  const Vector& origin() const noexcept { return x_; }
  const Vector& initial_velocity() const noexcept { return d_; }
  const Vector& displacement() const noexcept { return s_; }

  /// Throws DomainError for t outside [0, 1]. point(1) is x + s exactly.
  Vector point(double t) const;
  Vector velocity(double t) const;
  BezierControls bezier() const;

 private:
  Vector x_;
  Vector d_;
  Vector s_;
  Vector s_minus_d_;
};

Vector curve_point(const QuadraticCurve& curve, double t);
Vector curve_velocity(const QuadraticCurve& curve, double t);
BezierControls bezier_controls(const QuadraticCurve& curve);

}  // namespace curveopt
