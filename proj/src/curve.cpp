#include "curveopt/curve.hpp"

#include <string>

#include "curveopt/errors.hpp"

namespace curveopt {

namespace {

void check_parameter(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError("curve parameter t=" + std::to_string(t) +
                      " outside [0, 1]");
  }
}

}  // namespace

Vector BezierControls::point(double t) const {
  check_parameter(t);
  const double u = 1.0 - t;
  return (u * u) * p0 + (2.0 * t * u) * p1 + (t * t) * p2;
}

QuadraticCurve::QuadraticCurve(Vector x, Vector d, Vector s)
    : x_(std::move(x)), d_(std::move(d)), s_(std::move(s)) {
  if (d_.size() != x_.size() || s_.size() != x_.size()) {
    throw DimensionError("curve: x, d and s must have equal length");
  }
  s_minus_d_ = s_ - d_;
}

Vector QuadraticCurve::point(double t) const {
  check_parameter(t);
  if (t == 1.0) return x_ + s_;
  return x_ + t * d_ + (t * t) * s_minus_d_;
}

Vector QuadraticCurve::velocity(double t) const {
  check_parameter(t);
  if (t == 0.0) return d_;
  return d_ + (2.0 * t) * s_minus_d_;
}

BezierControls QuadraticCurve::bezier() const {
  return {x_, x_ + 0.5 * d_, x_ + s_};
}

Vector curve_point(const QuadraticCurve& curve, double t) { return curve.point(t); }

Vector curve_velocity(const QuadraticCurve& curve, double t) {
  return curve.velocity(t);
}

BezierControls bezier_controls(const QuadraticCurve& curve) {
  return curve.bezier();
}

}  // namespace curveopt
