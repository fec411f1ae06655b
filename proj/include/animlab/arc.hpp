#pragma once

#include <Eigen/Core>
#include <cmath>
#include <vector>

#include "animlab/easing.hpp"

namespace animlab {

/// Point on the half-ellipse from (0,0) at theta = pi to (1,0) at
/// theta = 2 pi, with vertical semi-axis aspect / 2.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> ellipse_point(Scalar aspect, Scalar theta) {
  using std::cos;
  using std::sin;
  return Eigen::Matrix<Scalar, 2, 1>(cos(theta) + Scalar(1), aspect * sin(theta)) / Scalar(2);
}

template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> ellipse_tangent(Scalar aspect, Scalar theta) {
  using std::cos;
  using std::sin;
  return Eigen::Matrix<Scalar, 2, 1>(-sin(theta), aspect * cos(theta)) / Scalar(2);
}

/// Carlson's symmetric elliptic integrals of the first and second kind.
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);

/// Incomplete elliptic integral of the second kind,
/// E(phi | m) = int_0^phi sqrt(1 - m sin^2 t) dt, for any real phi and m <= 1.
/// For m > 1 only |phi| <= asin(1 / sqrt(m)) is defined; beyond that it throws.
double elliptic_e(double phi, double m);

/// Arc length of the half-ellipse between theta1 <= theta2.
double arc_length(double aspect, double theta1, double theta2);

/// Fraction of the pi..2pi arc travelled at theta.
double sigma(double aspect, double theta);

/// theta in [pi, 2 pi] with sigma(theta) = t, by bisection.
double sigma_inverse(double aspect, double t);

/// Matrix-valued (2x1) easing that moves along the half-ellipse at a speed
/// proportional to g': position = ellipse_point(aspect, sigma^-1(g(t))).
/// sigma^-1 is tabulated once and interpolated with a monotone cubic.
class ArcEasing {
 public:
  ArcEasing(double aspect, Easing inner, double duration, std::size_t table_size = 1024);

  Eigen::Vector2d operator()(Time t) const;
  /// Right derivative; zero outside [0, d).
  Eigen::Vector2d derivative(Time t) const;
  double duration() const { return duration_; }
  Eigen::Vector2d terminal() const { return {1.0, 0.0}; }

  double aspect() const { return aspect_; }
  /// Interpolated sigma^-1.
  double theta(double u) const;

 private:
  double theta_slope(double u) const;
  std::size_t segment(double u) const;

  double aspect_;
  Easing inner_;
  double duration_;
  std::vector<double> thetas_;
  std::vector<double> slopes_;  // d theta / d u at each knot
};

ArcEasing make_arc_easing(double aspect, Easing inner, double duration,
                          std::size_t table_size = 1024);

}  // namespace animlab
