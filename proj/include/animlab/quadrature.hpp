#pragma once

#include <functional>
#include <span>

namespace animlab {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int evaluations = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of f over [a, b].
/// Splits the worst interval until the summed error estimate drops below
/// `abs_tol` or `max_intervals` is reached.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-10, int max_intervals = 2000);

/// Same, but integrates piece by piece between sorted `breakpoints` inside
/// (a, b). Use it when f has known jumps.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints, double abs_tol = 1e-10,
                           int max_intervals = 2000);

}  // namespace animlab
