#include "animlab/arc.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace animlab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kErrTol = 8e-4;  // truncation error scales as kErrTol^6
}  // namespace

double carlson_rf(double x, double y, double z) {
  if (std::min({x, y, z}) < 0.0 || std::min({x + y, x + z, y + z}) <= 0.0) {
    throw std::domain_error("carlson_rf: invalid arguments");
  }
  double ave, dx, dy, dz;
  do {
    const double sx = std::sqrt(x);
    const double sy = std::sqrt(y);
    const double sz = std::sqrt(z);
    const double lambda = sx * (sy + sz) + sy * sz;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    ave = (x + y + z) / 3.0;
    dx = (ave - x) / ave;
    dy = (ave - y) / ave;
    dz = (ave - z) / ave;
  } while (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) > kErrTol);
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(ave);
}

double carlson_rd(double x, double y, double z) {
  if (std::min(x, y) < 0.0 || x + y <= 0.0 || z <= 0.0) {
    throw std::domain_error("carlson_rd: invalid arguments");
  }
  constexpr double c1 = 3.0 / 14.0;
  constexpr double c2 = 1.0 / 6.0;
  constexpr double c3 = 9.0 / 22.0;
  constexpr double c4 = 3.0 / 26.0;
  constexpr double c5 = 0.25 * c3;
  constexpr double c6 = 1.5 * c4;
  double sum = 0.0;
  double fac = 1.0;
  double ave, dx, dy, dz;
  do {
    const double sx = std::sqrt(x);
    const double sy = std::sqrt(y);
    const double sz = std::sqrt(z);
    const double lambda = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (z + lambda));
    fac *= 0.25;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    ave = 0.2 * (x + y + 3.0 * z);
    dx = (ave - x) / ave;
    dy = (ave - y) / ave;
    dz = (ave - z) / ave;
  } while (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) > kErrTol);
  const double ea = dx * dy;
  const double eb = dz * dz;
  const double ec = ea - eb;
  const double ed = ea - 6.0 * eb;
  const double ee = ed + ec + ec;
  return 3.0 * sum +
         fac *
             (1.0 + ed * (-c1 + c5 * ed - c6 * dz * ee) +
              dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea))) /
             (ave * std::sqrt(ave));
}

namespace {

// E(phi | m) for |phi| <= pi/2 and m < 1.
double elliptic_e_principal(double phi, double m) {
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double q = 1.0 - m * s * s;
  const double c2 = c * c;
  if (c2 == 0.0 && q == 0.0) return std::copysign(1.0, phi);
  return s * carlson_rf(c2, q, 1.0) - (m / 3.0) * s * s * s * carlson_rd(c2, q, 1.0);
}

}  // namespace

double elliptic_e(double phi, double m) {
  if (!std::isfinite(phi) || !std::isfinite(m)) throw std::domain_error("elliptic_e: non-finite");
  if (m == 0.0) return phi;
  if (m > 1.0) {
    const double limit = std::asin(1.0 / std::sqrt(m));
    if (std::abs(phi) > limit) {
      throw std::domain_error("elliptic_e: phi beyond the singular point for m > 1");
    }
    return elliptic_e_principal(phi, m);
  }
  // Reduce to |phi| <= pi/2 using E(phi + j pi) = E(phi) + 2 j E(pi/2).
  const double j = std::round(phi / kPi);
  const double reduced = phi - j * kPi;
  if (m == 1.0) return 2.0 * j + std::sin(reduced);
  const double part = elliptic_e_principal(reduced, m);
  if (j == 0.0) return part;
  const double complete = carlson_rf(0.0, 1.0 - m, 1.0) - (m / 3.0) * carlson_rd(0.0, 1.0 - m, 1.0);
  return 2.0 * j * complete + part;
}

double arc_length(double aspect, double theta1, double theta2) {
  if (!(aspect > 0.0) || !std::isfinite(aspect)) {
    throw std::invalid_argument("aspect must be positive and finite");
  }
  if (theta1 > theta2) throw std::invalid_argument("arc_length needs theta1 <= theta2");
  const double m = 1.0 - 1.0 / (aspect * aspect);
  return 0.5 * aspect * (elliptic_e(theta2, m) - elliptic_e(theta1, m));
}

double sigma(double aspect, double theta) {
  return arc_length(aspect, kPi, theta) / arc_length(aspect, kPi, 2.0 * kPi);
}

double sigma_inverse(double aspect, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("sigma_inverse needs t in [0, 1]");
  if (t == 0.0) return kPi;
  if (t == 1.0) return 2.0 * kPi;
  const double total = arc_length(aspect, kPi, 2.0 * kPi);
  double lo = kPi;
  double hi = 2.0 * kPi;
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < 60; ++i) {
    mid = 0.5 * (lo + hi);
    const double err = arc_length(aspect, kPi, mid) / total - t;
    if (std::abs(err) <= 1e-13) break;
    (err < 0.0 ? lo : hi) = mid;
  }
  return mid;
}

ArcEasing::ArcEasing(double aspect, Easing inner, double duration, std::size_t table_size)
    : aspect_(aspect), inner_(std::move(inner)), duration_(duration) {
  if (!(aspect > 0.0) || !std::isfinite(aspect)) {
    throw std::invalid_argument("aspect must be positive and finite");
  }
  if (!(duration > 0.0)) throw std::invalid_argument("arc easing duration must be positive");
  if (table_size < 64) throw std::invalid_argument("arc easing table needs at least 64 samples");
  const double total = arc_length(aspect, kPi, 2.0 * kPi);
  const double last = static_cast<double>(table_size - 1);
  thetas_.resize(table_size);
  slopes_.resize(table_size);
  for (std::size_t j = 0; j < table_size; ++j) {
    thetas_[j] = sigma_inverse(aspect, static_cast<double>(j) / last);
    // sigma'(theta) = |x'(theta)| / total.
    slopes_[j] = total / ellipse_tangent(aspect, thetas_[j]).norm();
  }
  // Fritsch-Carlson limiter keeps every cubic piece monotone.
  const double h = 1.0 / last;
  for (std::size_t j = 0; j + 1 < table_size; ++j) {
    const double secant = (thetas_[j + 1] - thetas_[j]) / h;
    const double a = slopes_[j] / secant;
    const double b = slopes_[j + 1] / secant;
    const double r2 = a * a + b * b;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      slopes_[j] = tau * a * secant;
      slopes_[j + 1] = tau * b * secant;
    }
  }
}

std::size_t ArcEasing::segment(double u) const {
  const double last = static_cast<double>(thetas_.size() - 1);
  return std::min(static_cast<std::size_t>(u * last), thetas_.size() - 2);
}

double ArcEasing::theta(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  const double h = 1.0 / static_cast<double>(thetas_.size() - 1);
  const std::size_t j = segment(u);
  const double s = (u - static_cast<double>(j) * h) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * thetas_[j] + (s3 - 2 * s2 + s) * h * slopes_[j] +
         (-2 * s3 + 3 * s2) * thetas_[j + 1] + (s3 - s2) * h * slopes_[j + 1];
}

double ArcEasing::theta_slope(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  const double h = 1.0 / static_cast<double>(thetas_.size() - 1);
  const std::size_t j = segment(u);
  const double s = (u - static_cast<double>(j) * h) / h;
  const double s2 = s * s;
  return ((6 * s2 - 6 * s) * thetas_[j] + (-6 * s2 + 6 * s) * thetas_[j + 1]) / h +
         (3 * s2 - 4 * s + 1) * slopes_[j] + (3 * s2 - 2 * s) * slopes_[j + 1];
}

Eigen::Vector2d ArcEasing::operator()(Time t) const {
  if (t <= 0.0) return Eigen::Vector2d::Zero();
  if (t >= duration_) return terminal();
  const double u = inner_(t / duration_ * inner_.duration());
  return ellipse_point(aspect_, theta(u));
}

Eigen::Vector2d ArcEasing::derivative(Time t) const {
  if (t < 0.0 || t >= duration_) return Eigen::Vector2d::Zero();
  const double scale = inner_.duration() / duration_;
  const double tau = t * scale;
  const double u = inner_(tau);
  return ellipse_tangent(aspect_, theta(u)) * theta_slope(u) * inner_.derivative(tau) * scale;
}

ArcEasing make_arc_easing(double aspect, Easing inner, double duration, std::size_t table_size) {
  return ArcEasing(aspect, std::move(inner), duration, table_size);
}

}  // namespace animlab
