#include "animlab/easing.hpp"

#include <stdexcept>

namespace animlab {
namespace curves {
namespace {

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Alternating Irwin-Hall sum sum_k (-1)^k C(n,k) (x-k)^p for k <= floor(x).
double irwin_hall_sum(int n, int p, double x) {
  const int kmax = static_cast<int>(std::floor(x));
  double sum = 0.0;
  for (int k = 0; k <= std::min(kmax, n); ++k) {
    const double term = binomial(n, k) * std::pow(x - k, p);
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

}  // namespace

double irwin_hall_cdf(int n, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= n) return 1.0;
  if (x > 0.5 * n) return 1.0 - irwin_hall_cdf(n, n - x);
  return irwin_hall_sum(n, n, x) / factorial(n);
}

double irwin_hall_pdf(int n, double x) {
  if (x < 0.0 || x >= n) return 0.0;
  if (x > 0.5 * n) x = n - x;
  return irwin_hall_sum(n, n - 1, x) / factorial(n - 1);
}

double erlang_cdf(int n, double x) {
  if (x <= 0.0) return 0.0;
  if (x < n + 1.0) {
    // Tail series e^-x sum_{k>=n} x^k/k!; avoids cancellation near zero.
    double term = std::exp(-x + n * std::log(x) - std::lgamma(n + 1.0));
    double sum = 0.0;
    for (int k = n + 1; term > 1e-18 * sum || k <= n + 1; ++k) {
      sum += term;
      term *= x / k;
    }
    return std::min(sum, 1.0);
  }
  double partial = 0.0;
  double term = 1.0;
  for (int k = 0; k < n; ++k) {
    partial += term;
    term *= x / (k + 1);
  }
  return 1.0 - std::exp(-x) * partial;
}

double erlang_pdf(int n, double x) {
  if (x < 0.0) return 0.0;
  if (x == 0.0) return n == 1 ? 1.0 : 0.0;
  return std::exp(-x + (n - 1) * std::log(x) - std::lgamma(static_cast<double>(n)));
}

}  // namespace curves

Easing::Easing(std::string name, double duration, Curve value, Curve derivative)
    : name_(std::move(name)),
      duration_(duration),
      value_(std::move(value)),
      derivative_(std::move(derivative)) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("easing duration must be positive and finite");
  }
  if (!value_) throw std::invalid_argument("easing needs a value curve");
}

double Easing::operator()(Time t) const {
  if (t <= 0.0) return 0.0;
  if (t >= duration_) return 1.0;
  return value_(t);
}

double Easing::derivative(Time t) const {
  if (t < 0.0 || t >= duration_) return 0.0;
  if (derivative_) return derivative_(t);
  const double h = duration_ * 1e-6;
  return ((*this)(t + h) - (*this)(t - h)) / (2.0 * h);
}

namespace {

struct Builder {
  double d;

  Easing operator()(const easing_kind::Smoothstep&) const {
    const double dd = d;
    return Easing(
        "smoothstep", d, [dd](double t) { return curves::smoothstep(t / dd); },
        [dd](double t) { return curves::smoothstep_derivative(t / dd) / dd; });
  }

  Easing operator()(const easing_kind::BSpline& k) const {
    if (k.order < 1) throw std::invalid_argument("bspline order must be at least 1");
    if (k.order > 16) throw std::invalid_argument("bspline order above 16 is not supported");
    const int n = k.order;
    const double width = d / n;
    return Easing(
        "bspline" + std::to_string(n), d,
        [n, width](double t) { return curves::irwin_hall_cdf(n, t / width); },
        [n, width](double t) { return curves::irwin_hall_pdf(n, t / width) / width; });
  }

  Easing operator()(const easing_kind::OnePoleCascade& k) const {
    if (k.stages < 1) throw std::invalid_argument("one-pole cascade needs at least one stage");
    const double a = k.a ? *k.a : one_pole_cascade_rate(k.stages, d);
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw std::invalid_argument("one-pole rate must be positive");
    }
    const int n = k.stages;
    const double end = curves::erlang_cdf(n, a * d);
    return Easing(
        "one_pole_cascade" + std::to_string(n), d,
        [n, a, end](double t) { return curves::erlang_cdf(n, a * t) / end; },
        [n, a, end](double t) { return a * curves::erlang_pdf(n, a * t) / end; });
  }
};

}  // namespace

Easing make_easing(const EasingKind& kind, double duration) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("easing duration must be positive and finite");
  }
  return std::visit(Builder{duration}, kind);
}

Easing make_linear(double duration) {
  if (!(duration > 0.0)) throw std::invalid_argument("easing duration must be positive");
  return Easing(
      "linear", duration, [duration](double t) { return t / duration; },
      [duration](double) { return 1.0 / duration; });
}

double one_pole_cascade_rate(int stages, double duration, double reach) {
  if (stages < 1 || !(duration > 0.0) || !(reach > 0.0 && reach < 1.0)) {
    throw std::invalid_argument("invalid one-pole cascade parameters");
  }
  // Bisection on the dimensionless time x = a d.
  double lo = 0.0;
  double hi = 1.0;
  while (curves::erlang_cdf(stages, hi) < reach) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (curves::erlang_cdf(stages, mid) < reach ? lo : hi) = mid;
  }
  return hi / duration;
}

double eval_easing(const Easing& e, Time t) { return e(t); }

double easing_derivative(const Easing& e, Time t) { return e.derivative(t); }

Easing warp_easing(const Easing& e, std::function<double(double)> w,
                   std::function<double(double)> dw) {
  if (!w) throw std::invalid_argument("warp function is empty");
  Easing::Curve derivative;
  if (dw) {
    derivative = [e, dw](double t) { return dw(e(t)) * e.derivative(t); };
  }
  return Easing("warp(" + e.name() + ")", e.duration(), [e, w](double t) { return w(e(t)); },
                std::move(derivative));
}

}  // namespace animlab
