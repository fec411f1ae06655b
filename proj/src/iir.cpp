#include "animlab/iir.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "animlab/ode.hpp"

namespace animlab {
namespace {

using Complex = std::complex<double>;

constexpr Eigen::Index kMaxOrder = 8;

void require_siso(const StateSpaceSystem& sys) {
  if (sys.inputs() != 1 || sys.outputs() != 1) {
    throw std::invalid_argument("operation requires a single-input single-output system");
  }
}

// Ascending real coefficients of prod (s - r).
std::vector<double> poly_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{1.0};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
  return out;
}

std::vector<Complex> eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return {};
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed");
  const Eigen::VectorXcd ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<Complex> poly_roots(std::vector<double> c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  const auto deg = static_cast<Eigen::Index>(c.size()) - 1;
  if (deg <= 0) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < deg; ++i) companion(i, deg - 1) = -c[i] / c[deg];
  return eigenvalues(companion);
}

// Imaginary parts at the level of eigen-solver noise (e.g. from a defective
// double pole) are dropped.
void clean_roots(std::vector<Complex>& roots) {
  for (Complex& r : roots) {
    if (std::abs(r.imag()) <= 1e-6 * std::max(1.0, std::abs(r))) r = {r.real(), 0.0};
  }
}

// Splits roots into groups of conjugate pairs and singles.
struct RootGroups {
  std::vector<std::array<Complex, 2>> pairs;  // conjugate pairs, Im > 0 first
  std::vector<double> reals;
};

RootGroups group_roots(const std::vector<Complex>& roots) {
  RootGroups g;
  for (const Complex& r : roots) {
    if (r.imag() > 0.0) {
      g.pairs.push_back({r, std::conj(r)});
    } else if (r.imag() == 0.0) {
      g.reals.push_back(r.real());
    }
  }
  std::sort(g.reals.begin(), g.reals.end(), std::greater<>());
  return g;
}

std::vector<Complex> transfer_zeros(const StateSpaceSystem& sys) {
  const Eigen::MatrixXd closed = sys.A - sys.B * sys.C;
  const auto den = poly_from_roots(eigenvalues(sys.A));
  const auto shifted = poly_from_roots(eigenvalues(closed));
  std::vector<double> num(den.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < den.size(); ++i) {
    num[i] = shifted[i] - den[i] + sys.D(0, 0) * den[i];
    scale = std::max(scale, std::abs(num[i]));
  }
  if (scale == 0.0) throw std::invalid_argument("system has an identically zero transfer function");
  for (double& c : num) {
    if (std::abs(c) <= 1e-10 * scale) c = 0.0;
  }
  auto zeros = poly_roots(num);
  clean_roots(zeros);
  return zeros;
}

Biquad normalize_dc(Biquad bq) {
  const double gain = bq.dc_gain();
  if (!std::isfinite(gain) || std::abs(gain) < 1e-300) {
    throw std::invalid_argument("section has zero DC gain; it cannot be made affine");
  }
  if (gain != 1.0) {
    bq.b0 /= gain;
    bq.b1 /= gain;
    bq.b2 /= gain;
  }
  return bq;
}

}  // namespace

StateSpaceSystem::StateSpaceSystem(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd c,
                                   Eigen::MatrixXd d)
    : A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d)) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || n < 1 || n > kMaxOrder) {
    throw std::invalid_argument("A must be square with 1..8 states");
  }
  if (B.rows() != n || C.cols() != n || D.rows() != C.rows() || D.cols() != B.cols()) {
    throw std::invalid_argument("state-space dimensions are inconsistent");
  }
}

Eigen::VectorXcd StateSpaceSystem::poles() const {
  return Eigen::EigenSolver<Eigen::MatrixXd>(A, false).eigenvalues();
}

double StateSpaceSystem::dc_gain() const {
  require_siso(*this);
  return (-C * A.partialPivLu().solve(B) + D)(0, 0);
}

namespace {

void require_not_unstable(const StateSpaceSystem& sys) {
  for (const Complex& p : eigenvalues(sys.A)) {
    if (p.real() > 1e-12) {
      std::ostringstream os;
      os << "system is unstable: pole " << p;
      throw std::invalid_argument(os.str());
    }
  }
}

}  // namespace

StateSpaceSystem make_spring_system(const SpringParams& p) {
  if (!(p.mass > 0.0)) throw std::invalid_argument("spring mass must be positive");
  if (!(p.stiffness > 0.0)) throw std::invalid_argument("spring stiffness must be positive");
  if (!(p.damping >= 0.0)) throw std::invalid_argument("spring damping must be non-negative");
  Eigen::Matrix2d A;
  A << 0.0, 1.0, -p.stiffness / p.mass, -p.damping / p.mass;
  Eigen::Vector2d B(0.0, p.stiffness / p.mass);
  Eigen::RowVector2d C(1.0, 0.0);
  StateSpaceSystem sys(A, B, C, Eigen::MatrixXd::Zero(1, 1));
  require_not_unstable(sys);
  return sys;
}

StateSpaceSystem make_one_pole_system(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("one-pole rate must be positive");
  return StateSpaceSystem(Eigen::MatrixXd::Constant(1, 1, -a), Eigen::MatrixXd::Constant(1, 1, a),
                          Eigen::MatrixXd::Constant(1, 1, 1.0), Eigen::MatrixXd::Zero(1, 1));
}

StateSpaceSystem make_one_pole_cascade_system(double a, int stages) {
  if (stages < 1 || stages > kMaxOrder) throw std::invalid_argument("stages must be in 1..8");
  StateSpaceSystem sys = make_one_pole_system(a);
  for (int i = 1; i < stages; ++i) sys = series(sys, make_one_pole_system(a));
  return sys;
}

StateSpaceSystem series(const StateSpaceSystem& first, const StateSpaceSystem& second) {
  require_siso(first);
  require_siso(second);
  const Eigen::Index n1 = first.order();
  const Eigen::Index n2 = second.order();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
  A.topLeftCorner(n1, n1) = first.A;
  A.bottomLeftCorner(n2, n1) = second.B * first.C;
  A.bottomRightCorner(n2, n2) = second.A;
  Eigen::MatrixXd B(n1 + n2, 1);
  B << first.B, second.B * first.D;
  Eigen::MatrixXd C(1, n1 + n2);
  C << second.D * first.C, second.C;
  return StateSpaceSystem(A, B, C, second.D * first.D);
}

SampledSignal simulate(const StateSpaceSystem& sys, const StepSignal& input, Time start,
                       double rate, std::size_t count) {
  return simulate(sys, input, start, rate, count, Eigen::VectorXd::Zero(sys.order()));
}

SampledSignal simulate(const StateSpaceSystem& sys, const StepSignal& input, Time start,
                       double rate, std::size_t count, const Eigen::VectorXd& x0) {
  require_siso(sys);
  if (!(rate > 0.0)) throw std::invalid_argument("rate must be positive");
  if (count == 0) throw std::invalid_argument("sample count must be at least 1");
  if (x0.size() != sys.order()) throw std::invalid_argument("initial state has wrong size");
  Complex fastest = 0.0;
  for (const Complex& p : eigenvalues(sys.A)) {
    if (std::abs(p) > std::abs(fastest)) fastest = p;
  }
  const double min_rate = 10.0 * std::abs(fastest) / (2.0 * std::numbers::pi);
  if (rate < min_rate) {
    std::ostringstream os;
    os << "rate " << rate << " too low for eigenvalue " << fastest << "; need at least "
       << min_rate;
    throw std::invalid_argument(os.str());
  }
  const double h = 1.0 / rate;
  Eigen::VectorXd x = x0;
  SampledSignal out{start, rate, {}};
  out.samples.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double u = input(out.time_at(k));
    out.samples.push_back((sys.C * x)(0) + sys.D(0, 0) * u);
    const Eigen::VectorXd Bu = sys.B.col(0) * u;
    x = rk4_linear_step(sys.A, Bu, x, h);
  }
  return out;
}

SampledSignal step_response(const StateSpaceSystem& sys, double rate, std::size_t count) {
  return simulate(sys, StepSignal::from_events(0.0, {{0.0, 1.0}}), 0.0, rate, count);
}

double impulse_response_at(const StateSpaceSystem& sys, double t) {
  require_siso(sys);
  if (t < 0.0) return 0.0;
  const Eigen::MatrixXd At = sys.A * t;
  return (sys.C * At.exp() * sys.B)(0, 0);
}

void Biquad::seed(double x) {
  const double y = dc_gain() * x;
  z2 = b2 * x - a2 * y;
  z1 = b1 * x - a1 * y + z2;
}

double Biquad::pole_radius() const {
  // Roots of z^2 + a1 z + a2.
  const Complex disc = std::sqrt(Complex(a1 * a1 - 4.0 * a2, 0.0));
  return std::max(std::abs((-a1 + disc) / 2.0), std::abs((-a1 - disc) / 2.0));
}

double biquad_push(Biquad& bq, double x) { return bq.push(x); }

void BiquadCascade::reset() {
  for (auto& s : stages_) s.reset();
}

void BiquadCascade::seed(double x) {
  for (auto& s : stages_) {
    s.seed(x);
    x *= s.dc_gain();
  }
}

double BiquadCascade::dc_gain() const {
  double g = 1.0;
  for (const auto& s : stages_) g *= s.dc_gain();
  return g;
}

Biquad discretize(const AnalogSection& section, double rate, Discretization method) {
  if (!(rate > 0.0)) throw std::invalid_argument("rate must be positive");
  auto num = section.num;
  auto den = section.den;
  while (den.size() > 1 && den.back() == 0.0) den.pop_back();
  while (num.size() > 1 && num.back() == 0.0) num.pop_back();
  if (den.size() < 2 || den.size() > 3 || num.empty() || num.size() > den.size()) {
    throw std::invalid_argument("section must be proper with denominator degree 1 or 2");
  }
  const bool second_order = den.size() == 3;
  num.resize(3, 0.0);
  den.resize(3, 0.0);
  const double T = 1.0 / rate;
  Biquad bq;

  if (method == Discretization::bilinear) {
    // s <- K (1 - z^-1) / (1 + z^-1), cleared by (1 + z^-1)^order.
    const double K = 2.0 * rate;
    double b[3], a[3];
    if (second_order) {
      const double K2 = K * K;
      auto map = [&](const std::vector<double>& p, double* out) {
        out[0] = p[2] * K2 + p[1] * K + p[0];
        out[1] = -2.0 * p[2] * K2 + 2.0 * p[0];
        out[2] = p[2] * K2 - p[1] * K + p[0];
      };
      map(num, b);
      map(den, a);
    } else {
      auto map = [&](const std::vector<double>& p, double* out) {
        out[0] = p[1] * K + p[0];
        out[1] = p[0] - p[1] * K;
        out[2] = 0.0;
      };
      map(num, b);
      map(den, a);
    }
    bq.b0 = b[0] / a[0];
    bq.b1 = b[1] / a[0];
    bq.b2 = b[2] / a[0];
    bq.a1 = a[1] / a[0];
    bq.a2 = a[2] / a[0];
    return bq;
  }

  // Impulse invariance: h[n] = T h_c(nT).
  if (num.size() == den.size() && (second_order ? num[2] : num[1]) != 0.0) {
    throw std::invalid_argument("impulse-invariant discretization needs a strictly proper section");
  }
  if (!second_order) {
    const double p = -den[0] / den[1];
    const double e = std::exp(p * T);
    bq.b0 = T * num[0] / den[1];
    bq.a1 = -e;
    return bq;
  }
  const double lead = den[2];
  const double beta1 = num[1] / lead;
  const double beta0 = num[0] / lead;
  auto poles = poly_roots({den[0], den[1], den[2]});
  clean_roots(poles);
  const Complex p1 = poles[0];
  const Complex p2 = poles[1];
  if (std::abs(p1 - p2) <= 1e-6 * std::max(1.0, std::abs(p1))) {
    // Double pole: beta1/(s-p) + (beta0 + beta1 p)/(s-p)^2.
    const double p = 0.5 * (p1.real() + p2.real());
    const double e = std::exp(p * T);
    const double c2 = beta0 + beta1 * p;
    bq.b0 = T * beta1;
    bq.b1 = T * (-beta1 * e + c2 * T * e);
    bq.b2 = 0.0;
    bq.a1 = -2.0 * e;
    bq.a2 = e * e;
    return bq;
  }
  // Partial fractions r_i / (s - p_i).
  const Complex r1 = (beta1 * p1 + beta0) / (p1 - p2);
  const Complex r2 = (beta1 * p2 + beta0) / (p2 - p1);
  const Complex e1 = std::exp(p1 * T);
  const Complex e2 = std::exp(p2 * T);
  bq.b0 = T * (r1 + r2).real();
  bq.b1 = -T * (r1 * e2 + r2 * e1).real();
  bq.b2 = 0.0;
  bq.a1 = -(e1 + e2).real();
  bq.a2 = (e1 * e2).real();
  return bq;
}

BiquadCascade discretize(const StateSpaceSystem& sys, double rate, Discretization method) {
  require_siso(sys);
  if (!(rate > 0.0)) throw std::invalid_argument("rate must be positive");
  auto poles = eigenvalues(sys.A);
  clean_roots(poles);
  for (const Complex& p : poles) {
    if (!(p.real() < 0.0)) {
      std::ostringstream os;
      os << "cannot discretize: unstable or marginal pole " << p;
      throw std::invalid_argument(os.str());
    }
  }
  const RootGroups pg = group_roots(poles);
  const RootGroups zg = group_roots(transfer_zeros(sys));

  struct Section {
    std::vector<Complex> poles, zeros;
  };
  std::vector<Section> sections;
  for (const auto& pair : pg.pairs) sections.push_back({{pair[0], pair[1]}, {}});
  for (std::size_t i = 0; i < pg.reals.size(); i += 2) {
    Section s;
    s.poles.push_back(pg.reals[i]);
    if (i + 1 < pg.reals.size()) s.poles.push_back(pg.reals[i + 1]);
    sections.push_back(s);
  }
  const std::size_t slack = method == Discretization::impulse_invariant ? 1 : 0;
  auto capacity = [&](const Section& s) { return s.poles.size() - slack - s.zeros.size(); };
  for (const auto& pair : zg.pairs) {
    auto it = std::find_if(sections.begin(), sections.end(),
                           [&](const Section& s) { return capacity(s) >= 2; });
    if (it == sections.end()) throw std::invalid_argument("cannot place complex zero pair");
    it->zeros.push_back(pair[0]);
    it->zeros.push_back(pair[1]);
  }
  for (double z : zg.reals) {
    auto it = std::find_if(sections.begin(), sections.end(),
                           [&](const Section& s) { return capacity(s) >= 1; });
    if (it == sections.end()) throw std::invalid_argument("cannot place real zero");
    it->zeros.push_back(z);
  }

  std::vector<Biquad> stages;
  for (const Section& s : sections) {
    const AnalogSection analog{poly_from_roots(s.zeros), poly_from_roots(s.poles)};
    stages.push_back(normalize_dc(discretize(analog, rate, method)));
    if (!(stages.back().pole_radius() < 1.0)) {
      throw std::invalid_argument("discretized section is not stable");
    }
  }
  return BiquadCascade(std::move(stages));
}

double IirAnimator::push(double target) {
  if (!primed_) {
    cascade_.seed(target);
    primed_ = true;
  }
  return cascade_.push(target);
}

}  // namespace animlab
