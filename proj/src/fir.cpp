#include "animlab/fir.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "animlab/quadrature.hpp"

namespace animlab {

double FirCoefficients::sum() const { return std::accumulate(taps.begin(), taps.end(), 0.0); }

FirCoefficients fir_coeffs_from_easing(const Easing& e, double rate) {
  const double span = e.duration() * rate;
  if (!(span >= 2.0 - 1e-9)) {
    throw std::invalid_argument("rate too low for easing: need duration * rate >= 2");
  }
  const auto count = static_cast<std::size_t>(std::ceil(span - 1e-9));
  FirCoefficients c{rate, std::vector<double>(count)};
  for (std::size_t k = 0; k < count; ++k) {
    c.taps[k] = e.derivative((static_cast<double>(k) + 0.5) / rate) / rate;
  }
  const double total = c.sum();
  if (!(std::abs(total) > 0.0)) throw std::invalid_argument("easing has a zero impulse response");
  for (double& h : c.taps) h /= total;
  return c;
}

FirFilter::FirFilter(FirCoefficients coeffs, ColdStart cold)
    : coeffs_(std::move(coeffs)), cold_(cold), history_(coeffs_.taps.size(), 0.0) {
  if (coeffs_.taps.empty()) throw std::invalid_argument("FIR filter needs at least one tap");
}

double FirFilter::push(double x) {
  const std::size_t n = history_.size();
  if (!primed_) {
    std::fill(history_.begin(), history_.end(), cold_ == ColdStart::hold_first ? x : 0.0);
    primed_ = true;
  }
  head_ = (head_ + 1) % n;
  history_[head_] = x;
  double y = 0.0;
  std::size_t idx = head_;
  for (std::size_t k = 0; k < n; ++k) {
    y += coeffs_.taps[k] * history_[idx];
    idx = (idx == 0) ? n - 1 : idx - 1;
  }
  return y;
}

void FirFilter::reset() {
  std::fill(history_.begin(), history_.end(), 0.0);
  head_ = 0;
  primed_ = false;
}

double fir_discrete_push(FirFilter& state, double target) { return state.push(target); }

std::vector<double> convolve_oracle(const StepSignal& x, const Easing& e,
                                    std::span<const Time> grid, double abs_tol) {
  const double d = e.duration();
  std::vector<double> out;
  out.reserve(grid.size());
  std::vector<double> cuts;
  for (Time t : grid) {
    cuts.clear();
    for (const auto& ev : x.events()) {
      const double tau = t - ev.t;
      if (tau > 0.0 && tau < d) cuts.push_back(tau);
    }
    std::sort(cuts.begin(), cuts.end());
    auto integrand = [&](double tau) { return e.derivative(tau) * x(t - tau); };
    out.push_back(integrate(integrand, 0.0, d, cuts, abs_tol).value);
  }
  return out;
}

}  // namespace animlab
