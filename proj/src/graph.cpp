#include "animlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace animlab {

Block::Block(std::unique_ptr<Concept> impl) : impl_(std::move(impl)) {
  if (!impl_) throw std::invalid_argument("block implementation is null");
}

Block::Block(const Block& other) : impl_(other.impl_->clone()) {}

Block& Block::operator=(const Block& other) {
  if (this != &other) impl_ = other.impl_->clone();
  return *this;
}

namespace {

template <typename Derived>
struct Cloneable : Block::Concept {
  std::unique_ptr<Block::Concept> clone() const override {
    return std::make_unique<Derived>(static_cast<const Derived&>(*this));
  }
};

struct Gain final : Cloneable<Gain> {
  double gain;
  explicit Gain(double g) : gain(g) {}
  double push(double x) override { return gain * x; }
  void reset() override {}
};

struct Fir final : Cloneable<Fir> {
  FirFilter filter;
  explicit Fir(FirCoefficients c) : filter(std::move(c), FirFilter::ColdStart::zeros) {}
  double push(double x) override { return filter.push(x); }
  void reset() override { filter.reset(); }
};

struct Biquads final : Cloneable<Biquads> {
  BiquadCascade cascade;
  explicit Biquads(BiquadCascade c) : cascade(std::move(c)) { cascade.reset(); }
  double push(double x) override { return cascade.push(x); }
  void reset() override { cascade.reset(); }
};

struct Map final : Cloneable<Map> {
  std::function<double(double)> f;
  explicit Map(std::function<double(double)> fn) : f(std::move(fn)) {}
  double push(double x) override { return f(x); }
  void reset() override {}
};

struct DiscreteWrap final : Block::Concept {
  std::function<std::unique_ptr<DiscreteAnimator>()> factory;
  std::unique_ptr<DiscreteAnimator> animator;
  std::size_t ticks = 0;
  explicit DiscreteWrap(std::function<std::unique_ptr<DiscreteAnimator>()> f)
      : factory(std::move(f)), animator(factory()) {}
  double push(double x) override {
    ++ticks;
    return animator->push(x);
  }
  void reset() override {
    animator = factory();
    ticks = 0;
  }
  std::unique_ptr<Block::Concept> clone() const override {
    // Animators are not copyable; a copy starts fresh.
    return std::make_unique<DiscreteWrap>(factory);
  }
};

struct SampledWrap final : Block::Concept {
  std::function<std::unique_ptr<Animator>()> factory;
  double rate;
  std::unique_ptr<Animator> animator;
  std::size_t tick = 0;
  double last_input = 0.0;
  SampledWrap(std::function<std::unique_ptr<Animator>()> f, double r)
      : factory(std::move(f)), rate(r), animator(factory()) {}
  double push(double x) override {
    const Time t = static_cast<double>(tick++) / rate;
    if (tick == 1 || x != last_input) animator->retarget(t, x);
    last_input = x;
    return animator->eval(t);
  }
  void reset() override {
    animator = factory();
    tick = 0;
  }
  std::unique_ptr<Block::Concept> clone() const override {
    return std::make_unique<SampledWrap>(factory, rate);
  }
};

struct Series final : Cloneable<Series> {
  std::vector<Block> blocks;
  explicit Series(std::vector<Block> b) : blocks(std::move(b)) {}
  double push(double x) override {
    for (auto& b : blocks) x = b.push(x);
    return x;
  }
  void reset() override {
    for (auto& b : blocks) b.reset();
  }
};

struct Parallel final : Cloneable<Parallel> {
  std::vector<Block> blocks;
  std::vector<double> weights;
  Parallel(std::vector<Block> b, std::vector<double> w)
      : blocks(std::move(b)), weights(std::move(w)) {}
  double push(double x) override {
    double y = 0.0;
    for (std::size_t i = 0; i < blocks.size(); ++i) y += weights[i] * blocks[i].push(x);
    return y;
  }
  void reset() override {
    for (auto& b : blocks) b.reset();
  }
};

}  // namespace

Block identity_block() { return gain_block(1.0); }

Block gain_block(double gain) { return Block(std::make_unique<Gain>(gain)); }

Block fir_block(FirCoefficients coeffs) { return Block(std::make_unique<Fir>(std::move(coeffs))); }

Block fir_block(std::vector<double> taps) {
  return fir_block(FirCoefficients{0.0, std::move(taps)});
}

Block biquad_block(BiquadCascade cascade) {
  return Block(std::make_unique<Biquads>(std::move(cascade)));
}

Block map_block(std::function<double(double)> f) {
  if (!f) throw std::invalid_argument("map function is empty");
  return Block(std::make_unique<Map>(std::move(f)));
}

Block animator_block(std::function<std::unique_ptr<DiscreteAnimator>()> factory) {
  return Block(std::make_unique<DiscreteWrap>(std::move(factory)));
}

Block sampled_animator_block(std::function<std::unique_ptr<Animator>()> factory, double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("rate must be positive");
  return Block(std::make_unique<SampledWrap>(std::move(factory), rate));
}

Block series(std::vector<Block> blocks) {
  if (blocks.empty()) throw std::invalid_argument("series needs at least one block");
  return Block(std::make_unique<Series>(std::move(blocks)));
}

Block parallel(std::vector<Block> blocks, std::vector<double> weights) {
  if (blocks.empty()) throw std::invalid_argument("parallel needs at least one block");
  if (blocks.size() != weights.size()) {
    throw std::invalid_argument("parallel: " + std::to_string(blocks.size()) + " blocks but " +
                                std::to_string(weights.size()) + " weights");
  }
  return Block(std::make_unique<Parallel>(std::move(blocks), std::move(weights)));
}

std::vector<double> impulse_response(const Block& b, std::size_t n) {
  if (n == 0) throw std::invalid_argument("impulse response length must be at least 1");
  Block fresh = b;
  fresh.reset();
  std::vector<double> h(n);
  for (std::size_t k = 0; k < n; ++k) h[k] = fresh.push(k == 0 ? 1.0 : 0.0);
  return h;
}

Classification classify(const Block& b, std::size_t n) {
  const auto h = impulse_response(b, n);
  const std::size_t tail = n - (n + 9) / 10;
  for (std::size_t k = tail; k < n; ++k) {
    if (!(std::abs(h[k]) < 1e-9)) {
      throw std::invalid_argument("n too small: impulse response has not decayed (|h[" +
                                  std::to_string(k) + "]| >= 1e-9)");
    }
  }
  Classification c;
  c.affine = std::abs(std::accumulate(h.begin(), h.end(), 0.0) - 1.0) <= 1e-6;
  c.convex = c.affine && *std::min_element(h.begin(), h.end()) >= -1e-9;
  return c;
}

}  // namespace animlab
