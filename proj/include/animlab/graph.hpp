#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "animlab/fir.hpp"
#include "animlab/iir.hpp"
#include "animlab/signal.hpp"

namespace animlab {

/// A discrete-time unit in a system diagram: one push per tick. Blocks are
/// values; copying a block copies its state, except that wrapped animators
/// restart from a fresh instance.
class Block {
 public:
  struct Concept {
    virtual ~Concept() = default;
    virtual double push(double x) = 0;
    virtual void reset() = 0;
    virtual std::unique_ptr<Concept> clone() const = 0;
  };

  explicit Block(std::unique_ptr<Concept> impl);
  Block(const Block& other);
  Block& operator=(const Block& other);
  Block(Block&&) noexcept = default;
  Block& operator=(Block&&) noexcept = default;

  double push(double x) { return impl_->push(x); }
  void reset() { impl_->reset(); }

 private:
  std::unique_ptr<Concept> impl_;
};

Block identity_block();
Block gain_block(double gain);
/// Zero-initialized FIR filter (no cold-start hold).
Block fir_block(FirCoefficients coeffs);
Block fir_block(std::vector<double> taps);
/// Zero-initialized biquad cascade.
Block biquad_block(BiquadCascade cascade);
/// Stateless pointwise map.
Block map_block(std::function<double(double)> f);
/// Wraps a discrete animator; `factory` builds a fresh one on reset.
Block animator_block(std::function<std::unique_ptr<DiscreteAnimator>()> factory);
/// Samples a continuous animator at `rate`: each push retargets (when the
/// input changes) and evaluates at the tick time.
Block sampled_animator_block(std::function<std::unique_ptr<Animator>()> factory, double rate);

/// Output of block i feeds block i + 1.
Block series(std::vector<Block> blocks);
/// Fans the input out and sums the weighted outputs.
Block parallel(std::vector<Block> blocks, std::vector<double> weights);

/// Discrete impulse response of a fresh copy of `b`: push 1 then n - 1 zeros.
std::vector<double> impulse_response(const Block& b, std::size_t n);

struct Classification {
  bool affine = false;
  bool convex = false;
};

/// Classifies from the first n impulse-response samples. Throws if the
/// response has not decayed below 1e-9 over the last 10% of the window.
Classification classify(const Block& b, std::size_t n);

}  // namespace animlab
