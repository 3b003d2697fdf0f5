#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace restnorm {

// Kahan-Babuska (Neumaier) compensated accumulator.  Used wherever many
// same-scale terms of mixed sign are folded, so cancellation noise stays at
// one rounding of the true sum instead of growing with the term count.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
  NeumaierSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Counter-based generator: draw i is a pure function of (seed, stream, i).
// Parallel consumers can jump to disjoint counter ranges without sharing
// state, and replaying a (seed, counter) pair reproduces the stream exactly.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix64(seed + 0x9E3779B97F4A7C15ull * (stream + 1))) {}

  std::uint64_t bits_at(std::uint64_t counter) const {
    return mix64(key_ + 0x9E3779B97F4A7C15ull * counter);
  }
  double uniform_at(std::uint64_t counter) const {
    return static_cast<double>(bits_at(counter) >> 11) * 0x1.0p-53;
  }

  std::uint64_t bits() { return bits_at(counter_++); }
  double uniform() { return uniform_at(counter_++); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t index(std::uint64_t bound) { return bits() % bound; }

  std::uint64_t counter() const { return counter_; }
  void seek(std::uint64_t counter) { counter_ = counter; }
  CounterRng fork(std::uint64_t stream) const {
    CounterRng r(key_, stream + 1);
    return r;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace restnorm
