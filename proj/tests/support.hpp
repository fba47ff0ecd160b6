#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "lerc/verify/disturbance.hpp"

namespace lerc::testing {

// Minimal property-test generator over the library's portable PRNG.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : source_(seed) {}

  double unit() { return 0.5 * (source_.next() + 1.0); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  int integer(int lo, int hi) {
    const int span = hi - lo + 1;
    int k = lo + static_cast<int>(unit() * span);
    return k > hi ? hi : k;
  }
  bool coin() { return unit() < 0.5; }
  std::vector<double> vec(std::size_t n, double lo, double hi) {
    std::vector<double> out(n);
    for (double& v : out) v = uniform(lo, hi);
    return out;
  }

 private:
  verify::UniformSource source_;
};

template <class F>
void for_all(int cases, std::uint64_t seed, F&& body) {
  Gen gen(seed);
  for (int i = 0; i < cases; ++i) body(gen, i);
}

inline std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

}  // namespace lerc::testing
