#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace hm {

/// Seeded random stream built on std::mt19937_64, whose output sequence is
/// fixed by the C++ standard. All derived draws below are implemented here
/// (not via <random> distributions, whose algorithms vary by library) so a
/// stream is reproducible from (seed, stream id) alone:
///   engine seed = splitmix64(seed + 0x9E3779B97F4A7C15 * (stream + 1))
///   uniform     = (next() >> 11) * 2^-53
///   below(n)    = Lemire multiply-shift with rejection
///   normal      = Marsaglia polar method (second deviate cached)
///   gamma       = Marsaglia-Tsang; shape < 1 boosted by U^(1/shape)
///   beta(a, b)  = X / (X + Y), X ~ Gamma(a), Y ~ Gamma(b)
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform integer on [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);
  double normal();
  double gamma(double shape);
  double beta(double a, double b);
  /// Failures before the first success of a Bernoulli(p) sequence; p in (0,1].
  std::uint64_t geometric(double p);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Fisher-Yates shuffle, swapping position i with below(i + 1) for i from the
/// back.
template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace hm
