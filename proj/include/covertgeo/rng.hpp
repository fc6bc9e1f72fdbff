#pragma once

#include <array>
#include <cstdint>

namespace covertgeo {

/// xoshiro256++ generator seeded through splitmix64. Substreams are
/// derived from (seed, index) so per-trial streams are independent of how
/// trials are partitioned across worker threads.
/// Derive an independent seed from (seed, salt); used to give each probe
/// of a multi-estimate experiment its own trial substream family.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  static Rng substream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform in (0, 1), safe for log/inverse-CDF transforms.
  double uniform_open();
  /// Standard normal via inverse-CDF (deterministic across platforms
  /// with the same libm, unlike std::normal_distribution).
  double normal();
  /// Exponential with unit mean.
  double exponential();
  /// Gamma with the given shape (>= 1) and unit scale, Marsaglia-Tsang.
  double gamma(double shape);
  /// Poisson sample; Knuth product below mean 30, PTRS rejection above.
  std::uint64_t poisson(double mean);

 private:
  explicit Rng(const std::array<std::uint64_t, 4>& state) : s_(state) {}
  std::array<std::uint64_t, 4> s_;
};

}  // namespace covertgeo
