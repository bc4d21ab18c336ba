#ifndef DPPQUAD_RNG_HPP_
#define DPPQUAD_RNG_HPP_

#include <cstdint>

namespace dppquad {

/// Deterministic pseudo-random stream: xoshiro256++ seeded from a
/// (seed, stream) pair via splitmix64. Identical pairs reproduce the
/// same draws bit-for-bit; distinct stream ids give statistically
/// independent replicate streams.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1).
  double uniform();

  /// Uniform on {0, ..., n-1}.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Standard normal (Box-Muller, one value per call).
  double normal();

  /// Gamma(shape, 1), shape > 0 (Marsaglia-Tsang, boosted for shape < 1).
  double gamma(double shape);

  /// Beta(s, t), s, t > 0.
  double beta(double s, double t);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t s_[4];
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace dppquad

#endif  // DPPQUAD_RNG_HPP_
