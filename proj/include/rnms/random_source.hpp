#ifndef RNMS_RANDOM_SOURCE_HPP
#define RNMS_RANDOM_SOURCE_HPP

#include <cstdint>
#include <random>

namespace rnms {

/// Seeded 64-bit stream. Identical seed and call sequence give identical output on every
/// platform: the engine is mt19937_64 and uniform() is built from raw engine bits rather
/// than std::uniform_real_distribution, whose algorithm is implementation-defined.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  /// Number of 64-bit draws consumed so far.
  std::uint64_t position() const noexcept { return position_; }

  std::uint64_t next_u64() {
    ++position_;
    return engine_();
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t seed_;
  std::uint64_t position_ = 0;
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; derives independent per-task seeds from (master, index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

}  // namespace rnms

#endif  // RNMS_RANDOM_SOURCE_HPP
