#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

namespace northpole {

/// Seed used by the command-line tool when none is given.
inline constexpr std::uint64_t kDefaultSeed = 0x5EED0F9A12ULL;

/// SplitMix64 finalizer: a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// 64-bit FNV-1a hash of a label.
std::uint64_t hash_label(std::string_view label) noexcept;

/// Deterministic random stream, the only source of randomness in the library.
///
/// Streams are derived from a master seed by hashing (seed, label, index)
/// through mix64, so independent tasks can draw in parallel without any
/// coordination and still reproduce bit-for-bit within one build.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  static RngStream derive(std::uint64_t master_seed, std::string_view label,
                          std::uint64_t index = 0);

  /// A child stream keyed by this stream's seed; does not advance *this.
  RngStream split(std::string_view label, std::uint64_t index = 0) const;

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal by the Marsaglia polar method.
  double normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace northpole
