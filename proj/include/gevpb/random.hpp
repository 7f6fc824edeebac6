#pragma once

#include <cstdint>
#include <random>

namespace gevpb {

/// Seeded source of randomness with keyed, reproducible substreams.
///
/// A stream is identified by its key. substream(i) derives a child key by
/// hashing (key, i), independent of how many draws the parent has made, so
/// tasks can be executed in any order (or in parallel) and still see the same
/// numbers. The engine is std::mt19937_64, whose output sequence is fixed by
/// the standard.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t key() const noexcept { return key_; }
  RandomStream substream(std::uint64_t index) const;

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1); never returns exactly 0 or 1.
  double uniform_open();

  /// Unbiased integer in [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  double standard_normal();

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finalizer; used to turn structured keys into engine seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace gevpb
