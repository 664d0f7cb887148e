#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace resmote {

/// SplitMix64 finalizer applied to base + golden-ratio multiples of index.
/// Used to derive independent per-replication and per-stream seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index);

/// Single documented generator used everywhere in the library.
///
/// Draws come from std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. Uniform reals take the top 53 bits, index draws use
/// rejection sampling and normals use Box-Muller, so the draw sequence for
/// a given seed does not depend on the standard library's distributions.
class RandomSource {
 public:
  static constexpr std::string_view algorithm_id = "mt19937_64/u53/boxmuller";

  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform draw in [0, 1).
  double uniform();

  /// Uniform integer in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);

  /// Standard normal draw.
  double normal();

  /// Independent generator for a numbered sub-stream.
  RandomSource derive(std::uint64_t stream) const {
    return RandomSource(mix_seed(seed_, stream));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace resmote
