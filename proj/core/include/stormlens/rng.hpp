// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace stormlens {

/// Deterministic, platform-independent random stream (xoshiro256**).
///
/// Every randomized component derives its own stream from the run seed and a
/// stream name, so results do not depend on evaluation order or threading:
///
///   Rng root(seed);
///   Rng tree_rng = root.stream("rf/tree/13");
///
/// The standard library engines are specified but the distributions are not,
/// so all draws (bounded ints, uniforms, shuffles) are implemented here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Derives an independent child stream from this stream's seed and a name.
  Rng stream(std::string_view name) const;

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform real in [lo, hi).
  double uniform(double lo, double hi);

  /// Unbiased uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_;
};

/// FNV-1a 64-bit hash; used for stream naming and content fingerprints.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ull);

/// Child seed for a named component; Rng(derive_seed(s, n)) == Rng(s).stream(n).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view name);

}  // namespace stormlens
