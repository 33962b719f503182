// Copyright 2026 The mmwtex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MMW_RNG_HPP
#define MMW_RNG_HPP

#include <cstdint>
#include <span>

namespace mmw {

/// PCG32 (XSH-RR variant, 64-bit state, 32-bit output).
///
/// Every random draw in the toolkit goes through this generator and the
/// helpers below, so streams are reproducible across platforms and can be
/// re-implemented bit-for-bit in other languages. Nothing here depends on
/// the standard library's distribution objects, whose algorithms are
/// implementation-defined.
class Pcg32 {
 public:
  using result_type = std::uint32_t;

  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0x14057b7ef767814fULL);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  /// Uniform integer in [0, bound), bound > 0. Rejection sampling, no modulo bias.
  std::uint32_t bounded(std::uint32_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (one value per call, the pair partner is discarded).
  double normal();

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return 0xffffffffu; }
  result_type operator()() { return next_u32(); }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
};

/// Fisher-Yates shuffle driven by Pcg32::bounded.
template <typename T>
void shuffle(std::span<T> items, Pcg32& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.bounded(static_cast<std::uint32_t>(i)));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace mmw

#endif  // MMW_RNG_HPP
