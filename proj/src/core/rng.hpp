// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

namespace glsreg {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A draw is a
/// pure function of (key, counter), so any (seed, trajectory, n) can be
/// produced independently of every other draw.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) noexcept {
    for (int r = 0; r < 10; ++r) {
      if (r > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      ctr = round(ctr, key);
    }
    return ctr;
  }

 private:
  static Counter round(const Counter& c, const Key& k) noexcept {
    const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * c[0];
    const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

/// Uniform and derived variates keyed by (seed, trajectory, n).
class DrawStream {
 public:
  explicit DrawStream(std::uint64_t seed) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  std::uint64_t bits(std::uint64_t trajectory, std::uint64_t n) const noexcept {
    const auto out = Philox4x32::block(
        {static_cast<std::uint32_t>(trajectory), static_cast<std::uint32_t>(trajectory >> 32),
         static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n >> 32)},
        key_);
    return (std::uint64_t{out[0]} << 32) | out[1];
  }

  /// [0, 1) with 53 random bits.
  double uniform(std::uint64_t trajectory, std::uint64_t n) const noexcept {
    return static_cast<double>(bits(trajectory, n) >> 11) * 0x1p-53;
  }

  /// (0, 1): the 53-bit lattice shifted by half a step.
  double uniform_open(std::uint64_t trajectory, std::uint64_t n) const noexcept {
    return (static_cast<double>(bits(trajectory, n) >> 11) + 0.5) * 0x1p-53;
  }

  /// -ln(1 - U).
  double exponential(std::uint64_t trajectory, std::uint64_t n) const noexcept {
    return -std::log1p(-uniform(trajectory, n));
  }

  /// Inverse normal CDF at an open uniform.
  double normal(std::uint64_t trajectory, std::uint64_t n) const {
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * uniform_open(trajectory, n));
  }

 private:
  Philox4x32::Key key_;
};

}  // namespace glsreg
