#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "rsvd/matrix.hpp"

namespace rsvd {

namespace detail {

// SplitMix64 output function. With the golden-ratio increment below this
// gives counter-based access to the SplitMix64 stream: word i of stream
// `seed` is mix64(seed + (i+1)*increment), independent of evaluation
// order.
inline std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t counter_word(std::uint64_t seed, std::uint64_t i) {
  return mix64(seed + (i + 1) * kGolden);
}

}  // namespace detail

// Derive an independent child seed from a master seed; used to give each
// trial of a campaign its own stream regardless of execution order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return detail::counter_word(master, stream);
}

// Standard normal deviate at position i of stream `seed`, by Box-Muller
// over two counter words. u1 is mapped into (0, 1] so the log never sees
// zero.
inline double normal_deviate(std::uint64_t seed, std::uint64_t i) {
  const std::uint64_t a = detail::counter_word(seed, 2 * i);
  const std::uint64_t b = detail::counter_word(seed, 2 * i + 1);
  const double u1 = (static_cast<double>(a >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

// rows x cols matrix of iid N(0,1) entries. Entry (i,j) depends only on
// (seed, j*rows + i), so the result is reproducible across platforms and
// insensitive to how many other matrices were drawn before it.
inline DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols,
                                   std::uint64_t seed) {
  DenseMatrix G(rows, cols);
  for (std::size_t e = 0; e < rows * cols; ++e)
    G.data()[e] = normal_deviate(seed, e);
  return G;
}

}  // namespace rsvd
