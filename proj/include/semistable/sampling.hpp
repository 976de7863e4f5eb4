#pragma once

#include <cstdint>
#include <random>

namespace semistable {

/// Uniform integer in [lo, hi] by rejection on raw 64-bit draws, so the
/// stream of values depends only on the engine (unlike
/// std::uniform_int_distribution, whose algorithm is library specific).
inline std::int64_t uniform_in(std::mt19937_64 &rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0)
    return static_cast<std::int64_t>(rng());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + draw % span);
}

} // namespace semistable
