#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace cauto {

// Portable uniform draw in [0, 1) from the top 53 bits of a 64-bit Mersenne
// twister; std::uniform_real_distribution is implementation-defined.
inline double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Index drawn from a (not necessarily normalized) weight row.
inline std::size_t draw_index(std::mt19937_64& rng, std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  const double u = unit_draw(rng) * total;
  double cum = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    cum += weights[i];
    last_positive = i;
    if (u < cum) return i;
  }
  return last_positive;
}

}  // namespace cauto
