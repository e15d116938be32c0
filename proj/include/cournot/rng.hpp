#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace cournot::rng {

using Engine = std::mt19937_64;

/// Uniform draw from [0, n). Avoids std::uniform_int_distribution so results
/// are identical across standard-library implementations.
inline std::uint64_t uniform_below(Engine& gen, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(gen()) * n) >> 64);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double unit_double(Engine& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform_in(Engine& gen, double lo, double hi) {
  return lo + (hi - lo) * unit_double(gen);
}

/// Fisher-Yates shuffle driven by uniform_below.
template <typename T>
void shuffle(Engine& gen, std::vector<T>& values) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(gen, i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace cournot::rng
