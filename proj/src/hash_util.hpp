#pragma once

#include <cstddef>
#include <cstdint>

namespace thetakit::detail {

inline std::size_t hash_mix(std::size_t seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}

}  // namespace thetakit::detail
