#pragma once

#include <cstdint>
#include <random>

namespace activemix {

// mt19937_64 output is fixed by the standard; the distributions in <random>
// are not, so uniform draws are derived from the raw bits directly.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace activemix
