#pragma once

#include <complex>

namespace ndf {

using complexd = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Smallest power of two >= x (x >= 1).
inline int next_pow2(int x) {
  int p = 1;
  while (p < x) p <<= 1;
  return p;
}

}  // namespace ndf
