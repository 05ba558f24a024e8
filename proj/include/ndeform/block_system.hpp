#pragma once

#include <vector>

#include "ndeform/defs.hpp"

namespace ndf {

/// Conjugate-linear block system
///
///   -conj(K) phi + J^{-1} conj(phi) = conj(v)
///    J^{-1} phi  -      K  conj(phi) = v
///
/// where J = diag(1, 2, ..., n+1) and K is nonzero only in its first
/// column. With k = K_{11}, the closed-form solution is
/// phi = T v + B conj(v), B = (1 - |k|^2)^{-1} J K, T = J + conj(k) B,
/// valid whenever |k| != 1.
struct BlockSystem {
  std::vector<complexd> k_col;  // first column of K, size n+1
  std::vector<complexd> v;      // right-hand side, size n+1

  BlockSystem(std::vector<complexd> k_column, std::vector<complexd> rhs);

  int dim() const { return static_cast<int>(v.size()); }
  complexd k() const { return k_col[0]; }
};

/// phi = T v + B conj(v). Throws NearSingularError when ||k| - 1| < 1e-10;
/// the caller must then switch to the scaled near-slit parametrization.
std::vector<complexd> solve_block_system(const BlockSystem& sys);

}  // namespace ndf
