#include "ndeform/block_system.hpp"

#include <cmath>

#include "ndeform/errors.hpp"

namespace ndf {

BlockSystem::BlockSystem(std::vector<complexd> k_column,
                         std::vector<complexd> rhs)
    : k_col(std::move(k_column)), v(std::move(rhs)) {
  if (k_col.empty() || k_col.size() != v.size())
    throw ValidationError("block system: K column and v must have equal, nonzero size");
}

std::vector<complexd> solve_block_system(const BlockSystem& sys) {
  complexd k = sys.k();
  double k2 = std::norm(k);
  if (std::abs(std::abs(k) - 1.0) < 1e-10)
    throw NearSingularError("block system: |k| within 1e-10 of 1");

  int n1 = sys.dim();
  double inv = 1.0 / (1.0 - k2);
  // B = inv * J K: only the first column survives, (B)_{i1} = inv * i * K_{i1}.
  // T = J + conj(k) B.
  std::vector<complexd> phi(static_cast<size_t>(n1));
  complexd v1 = sys.v[0];
  for (int i = 0; i < n1; ++i) {
    complexd b_i1 = inv * static_cast<double>(i + 1) * sys.k_col[static_cast<size_t>(i)];
    // (T v)_i = (i+1) v_i + conj(k) b_i1 v_1 ; (B conj v)_i = b_i1 conj(v_1)
    phi[static_cast<size_t>(i)] = static_cast<double>(i + 1) * sys.v[static_cast<size_t>(i)] +
                                  b_i1 * (std::conj(k) * v1 + std::conj(v1));
  }
  return phi;
}

}  // namespace ndf
