#pragma once

#include <vector>

#include "ndeform/defs.hpp"

namespace ndf {

/// Laurent polynomial c_lo w^lo + ... + c_hi w^hi with dense storage.
/// Used for exact residue algebra at infinity; all series that appear in
/// the moment map terminate after finitely many coefficients, so no
/// truncation error is involved.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(int lo, std::vector<complexd> coeffs)
      : lo_(lo), c_(std::move(coeffs)) {}

  static LaurentPoly monomial(int exp, complexd c) {
    return LaurentPoly(exp, {c});
  }
  static LaurentPoly one() { return monomial(0, 1.0); }

  bool empty() const { return c_.empty(); }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }

  complexd coeff(int k) const {
    if (empty() || k < lo() || k > hi()) return 0.0;
    return c_[static_cast<size_t>(k - lo_)];
  }

  void add_term(int exp, complexd v);

  LaurentPoly times(const LaurentPoly& o) const;
  /// Product with every exponent below min_exp discarded.
  LaurentPoly times_truncated(const LaurentPoly& o, int min_exp) const;
  LaurentPoly plus(const LaurentPoly& o) const;
  LaurentPoly scaled(complexd s) const;

 private:
  int lo_ = 0;
  std::vector<complexd> c_;
};

/// (1 + u)^{-q} expanded at infinity down to exponent -depth.
/// u must contain only negative exponents. Because u^k starts at w^{-k},
/// the window [-depth, 0] receives contributions from k <= depth only and
/// the result within that window is exact.
LaurentPoly inv_one_plus_pow(const LaurentPoly& u, int q, int depth);

}  // namespace ndf
