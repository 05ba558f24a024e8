#include "ndeform/laurent.hpp"

#include <algorithm>
#include <stdexcept>

namespace ndf {

void LaurentPoly::add_term(int exp, complexd v) {
  if (empty()) {
    lo_ = exp;
    c_.assign(1, v);
    return;
  }
  if (exp < lo_) {
    c_.insert(c_.begin(), static_cast<size_t>(lo_ - exp), 0.0);
    lo_ = exp;
  } else if (exp > hi()) {
    c_.resize(static_cast<size_t>(exp - lo_) + 1, 0.0);
  }
  c_[static_cast<size_t>(exp - lo_)] += v;
}

LaurentPoly LaurentPoly::times(const LaurentPoly& o) const {
  if (empty() || o.empty()) return {};
  LaurentPoly out(lo_ + o.lo_,
                  std::vector<complexd>(c_.size() + o.c_.size() - 1, 0.0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) out.c_[i + j] += c_[i] * o.c_[j];
  return out;
}

LaurentPoly LaurentPoly::times_truncated(const LaurentPoly& o,
                                         int min_exp) const {
  LaurentPoly full = times(o);
  if (full.empty() || full.lo() >= min_exp) return full;
  int drop = min_exp - full.lo();
  if (drop >= static_cast<int>(full.c_.size())) return {};
  full.c_.erase(full.c_.begin(), full.c_.begin() + drop);
  full.lo_ = min_exp;
  return full;
}

LaurentPoly LaurentPoly::plus(const LaurentPoly& o) const {
  LaurentPoly out = *this;
  for (int k = o.lo(); k <= o.hi(); ++k) {
    complexd v = o.coeff(k);
    if (v != 0.0) out.add_term(k, v);
  }
  return out;
}

LaurentPoly LaurentPoly::scaled(complexd s) const {
  LaurentPoly out = *this;
  for (auto& v : out.c_) v *= s;
  return out;
}

LaurentPoly inv_one_plus_pow(const LaurentPoly& u, int q, int depth) {
  if (!u.empty() && u.hi() >= 0)
    throw std::logic_error("inv_one_plus_pow: u must vanish at infinity");
  LaurentPoly series = LaurentPoly::one();
  if (depth <= 0 || u.empty()) return series;
  LaurentPoly uk = LaurentPoly::one();
  double binom = 1.0;  // C(-q, k), built multiplicatively
  for (int k = 1; k <= depth; ++k) {
    uk = uk.times_truncated(u, -depth);
    if (uk.empty()) break;
    binom *= -static_cast<double>(q + k - 1) / static_cast<double>(k);
    series = series.plus(uk.scaled(binom));
  }
  return series;
}

}  // namespace ndf
