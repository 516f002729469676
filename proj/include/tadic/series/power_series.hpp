#pragma once

#include <vector>

#include "tadic/arith/unramified.hpp"
#include "tadic/valuation.hpp"

namespace tadic {

/// A truncated power series sum_{i < trunc} c_i X^{i/denom} with coefficients
/// in Z_q / p^M. With denom = 1 and a degree-1 ring this is Z/p^M[[T]] / T^N.
///
/// Coefficients live in one flat buffer of trunc * degree residues.
class PowerSeries {
 public:
  PowerSeries() = default;
  PowerSeries(ZqPtr ring, int trunc, int denom = 1);

  static PowerSeries constant(ZqPtr ring, int trunc, i64 c, int denom = 1);
  static PowerSeries monomial(ZqPtr ring, int trunc, int index, i64 c = 1, int denom = 1);

  const ZqPtr& ring() const { return ring_; }
  int trunc() const { return trunc_; }
  int denom() const { return denom_; }
  int degree() const { return d_; }

  const u64* raw(int i) const { return data_.data() + static_cast<std::size_t>(i) * d_; }
  u64* raw(int i) { return data_.data() + static_cast<std::size_t>(i) * d_; }

  UnramifiedRing::Elem coeff(int i) const;
  void set_coeff(int i, const UnramifiedRing::Elem& c);
  /// First residue coordinate of coefficient i (the whole coefficient over Z_p).
  u64 at(int i) const { return data_[static_cast<std::size_t>(i) * d_]; }
  void set(int i, u64 c) { data_[static_cast<std::size_t>(i) * d_] = c; }

  bool is_zero() const;
  bool coeff_is_zero(int i) const;
  /// Index of the first nonzero coefficient, or -1.
  int first_nonzero() const;
  /// ord in units of X: exact first nonzero index / denom at the stored
  /// p-adic precision, or "at least trunc/denom".
  Valuation ord() const;
  /// True when every coefficient lies in Z_p (only coordinate 0 nonzero).
  bool is_scalar() const;

  PowerSeries zero_like() const { return PowerSeries(ring_, trunc_, denom_); }
  PowerSeries one_like() const { return constant(ring_, trunc_, 1, denom_); }

  PowerSeries& operator+=(const PowerSeries& o);
  PowerSeries& operator-=(const PowerSeries& o);
  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  PowerSeries operator-() const;
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  PowerSeries& operator*=(const PowerSeries& o) { return *this = *this * o; }

  PowerSeries scaled(u64 c) const;
  PowerSeries scaled(const UnramifiedRing::Elem& c) const;
  /// Multiply by X^{shift/denom}, dropping what falls past trunc.
  PowerSeries shifted(int shift) const;

  /// Inverse of a series whose constant term is a unit.
  PowerSeries inverse() const;
  PowerSeries pow(i64 e) const;

  /// Exact division by a nonzero integer. The unit part is inverted; the
  /// p-part must divide every coefficient (else IntegralityViolation) and
  /// the result is correct to ord_p(k) fewer digits.
  PowerSeries divide_int(i64 k) const;
  PowerSeries mul_p_power(int e) const;

  /// Same series with a lower T-truncation.
  PowerSeries truncated(int trunc) const;
  /// Same series over a ring of lower p-adic precision.
  PowerSeries reduced(ZqPtr lower) const;

  /// Substitute X -> s(T) (s with zero constant term, denom 1 in the result).
  /// Requires denom() == 1.
  PowerSeries compose(const PowerSeries& s) const;

  friend bool operator==(const PowerSeries& a, const PowerSeries& b);

 private:
  ZqPtr ring_;
  int trunc_ = 0;
  int denom_ = 1;
  int d_ = 1;
  std::vector<u64> data_;
};

/// Rings are interchangeable when they share p, degree, defining polynomial
/// and precision.
bool same_ring(const UnramifiedRing& a, const UnramifiedRing& b);

/// Z_p / p^M as a degree-1 unramified ring.
ZqPtr make_zp(u64 p, int precision);
ZqPtr make_zq(FieldPtr field, int precision);

}  // namespace tadic
