#include "tadic/series/power_series.hpp"

#include <algorithm>
#include <string>

#include "tadic/errors.hpp"

namespace tadic {

bool same_ring(const UnramifiedRing& a, const UnramifiedRing& b) {
  if (&a == &b) return true;
  return a.p() == b.p() && a.degree() == b.degree() && a.precision() == b.precision() &&
         a.field()->defining_poly() == b.field()->defining_poly();
}

ZqPtr make_zp(u64 p, int precision) {
  return std::make_shared<const UnramifiedRing>(FieldCtx::build(p, 1), precision);
}

ZqPtr make_zq(FieldPtr field, int precision) {
  return std::make_shared<const UnramifiedRing>(std::move(field), precision);
}

namespace {

void check_compatible(const PowerSeries& a, const PowerSeries& b) {
  if (!same_ring(*a.ring(), *b.ring())) throw DomainError("series over different coefficient rings");
  if (a.denom() != b.denom()) throw DomainError("series with different exponent denominators");
}

}  // namespace

PowerSeries::PowerSeries(ZqPtr ring, int trunc, int denom)
    : ring_(std::move(ring)), trunc_(trunc), denom_(denom), d_(ring_->degree()) {
  if (trunc < 0) throw DomainError("negative truncation");
  if (denom < 1) throw DomainError("exponent denominator must be positive");
  data_.assign(static_cast<std::size_t>(trunc) * d_, 0);
}

PowerSeries PowerSeries::constant(ZqPtr ring, int trunc, i64 c, int denom) {
  PowerSeries s(std::move(ring), trunc, denom);
  if (trunc > 0) s.set(0, s.ring_->base().from_int(c));
  return s;
}

PowerSeries PowerSeries::monomial(ZqPtr ring, int trunc, int index, i64 c, int denom) {
  PowerSeries s(std::move(ring), trunc, denom);
  if (index < trunc) s.set(index, s.ring_->base().from_int(c));
  return s;
}

UnramifiedRing::Elem PowerSeries::coeff(int i) const {
  if (i >= trunc_) return ring_->zero();
  return UnramifiedRing::Elem(raw(i), raw(i) + d_);
}

void PowerSeries::set_coeff(int i, const UnramifiedRing::Elem& c) {
  std::copy(c.begin(), c.end(), raw(i));
}

bool PowerSeries::coeff_is_zero(int i) const {
  const u64* c = raw(i);
  for (int j = 0; j < d_; ++j)
    if (c[j] != 0) return false;
  return true;
}

bool PowerSeries::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](u64 c) { return c == 0; });
}

int PowerSeries::first_nonzero() const {
  for (int i = 0; i < trunc_; ++i)
    if (!coeff_is_zero(i)) return i;
  return -1;
}

Valuation PowerSeries::ord() const {
  const int i = first_nonzero();
  if (i < 0) return Valuation::at_least(Rational(trunc_, denom_));
  return {Rational(i, denom_), true};
}

bool PowerSeries::is_scalar() const {
  for (int i = 0; i < trunc_; ++i)
    for (int j = 1; j < d_; ++j)
      if (raw(i)[j] != 0) return false;
  return true;
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& o) {
  check_compatible(*this, o);
  if (o.trunc_ < trunc_) *this = truncated(o.trunc_);
  const auto& R = ring_->base();
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = R.add(data_[i], o.data_[i]);
  return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& o) {
  check_compatible(*this, o);
  if (o.trunc_ < trunc_) *this = truncated(o.trunc_);
  const auto& R = ring_->base();
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = R.sub(data_[i], o.data_[i]);
  return *this;
}

PowerSeries PowerSeries::operator-() const {
  PowerSeries r = *this;
  const auto& R = ring_->base();
  for (auto& c : r.data_) c = R.neg(c);
  return r;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  check_compatible(a, b);
  const int n = std::min(a.trunc_, b.trunc_);
  PowerSeries r(a.ring_, n, a.denom_);
  const UnramifiedRing& Z = *a.ring_;
  if (a.d_ == 1) {
    const ResidueRing& R = Z.base();
    const u64 mod = R.modulus();
    const bool small = mod < (u64{1} << 32);
    for (int i = 0; i < n; ++i) {
      const u64 x = a.data_[i];
      if (x == 0) continue;
      if (small) {
        for (int j = 0; i + j < n; ++j) r.data_[i + j] = (r.data_[i + j] + x * b.data_[j]) % mod;
      } else {
        for (int j = 0; i + j < n; ++j) r.data_[i + j] = R.add(r.data_[i + j], R.mul(x, b.data_[j]));
      }
    }
    return r;
  }
  for (int i = 0; i < n; ++i) {
    if (a.coeff_is_zero(i)) continue;
    for (int j = 0; i + j < n; ++j) Z.mul_acc(a.raw(i), b.raw(j), r.raw(i + j));
  }
  return r;
}

PowerSeries PowerSeries::scaled(u64 c) const {
  PowerSeries r = *this;
  const auto& R = ring_->base();
  for (auto& x : r.data_) x = R.mul(x, c);
  return r;
}

PowerSeries PowerSeries::scaled(const UnramifiedRing::Elem& c) const {
  PowerSeries r(ring_, trunc_, denom_);
  for (int i = 0; i < trunc_; ++i) ring_->mul_into(raw(i), c.data(), r.raw(i));
  return r;
}

PowerSeries PowerSeries::shifted(int shift) const {
  PowerSeries r(ring_, trunc_, denom_);
  for (int i = 0; i < trunc_; ++i) {
    const int j = i + shift;
    if (j < 0) {
      if (!coeff_is_zero(i)) throw DomainError("negative exponent after shift");
      continue;
    }
    if (j >= trunc_) break;
    std::copy(raw(i), raw(i) + d_, r.raw(j));
  }
  return r;
}

PowerSeries PowerSeries::inverse() const {
  if (trunc_ == 0) return *this;
  const UnramifiedRing& Z = *ring_;
  const auto c0inv = Z.inv(coeff(0));
  // r_k = -c0^{-1} sum_{j>=1} c_j r_{k-j}
  PowerSeries r(ring_, trunc_, denom_);
  r.set_coeff(0, c0inv);
  std::vector<u64> acc(static_cast<std::size_t>(d_));
  for (int k = 1; k < trunc_; ++k) {
    std::fill(acc.begin(), acc.end(), 0);
    for (int j = 1; j <= k; ++j) {
      if (coeff_is_zero(j)) continue;
      Z.mul_acc(raw(j), r.raw(k - j), acc.data());
    }
    const auto v = Z.neg(Z.mul(acc, c0inv));
    r.set_coeff(k, v);
  }
  return r;
}

PowerSeries PowerSeries::pow(i64 e) const {
  if (e < 0) return inverse().pow(-e);
  PowerSeries r = one_like();
  PowerSeries b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e > 0) b *= b;
  }
  return r;
}

PowerSeries PowerSeries::divide_int(i64 k) const {
  if (k == 0) throw DomainError("division by zero");
  const ResidueRing& R = ring_->base();
  const u64 p = R.p();
  u64 ak = static_cast<u64>(k < 0 ? -k : k);
  int v = 0;
  while (ak % p == 0) {
    ak /= p;
    ++v;
  }
  if (v >= R.precision()) {
    throw PrecisionUnderflow("dividing by " + std::to_string(k) + " exhausts the p-adic precision");
  }
  const u64 pv = R.p_power(v);
  u64 unit_inv = R.inv(R.from_int(static_cast<i64>(ak)));
  if (k < 0) unit_inv = R.neg(unit_inv);
  PowerSeries r = *this;
  for (auto& c : r.data_) {
    if (c % pv != 0) {
      throw IntegralityViolation("coefficient not divisible by " + std::to_string(k));
    }
    c = R.mul(c / pv, unit_inv);
  }
  return r;
}

PowerSeries PowerSeries::mul_p_power(int e) const {
  const ResidueRing& R = ring_->base();
  if (e >= R.precision()) return zero_like();
  return scaled(R.p_power(e));
}

PowerSeries PowerSeries::truncated(int trunc) const {
  PowerSeries r(ring_, std::min(trunc, trunc_), denom_);
  std::copy(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(r.data_.size()), r.data_.begin());
  return r;
}

PowerSeries PowerSeries::reduced(ZqPtr lower) const {
  if (lower->p() != ring_->p() || lower->degree() != d_ || lower->precision() > ring_->precision()) {
    throw DomainError("cannot reduce to the requested coefficient ring");
  }
  PowerSeries r(std::move(lower), trunc_, denom_);
  const u64 mod = r.ring_->base().modulus();
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] % mod;
  return r;
}

PowerSeries PowerSeries::compose(const PowerSeries& s) const {
  if (denom_ != 1) throw DomainError("composition needs integral exponents");
  if (s.trunc_ > 0 && !s.coeff_is_zero(0)) throw DomainError("composition needs zero constant term");
  const int n = std::min(trunc_, s.trunc_);
  // Horner: c_0 + s (c_1 + s (c_2 + ...)).
  PowerSeries r(s.ring_, n, s.denom_);
  for (int i = trunc_ - 1; i >= 0; --i) {
    r = r * s;
    if (n > 0) {
      std::vector<u64> c0(r.raw(0), r.raw(0) + d_);
      r.set_coeff(0, ring_->add(c0, coeff(i)));
    }
  }
  return r;
}

bool operator==(const PowerSeries& a, const PowerSeries& b) {
  return same_ring(*a.ring_, *b.ring_) && a.trunc_ == b.trunc_ && a.denom_ == b.denom_ &&
         a.data_ == b.data_;
}

}  // namespace tadic
