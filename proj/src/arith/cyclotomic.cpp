#include "tadic/arith/cyclotomic.hpp"

#include <string>

#include "tadic/errors.hpp"
#include "tadic/series/power_series.hpp"

namespace tadic {
namespace {

std::vector<u64> poly_mul(const std::vector<u64>& a, const std::vector<u64>& b, const ResidueRing& R) {
  std::vector<u64> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = R.add(r[i + j], R.mul(a[i], b[j]));
  }
  return r;
}

}  // namespace

CycRing::CycRing(u64 p, int m, int precision) : base_(p, precision), m_(m) {
  if (m < 1) throw DomainError("character level m must be at least 1");
  const u64 pm1 = checked_pow(p, m - 1);
  if (pm1 == 0 || pm1 * (p - 1) > 100000) throw DomainError("cyclotomic degree too large");
  e_ = static_cast<int>(pm1 * (p - 1));

  // (1 + X)^{p^(m-1)}.
  std::vector<u64> base{1, 1};
  std::vector<u64> step{1};
  for (int i = 0; i < m - 1; ++i) {
    std::vector<u64> cur = base;
    for (u64 j = 1; j < p; ++j) cur = poly_mul(cur, base, base_);
    base = cur;
  }
  step = base;
  phi_.assign(static_cast<std::size_t>(e_) + 1, 0);
  std::vector<u64> power{1};
  for (u64 i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < power.size(); ++j) phi_[j] = base_.add(phi_[j], power[j]);
    if (i + 1 < p) power = poly_mul(power, step, base_);
  }
  if (phi_.back() != 1) throw Error("cyclotomic modulus is not monic (internal error)");
}

std::shared_ptr<const CycRing> CycRing::build(u64 p, int m, int precision) {
  return std::shared_ptr<const CycRing>(new CycRing(p, m, precision));
}

CycElem::CycElem(CycPtr ring) : ring_(std::move(ring)) {
  c_.assign(static_cast<std::size_t>(ring_->ramification()), 0);
}

CycElem CycElem::from_int(CycPtr ring, i64 c) {
  CycElem x(std::move(ring));
  x.c_[0] = x.ring_->base().from_int(c);
  return x;
}

CycElem CycElem::uniformizer(CycPtr ring) {
  CycElem x(std::move(ring));
  if (x.ring_->ramification() == 1) {
    // p = 2, m = 1: X = zeta - 1 = -2.
    x.c_[0] = x.ring_->base().from_int(-2);
  } else {
    x.c_[1] = 1;
  }
  return x;
}

CycElem CycElem::zeta_power(CycPtr ring, i64 t) {
  const i64 pm = static_cast<i64>(checked_pow(ring->p(), ring->level()));
  i64 r = t % pm;
  if (r < 0) r += pm;
  CycElem zeta = from_int(ring, 1) + uniformizer(ring);
  return zeta.pow(static_cast<u64>(r));
}

bool CycElem::is_zero() const {
  for (u64 c : c_)
    if (c != 0) return false;
  return true;
}

CycElem& CycElem::operator+=(const CycElem& o) {
  const auto& R = ring_->base();
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = R.add(c_[i], o.c_[i]);
  return *this;
}

CycElem& CycElem::operator-=(const CycElem& o) {
  const auto& R = ring_->base();
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = R.sub(c_[i], o.c_[i]);
  return *this;
}

CycElem CycElem::operator-() const {
  CycElem r = *this;
  const auto& R = ring_->base();
  for (auto& c : r.c_) c = R.neg(c);
  return r;
}

CycElem operator*(const CycElem& a, const CycElem& b) {
  const CycRing& K = *a.ring_;
  const ResidueRing& R = K.base();
  const int e = K.ramification();
  std::vector<u64> wide = poly_mul(a.c_, b.c_, R);
  const auto& phi = K.modulus_poly();
  for (int k = 2 * e - 2; k >= e; --k) {
    const u64 c = wide[k];
    if (c == 0) continue;
    for (int i = 0; i <= e; ++i) wide[k - e + i] = R.sub(wide[k - e + i], R.mul(c, phi[i]));
  }
  CycElem r(a.ring_);
  for (int i = 0; i < e; ++i) r.c_[i] = wide[i];
  return r;
}

CycElem CycElem::pow(u64 e) const {
  CycElem r = one_like();
  CycElem b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e > 0) b *= b;
  }
  return r;
}

CycElem CycElem::divide_int(i64 k) const {
  if (k == 0) throw DomainError("division by zero");
  const ResidueRing& R = ring_->base();
  u64 ak = static_cast<u64>(k < 0 ? -k : k);
  int v = 0;
  while (ak % R.p() == 0) {
    ak /= R.p();
    ++v;
  }
  if (v >= R.precision()) {
    throw PrecisionUnderflow("dividing by " + std::to_string(k) + " exhausts the p-adic precision");
  }
  const u64 pv = R.p_power(v);
  u64 unit_inv = R.inv(R.from_int(static_cast<i64>(ak)));
  if (k < 0) unit_inv = R.neg(unit_inv);
  CycElem r = *this;
  for (auto& c : r.c_) {
    if (c % pv != 0) throw IntegralityViolation("cyclotomic element not divisible by " + std::to_string(k));
    c = R.mul(c / pv, unit_inv);
  }
  return r;
}

CycElem CycElem::mul_p_power(int e) const {
  const ResidueRing& R = ring_->base();
  CycElem r = *this;
  if (e >= R.precision()) return zero_like();
  for (auto& c : r.c_) c = R.mul(c, R.p_power(e));
  return r;
}

CycElem CycElem::reduced(CycPtr lower) const {
  if (lower->p() != ring_->p() || lower->level() != ring_->level() || lower->precision() > ring_->precision()) {
    throw DomainError("cannot reduce to the requested cyclotomic ring");
  }
  CycElem r(std::move(lower));
  const u64 mod = r.ring_->base().modulus();
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] % mod;
  return r;
}

Valuation cyc_ord(const CycElem& x) {
  const CycRing& K = *x.ring();
  const i64 e = K.ramification();
  const i64 cap = e * K.precision();
  i64 best = cap;
  for (int i = 0; i < e; ++i) {
    const u64 c = x.coeff(i);
    if (c == 0) continue;
    best = std::min(best, e * K.base().val(c) + i);
  }
  if (best >= cap) return Valuation::at_least(Rational(cap));
  return {Rational(best), true};
}

CycElem specialize(const PowerSeries& s, const CycPtr& ring) {
  if (s.denom() != 1 || !s.is_scalar()) throw DomainError("specialization needs a Z_p[[T]] series");
  const i64 need = static_cast<i64>(ring->ramification()) * ring->precision();
  if (s.trunc() < need) {
    throw PrecisionUnderflow("T-truncation " + std::to_string(s.trunc()) + " is below e*M = " +
                             std::to_string(need) + " needed to specialize at pi_psi");
  }
  if (s.ring()->precision() < ring->precision()) {
    throw PrecisionUnderflow("series carries fewer p-adic digits than the cyclotomic target");
  }
  const CycElem X = CycElem::uniformizer(ring);
  const u64 mod = ring->base().modulus();
  CycElem acc(ring);
  // Terms T^j with j >= e*M vanish mod p^M.
  for (int j = static_cast<int>(std::min<i64>(s.trunc(), need)) - 1; j >= 0; --j) {
    acc *= X;
    acc += CycElem::from_int(ring, static_cast<i64>(s.at(j) % mod));
  }
  return acc;
}

}  // namespace tadic
