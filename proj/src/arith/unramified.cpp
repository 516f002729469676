#include "tadic/arith/unramified.hpp"

#include "tadic/errors.hpp"

namespace tadic {

UnramifiedRing::UnramifiedRing(FieldPtr field, int precision)
    : field_(std::move(field)), base_(field_->p(), precision), d_(field_->degree()) {
  const auto& h = field_->defining_poly();
  modpoly_.assign(h.begin(), h.begin() + d_);

  // trace(y^i) = sum_j [y^j] (y^i * y^j).
  basis_trace_.assign(static_cast<std::size_t>(d_), 0);
  Elem yi = one();
  Elem y = zero();
  if (d_ > 1) {
    y[1] = 1;
  } else {
    y[0] = base_.from_int(-static_cast<i64>(h[0]));
  }
  for (int i = 0; i < d_; ++i) {
    Elem yj = one();
    u64 tr = 0;
    for (int j = 0; j < d_; ++j) {
      const Elem prod = mul(yi, yj);
      tr = base_.add(tr, prod[j]);
      yj = mul(yj, y);
    }
    basis_trace_[i] = tr;
    yi = mul(yi, y);
  }
}

UnramifiedRing::Elem UnramifiedRing::one() const {
  Elem e = zero();
  e[0] = 1 % base_.modulus();
  return e;
}

UnramifiedRing::Elem UnramifiedRing::from_int(i64 x) const {
  Elem e = zero();
  e[0] = base_.from_int(x);
  return e;
}

UnramifiedRing::Elem UnramifiedRing::lift(FieldCtx::Elem x) const {
  const auto dg = field_->digits(x);
  Elem e = zero();
  for (int i = 0; i < d_; ++i) e[i] = dg[i];
  return e;
}

FieldCtx::Elem UnramifiedRing::residue(const Elem& x) const {
  std::vector<u64> dg(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) dg[i] = x[i] % base_.p();
  return field_->from_digits(dg);
}

UnramifiedRing::Elem UnramifiedRing::add(const Elem& x, const Elem& y) const {
  Elem r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = base_.add(x[i], y[i]);
  return r;
}

UnramifiedRing::Elem UnramifiedRing::sub(const Elem& x, const Elem& y) const {
  Elem r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = base_.sub(x[i], y[i]);
  return r;
}

UnramifiedRing::Elem UnramifiedRing::neg(const Elem& x) const {
  Elem r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = base_.neg(x[i]);
  return r;
}

UnramifiedRing::Elem UnramifiedRing::scale(const Elem& x, u64 c) const {
  Elem r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = base_.mul(x[i], c);
  return r;
}

bool UnramifiedRing::is_zero(const Elem& x) const {
  for (u64 c : x)
    if (c != 0) return false;
  return true;
}

void UnramifiedRing::reduce_product(u64* wide, u64* out) const {
  for (int k = 2 * d_ - 2; k >= d_; --k) {
    const u64 c = wide[k];
    if (c == 0) continue;
    for (int i = 0; i < d_; ++i) {
      wide[k - d_ + i] = base_.sub(wide[k - d_ + i], base_.mul(c, modpoly_[i]));
    }
  }
  for (int i = 0; i < d_; ++i) out[i] = wide[i];
}

void UnramifiedRing::mul_into(const u64* x, const u64* y, u64* out) const {
  if (d_ == 1) {
    out[0] = base_.mul(x[0], y[0]);
    return;
  }
  u64 wide[64] = {0};
  if (d_ > 32) throw DomainError("unramified degree above 32 is not supported");
  for (int i = 0; i < d_; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < d_; ++j) wide[i + j] = base_.add(wide[i + j], base_.mul(x[i], y[j]));
  }
  reduce_product(wide, out);
}

void UnramifiedRing::mul_acc(const u64* x, const u64* y, u64* out) const {
  if (d_ == 1) {
    out[0] = base_.add(out[0], base_.mul(x[0], y[0]));
    return;
  }
  u64 tmp[32];
  mul_into(x, y, tmp);
  for (int i = 0; i < d_; ++i) out[i] = base_.add(out[i], tmp[i]);
}

UnramifiedRing::Elem UnramifiedRing::mul(const Elem& x, const Elem& y) const {
  Elem r(x.size());
  mul_into(x.data(), y.data(), r.data());
  return r;
}

UnramifiedRing::Elem UnramifiedRing::pow(Elem x, u64 e) const {
  Elem r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

UnramifiedRing::Elem UnramifiedRing::inv(const Elem& x) const {
  const FieldCtx::Elem r = residue(x);
  if (r == 0) throw DomainError("inverting a non-unit in Z_q");
  Elem y = lift(field_->inv(r));
  // y <- y (2 - x y) doubles the number of correct digits.
  for (int prec = 1; prec < precision(); prec *= 2) {
    y = mul(y, sub(from_int(2), mul(x, y)));
  }
  return y;
}

UnramifiedRing::Elem UnramifiedRing::teichmuller(FieldCtx::Elem x) const {
  if (x == 0) return zero();
  Elem t = lift(x);
  const u64 q = field_->order();
  for (int i = 0; i < precision(); ++i) {
    Elem next = pow(t, q);
    if (next == t) break;
    t = std::move(next);
  }
  return t;
}

u64 UnramifiedRing::trace(const u64* x) const {
  u64 tr = 0;
  for (int i = 0; i < d_; ++i) tr = base_.add(tr, base_.mul(x[i], basis_trace_[i]));
  return tr;
}

u64 UnramifiedRing::trace(const Elem& x) const { return trace(x.data()); }

int UnramifiedRing::val(const Elem& x) const {
  int v = precision();
  for (u64 c : x) v = std::min(v, base_.val(c));
  return v;
}

FieldCtx::Elem frob_power(const FieldCtx& field, FieldCtx::Elem c, int i) {
  return field.frob_power(c, i);
}

}  // namespace tadic
