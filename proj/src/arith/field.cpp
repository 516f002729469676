#include "tadic/arith/field.hpp"

#include <string>

#include "tadic/errors.hpp"

namespace tadic {
namespace {

using Poly = std::vector<u64>;  // coefficients over F_p, lowest first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f by the monic polynomial g.
Poly poly_rem(Poly f, const Poly& g, u64 p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const u64 lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      f[shift + i] = (f[shift + i] + p - (lead * g[i]) % p) % p;
    }
    trim(f);
  }
  return f;
}

Poly poly_mulmod(const Poly& x, const Poly& y, const Poly& h, u64 p) {
  if (x.empty() || y.empty()) return {};
  Poly r(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p;
  return poly_rem(std::move(r), h, p);
}

Poly poly_powmod(Poly x, u64 e, const Poly& h, u64 p) {
  Poly r{1};
  r = poly_rem(r, h, p);
  while (e > 0) {
    if (e & 1) r = poly_mulmod(r, x, h, p);
    x = poly_mulmod(x, x, h, p);
    e >>= 1;
  }
  return r;
}

Poly monic_from_code(u64 code, int deg, u64 p) {
  Poly f(static_cast<std::size_t>(deg) + 1, 0);
  for (int i = 0; i < deg; ++i) {
    f[i] = code % p;
    code /= p;
  }
  f[deg] = 1;
  return f;
}

bool is_irreducible(const Poly& h, u64 p) {
  const int a = static_cast<int>(h.size()) - 1;
  for (int d = 1; 2 * d <= a; ++d) {
    const u64 count = checked_pow(p, d);
    for (u64 code = 0; code < count; ++code) {
      if (poly_rem(h, monic_from_code(code, d, p), p).empty()) return false;
    }
  }
  return true;
}

Poly digits_of(u64 code, int a, u64 p) {
  Poly d(static_cast<std::size_t>(a), 0);
  for (int i = 0; i < a; ++i) {
    d[i] = code % p;
    code /= p;
  }
  return d;
}

u64 code_of(const Poly& d, u64 p) {
  u64 c = 0;
  for (std::size_t i = d.size(); i-- > 0;) c = c * p + d[i];
  return c;
}

}  // namespace

std::shared_ptr<const FieldCtx> FieldCtx::build(u64 p, int a) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  if (a < 1) throw DomainError("extension degree must be positive");
  const u64 q = checked_pow(p, a);
  if (q == 0 || q > (u64{1} << 22)) {
    throw DomainError("field of order " + std::to_string(p) + "^" + std::to_string(a) +
                      " is too large to enumerate");
  }

  auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
  ctx->p_ = p;
  ctx->a_ = a;
  ctx->q_ = q;

  const u64 lower_count = q;  // p^a choices for h_0..h_{a-1}
  bool found = false;
  for (u64 code = 0; code < lower_count && !found; ++code) {
    Poly h = monic_from_code(code, a, p);
    if (is_irreducible(h, p)) {
      ctx->poly_ = h;
      found = true;
    }
  }
  if (!found) throw Error("no irreducible polynomial found (internal error)");

  const auto factors = prime_factors(q - 1);
  bool have_gen = false;
  for (u64 code = 1; code < q && !have_gen; ++code) {
    const Poly g = digits_of(code, a, p);
    bool primitive = true;
    for (u64 r : factors) {
      Poly t = poly_powmod(g, (q - 1) / r, ctx->poly_, p);
      trim(t);
      if (t.size() == 1 && t[0] == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      ctx->generator_ = static_cast<Elem>(code);
      have_gen = true;
    }
  }
  if (!have_gen) throw Error("no generator of F_q^x found (internal error)");

  ctx->exp_.resize(q - 1);
  ctx->log_.assign(q, 0);
  Poly cur{1};
  const Poly g = digits_of(ctx->generator_, a, p);
  for (u64 e = 0; e + 1 < q; ++e) {
    Poly padded = cur;
    padded.resize(static_cast<std::size_t>(a), 0);
    const auto c = static_cast<Elem>(code_of(padded, p));
    ctx->exp_[e] = c;
    ctx->log_[c] = e;
    cur = poly_mulmod(cur, g, ctx->poly_, p);
  }
  return ctx;
}

FieldCtx::Elem FieldCtx::from_int(i64 x) const {
  i64 r = x % static_cast<i64>(p_);
  if (r < 0) r += static_cast<i64>(p_);
  return static_cast<Elem>(r);
}

FieldCtx::Elem FieldCtx::add(Elem x, Elem y) const {
  u64 out = 0, scale = 1;
  u64 xs = x, ys = y;
  for (int i = 0; i < a_; ++i) {
    out += ((xs % p_ + ys % p_) % p_) * scale;
    xs /= p_;
    ys /= p_;
    scale *= p_;
  }
  return static_cast<Elem>(out);
}

FieldCtx::Elem FieldCtx::neg(Elem x) const {
  u64 out = 0, scale = 1;
  u64 xs = x;
  for (int i = 0; i < a_; ++i) {
    out += ((p_ - xs % p_) % p_) * scale;
    xs /= p_;
    scale *= p_;
  }
  return static_cast<Elem>(out);
}

FieldCtx::Elem FieldCtx::sub(Elem x, Elem y) const { return add(x, neg(y)); }

FieldCtx::Elem FieldCtx::mul(Elem x, Elem y) const {
  if (x == 0 || y == 0) return 0;
  return exp((log_[x] + log_[y]) % (q_ - 1));
}

FieldCtx::Elem FieldCtx::inv(Elem x) const {
  if (x == 0) throw DomainError("inverse of zero in F_q");
  return exp((q_ - 1 - log_[x]) % (q_ - 1));
}

FieldCtx::Elem FieldCtx::pow(Elem x, u64 e) const {
  if (x == 0) return e == 0 ? 1 : 0;
  const u64 l = static_cast<u64>((static_cast<u128>(log_[x]) * e) % (q_ - 1));
  return exp(l);
}

std::vector<u64> FieldCtx::digits(Elem x) const { return digits_of(x, a_, p_); }

FieldCtx::Elem FieldCtx::from_digits(const std::vector<u64>& d) const {
  Poly r = poly_rem(d, poly_, p_);
  r.resize(static_cast<std::size_t>(a_), 0);
  return static_cast<Elem>(code_of(r, p_));
}

FieldCtx::Elem FieldCtx::frob_power(Elem c, int i) const {
  // c^(p^i) only depends on i mod a.
  const int k = i % a_;
  u64 e = 1;
  for (int j = 0; j < k; ++j) e *= p_;
  return pow(c, e);
}

FieldEmbedding::FieldEmbedding(FieldPtr small, FieldPtr large)
    : small_(std::move(small)), large_(std::move(large)) {
  if (small_->p() != large_->p() || large_->degree() % small_->degree() != 0) {
    throw DomainError("no embedding between the given fields");
  }
  const int a = small_->degree();
  FieldCtx::Elem root = 0;
  if (small_.get() == large_.get() ||
      (small_->degree() == large_->degree() && small_->defining_poly() == large_->defining_poly())) {
    root = a == 1 ? 0 : static_cast<FieldCtx::Elem>(small_->p());  // the class of y itself
  } else {
    // Smallest discrete log whose element is a root of h.
    const auto& h = small_->defining_poly();
    bool found = false;
    for (u64 e = 0; e + 1 < large_->order() && !found; ++e) {
      const FieldCtx::Elem z = large_->exp(e);
      FieldCtx::Elem acc = 0;
      for (std::size_t i = h.size(); i-- > 0;) {
        acc = large_->add(large_->mul(acc, z), large_->from_int(static_cast<i64>(h[i])));
      }
      if (acc == 0) {
        root = z;
        found = true;
      }
    }
    if (!found && a == 1) {
      // h = y + c: the root is -c (possibly zero).
      root = large_->from_int(-static_cast<i64>(h[0]));
      found = true;
    }
    if (!found) throw Error("defining polynomial has no root in the extension (internal error)");
  }
  root_powers_.resize(static_cast<std::size_t>(a));
  FieldCtx::Elem cur = 1;
  for (int i = 0; i < a; ++i) {
    root_powers_[i] = cur;
    cur = large_->mul(cur, root);
  }
}

FieldCtx::Elem FieldEmbedding::operator()(FieldCtx::Elem x) const {
  const auto d = small_->digits(x);
  FieldCtx::Elem acc = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) continue;
    acc = large_->add(acc, large_->mul(large_->from_int(static_cast<i64>(d[i])), root_powers_[i]));
  }
  return acc;
}

}  // namespace tadic
