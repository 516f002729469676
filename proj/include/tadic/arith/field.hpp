#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "tadic/arith/residue.hpp"

namespace tadic {

/// The finite field F_q, q = p^a, presented as F_p[y]/(h(y)).
///
/// An element is encoded as the integer sum c_i p^i of its power-basis
/// digits. Multiplication goes through discrete-log tables built from a
/// fixed generator, so q is limited to 2^22.
class FieldCtx {
 public:
  using Elem = std::uint32_t;

  /// Deterministic: h is the smallest monic irreducible of degree a when its
  /// lower coefficients are read as a base-p integer (c_{a-1} most
  /// significant), the generator is the smallest code of order q - 1.
  static std::shared_ptr<const FieldCtx> build(u64 p, int a);

  u64 p() const { return p_; }
  int degree() const { return a_; }
  u64 order() const { return q_; }

  /// Coefficients h_0..h_a of the defining polynomial (h_a = 1).
  const std::vector<u64>& defining_poly() const { return poly_; }
  Elem generator() const { return generator_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(i64 x) const;

  Elem add(Elem x, Elem y) const;
  Elem sub(Elem x, Elem y) const;
  Elem neg(Elem x) const;
  Elem mul(Elem x, Elem y) const;
  Elem inv(Elem x) const;
  Elem pow(Elem x, u64 e) const;

  /// Discrete log to the generator; x must be nonzero.
  u64 log(Elem x) const { return log_[x]; }
  /// generator^e.
  Elem exp(u64 e) const { return exp_[e % (q_ - 1)]; }

  std::vector<u64> digits(Elem x) const;
  Elem from_digits(const std::vector<u64>& d) const;

  /// c^(p^i).
  Elem frob_power(Elem c, int i) const;

 private:
  FieldCtx() = default;

  u64 p_ = 0;
  int a_ = 0;
  u64 q_ = 0;
  std::vector<u64> poly_;
  Elem generator_ = 0;
  std::vector<Elem> exp_;
  std::vector<u64> log_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

/// A field embedding F_q -> F_{q^k} (k >= 1), fixed by sending y to a root of
/// the defining polynomial of F_q.
class FieldEmbedding {
 public:
  FieldEmbedding(FieldPtr small, FieldPtr large);
  FieldCtx::Elem operator()(FieldCtx::Elem x) const;
  const FieldPtr& source() const { return small_; }
  const FieldPtr& target() const { return large_; }

 private:
  FieldPtr small_, large_;
  std::vector<FieldCtx::Elem> root_powers_;
};

}  // namespace tadic
