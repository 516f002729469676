#pragma once

#include <memory>
#include <vector>

#include "tadic/arith/field.hpp"
#include "tadic/arith/residue.hpp"

namespace tadic {

/// Z_q / p^M with Z_q = Z_p[y]/(H(y)), H the lift of the defining polynomial
/// of a FieldCtx with coefficients in [0, p). Elements are coefficient vectors
/// in the power basis 1, y, ..., y^(d-1).
///
/// The raw pointer kernels (mul_into, add_into) exist for series code that
/// stores many ring elements in one flat buffer.
class UnramifiedRing {
 public:
  using Elem = std::vector<u64>;

  UnramifiedRing(FieldPtr field, int precision);

  const FieldPtr& field() const { return field_; }
  const ResidueRing& base() const { return base_; }
  int degree() const { return d_; }
  u64 p() const { return base_.p(); }
  int precision() const { return base_.precision(); }

  Elem zero() const { return Elem(static_cast<std::size_t>(d_), 0); }
  Elem one() const;
  Elem from_int(i64 x) const;
  /// Digit-wise lift of a residue field element (not the Teichmuller lift).
  Elem lift(FieldCtx::Elem x) const;
  FieldCtx::Elem residue(const Elem& x) const;

  Elem add(const Elem& x, const Elem& y) const;
  Elem sub(const Elem& x, const Elem& y) const;
  Elem neg(const Elem& x) const;
  Elem mul(const Elem& x, const Elem& y) const;
  Elem scale(const Elem& x, u64 c) const;
  Elem pow(Elem x, u64 e) const;
  bool is_zero(const Elem& x) const;

  /// Inverse of a unit by Newton iteration from the residue field inverse.
  Elem inv(const Elem& x) const;

  /// out += x * y.
  void mul_acc(const u64* x, const u64* y, u64* out) const;
  /// out = x * y (out may not alias the inputs).
  void mul_into(const u64* x, const u64* y, u64* out) const;

  /// The unique root of unity (or 0) congruent to x mod p: fixed point of
  /// t -> t^q reached by iterating from any lift.
  Elem teichmuller(FieldCtx::Elem x) const;

  /// Trace of multiplication by x on the power basis, a residue mod p^M.
  u64 trace(const Elem& x) const;
  u64 trace(const u64* x) const;

  /// Minimum ord_p over the coefficients; precision() for zero.
  int val(const Elem& x) const;

 private:
  void reduce_product(u64* wide, u64* out) const;

  FieldPtr field_;
  ResidueRing base_;
  int d_;
  std::vector<u64> modpoly_;      // H_0..H_{d-1} (monic, leading term implicit)
  std::vector<u64> basis_trace_;  // trace(y^i)
};

using ZqPtr = std::shared_ptr<const UnramifiedRing>;

/// frob_power on residue field coefficients: c -> c^(p^i). Lifting the result
/// gives sigma^i of the Teichmuller lift of c.
FieldCtx::Elem frob_power(const FieldCtx& field, FieldCtx::Elem c, int i);

}  // namespace tadic
