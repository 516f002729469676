#pragma once

#include <memory>
#include <vector>

#include "tadic/arith/residue.hpp"
#include "tadic/valuation.hpp"

namespace tadic {

class PowerSeries;

/// Z_p[zeta_{p^m}] / p^M written in powers of the uniformizer
/// X = zeta - 1, i.e. Z/p^M[X] / (Phi_{p^m}(1 + X)).
class CycRing : public std::enable_shared_from_this<CycRing> {
 public:
  static std::shared_ptr<const CycRing> build(u64 p, int m, int precision);

  u64 p() const { return base_.p(); }
  int level() const { return m_; }
  /// e = p^(m-1) (p - 1), the degree over Z_p.
  int ramification() const { return e_; }
  int precision() const { return base_.precision(); }
  const ResidueRing& base() const { return base_; }
  /// Phi_{p^m}(1 + X) mod p^M, monic of degree e, lowest coefficient first.
  const std::vector<u64>& modulus_poly() const { return phi_; }

 private:
  CycRing(u64 p, int m, int precision);

  ResidueRing base_;
  int m_;
  int e_;
  std::vector<u64> phi_;
};

using CycPtr = std::shared_ptr<const CycRing>;

class CycElem {
 public:
  CycElem() = default;
  explicit CycElem(CycPtr ring);

  static CycElem from_int(CycPtr ring, i64 c);
  /// zeta^t = (1 + X)^t for t in Z (only t mod p^m matters).
  static CycElem zeta_power(CycPtr ring, i64 t);
  /// The uniformizer pi_psi = zeta - 1.
  static CycElem uniformizer(CycPtr ring);

  const CycPtr& ring() const { return ring_; }
  const std::vector<u64>& coeffs() const { return c_; }
  u64 coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
  void set(int i, u64 v) { c_[static_cast<std::size_t>(i)] = v; }

  bool is_zero() const;
  CycElem zero_like() const { return CycElem(ring_); }
  CycElem one_like() const { return from_int(ring_, 1); }

  CycElem& operator+=(const CycElem& o);
  CycElem& operator-=(const CycElem& o);
  friend CycElem operator+(CycElem a, const CycElem& b) { return a += b; }
  friend CycElem operator-(CycElem a, const CycElem& b) { return a -= b; }
  CycElem operator-() const;
  friend CycElem operator*(const CycElem& a, const CycElem& b);
  CycElem& operator*=(const CycElem& o) { return *this = *this * o; }

  CycElem divide_int(i64 k) const;
  CycElem mul_p_power(int e) const;
  CycElem pow(u64 e) const;
  /// The same element over a ring of equal level and lower precision.
  CycElem reduced(CycPtr lower) const;

  friend bool operator==(const CycElem& a, const CycElem& b) {
    return a.ring_->level() == b.ring_->level() && a.c_ == b.c_;
  }

 private:
  CycPtr ring_;
  std::vector<u64> c_;
};

/// ord in units with ord(pi_psi) = 1: min_i (e ord_p(c_i) + i), or
/// "at least e M" when every coefficient vanishes at working precision.
Valuation cyc_ord(const CycElem& x);

/// T -> pi_psi. Requires trunc >= e * M so that the discarded T^N tail is
/// zero mod p^M. The series must be over Z_p with integral exponents.
CycElem specialize(const PowerSeries& s, const CycPtr& ring);

}  // namespace tadic
