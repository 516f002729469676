#pragma once

#include <cstdint>
#include <vector>

namespace tadic {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

bool is_prime(u64 n);
std::vector<u64> prime_factors(u64 n);

/// p^e, or 0 when the result would not fit below 2^62.
u64 checked_pow(u64 p, int e);

/// Largest M with p^M < 2^62.
int max_precision(u64 p);

/// ord_p(n!).
int vp_factorial(u64 n, u64 p);

/// ord_p(n) for n != 0.
int vp(u64 n, u64 p);

/// The ring Z/p^M with p^M < 2^62. Residues are kept in [0, p^M).
class ResidueRing {
 public:
  ResidueRing(u64 p, int precision);

  u64 p() const { return p_; }
  int precision() const { return precision_; }
  u64 modulus() const { return modulus_; }

  /// p^k for 0 <= k <= precision.
  u64 p_power(int k) const { return powers_[static_cast<std::size_t>(k)]; }

  u64 from_int(i64 x) const;
  u64 reduce(u64 x) const { return x % modulus_; }

  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= modulus_ ? s - modulus_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + modulus_ - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : modulus_ - a; }
  u64 mul(u64 a, u64 b) const {
    if (small_) return (a * b) % modulus_;
    return static_cast<u64>((static_cast<u128>(a) * b) % modulus_);
  }
  u64 pow(u64 a, u64 e) const;

  /// Inverse of a unit; throws DomainError on a non-unit.
  u64 inv(u64 a) const;

  /// ord_p of the residue, or precision() when it is zero.
  int val(u64 a) const;

  /// a mod p^k.
  u64 truncate(u64 a, int k) const { return a % p_power(k); }

 private:
  u64 p_;
  int precision_;
  u64 modulus_;
  bool small_;
  std::vector<u64> powers_;
};

}  // namespace tadic
