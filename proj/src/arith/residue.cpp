#include "tadic/arith/residue.hpp"

#include <string>

#include "tadic/errors.hpp"

namespace tadic {

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

u64 checked_pow(u64 p, int e) {
  constexpr u64 limit = u64{1} << 62;
  u64 r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > limit / p) return 0;
    r *= p;
  }
  return r < limit ? r : 0;
}

int max_precision(u64 p) {
  int m = 0;
  while (checked_pow(p, m + 1) != 0) ++m;
  return m;
}

int vp_factorial(u64 n, u64 p) {
  int v = 0;
  for (u64 pk = p; pk <= n; pk *= p) {
    v += static_cast<int>(n / pk);
    if (pk > n / p) break;
  }
  return v;
}

int vp(u64 n, u64 p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

ResidueRing::ResidueRing(u64 p, int precision) : p_(p), precision_(precision) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  if (precision < 1) throw PrecisionUnderflow("p-adic precision must be at least 1");
  modulus_ = checked_pow(p, precision);
  if (modulus_ == 0) {
    throw PrecisionUnderflow("p^M = " + std::to_string(p) + "^" + std::to_string(precision) +
                             " exceeds the 62-bit residue range");
  }
  small_ = modulus_ < (u64{1} << 32);
  powers_.resize(static_cast<std::size_t>(precision) + 1);
  powers_[0] = 1;
  for (int i = 1; i <= precision; ++i) powers_[i] = powers_[i - 1] * p;
}

u64 ResidueRing::from_int(i64 x) const {
  const i64 m = static_cast<i64>(modulus_);
  i64 r = x % m;
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

u64 ResidueRing::pow(u64 a, u64 e) const {
  u64 r = 1 % modulus_;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 ResidueRing::inv(u64 a) const {
  if (a % p_ == 0) throw DomainError("inverting a non-unit residue");
  // Extended Euclid on signed 128-bit to stay clear of overflow.
  __int128 r0 = static_cast<__int128>(modulus_), r1 = a;
  __int128 s0 = 0, s1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  __int128 m = static_cast<__int128>(modulus_);
  __int128 res = s0 % m;
  if (res < 0) res += m;
  return static_cast<u64>(res);
}

int ResidueRing::val(u64 a) const {
  if (a == 0) return precision_;
  int v = 0;
  while (a % p_ == 0) {
    a /= p_;
    ++v;
  }
  return v;
}

}  // namespace tadic
