#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tadic/errors.hpp"

namespace tadic {

/// A polynomial c_0 + c_1 s + ... + c_K s^K standing for a power series in s
/// known mod s^{K+1}. C is PowerSeries or CycElem: anything with + - * neg,
/// zero_like/one_like, divide_int and mul_p_power.
template <class C>
class SSeries {
 public:
  SSeries() = default;
  explicit SSeries(std::vector<C> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw DomainError("an s-series needs at least a constant term");
  }

  static SSeries one(const C& proto, int deg) {
    std::vector<C> c(static_cast<std::size_t>(deg) + 1, proto.zero_like());
    c[0] = proto.one_like();
    return SSeries(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const C& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  C& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  const std::vector<C>& coeffs() const { return c_; }

  friend SSeries operator*(const SSeries& a, const SSeries& b) {
    const int K = std::min(a.degree(), b.degree());
    std::vector<C> r(static_cast<std::size_t>(K) + 1, a[0].zero_like());
    for (int i = 0; i <= K; ++i)
      for (int j = 0; i + j <= K; ++j) r[i + j] += a[i] * b[j];
    return SSeries(std::move(r));
  }

  friend SSeries operator+(const SSeries& a, const SSeries& b) {
    const int K = std::min(a.degree(), b.degree());
    std::vector<C> r;
    for (int i = 0; i <= K; ++i) r.push_back(a[i] + b[i]);
    return SSeries(std::move(r));
  }

  friend bool operator==(const SSeries& a, const SSeries& b) { return a.c_ == b.c_; }

  /// Inverse of a series with c_0 = 1 (no division needed).
  SSeries inverse() const {
    const int K = degree();
    std::vector<C> r(static_cast<std::size_t>(K) + 1, c_[0].zero_like());
    r[0] = c_[0].one_like();
    for (int k = 1; k <= K; ++k) {
      C acc = c_[0].zero_like();
      for (int j = 1; j <= k; ++j) acc += c_[j] * r[k - j];
      r[k] = -acc;
    }
    return SSeries(std::move(r));
  }

  SSeries pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    SSeries r = one(c_[0], degree());
    SSeries b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e > 0) b = b * b;
    }
    return r;
  }

  /// s -> p^e s, i.e. c_k -> p^{e k} c_k. With e = a j this is s -> q^j s.
  SSeries scale_s(int e) const {
    std::vector<C> r;
    for (int k = 0; k <= degree(); ++k) r.push_back(c_[k].mul_p_power(e * k));
    return SSeries(std::move(r));
  }

  /// exp(sum_{k>=1} sigma_k s^k / k) from sigma_1..sigma_K (sigma[0] unused),
  /// by k F_k = sum_{j=1}^k sigma_j F_{k-j}. Each division is asserted exact;
  /// the result carries ord_p(K!) fewer correct digits than the input.
  static SSeries exp_of_power_sums(const std::vector<C>& sigma, const C& proto) {
    const int K = static_cast<int>(sigma.size()) - 1;
    std::vector<C> F(static_cast<std::size_t>(K) + 1, proto.zero_like());
    F[0] = proto.one_like();
    for (int k = 1; k <= K; ++k) {
      C acc = proto.zero_like();
      for (int j = 1; j <= k; ++j) acc += sigma[j] * F[k - j];
      F[k] = acc.divide_int(k);
    }
    return SSeries(std::move(F));
  }

  /// exp(g) for g with g_0 = 0.
  static SSeries exp_generating(const SSeries& g) {
    std::vector<C> sigma;
    sigma.push_back(g[0].zero_like());
    for (int j = 1; j <= g.degree(); ++j) {
      C t = g[j].zero_like();
      for (int i = 0; i < j; ++i) t += g[j];
      sigma.push_back(t);
    }
    return exp_of_power_sums(sigma, g[0]);
  }

  /// log F for c_0 = 1: k g_k = k F_k - sum_{j=1}^{k-1} j g_j F_{k-j}.
  SSeries log() const {
    const int K = degree();
    std::vector<C> g(static_cast<std::size_t>(K) + 1, c_[0].zero_like());
    std::vector<C> jg(static_cast<std::size_t>(K) + 1, c_[0].zero_like());  // j g_j
    for (int k = 1; k <= K; ++k) {
      C acc = c_[0].zero_like();
      for (int i = 0; i < k; ++i) acc += c_[k];
      for (int j = 1; j < k; ++j) acc -= jg[j] * c_[k - j];
      jg[k] = acc;
      g[k] = acc.divide_int(k);
    }
    return SSeries(std::move(g));
  }

  /// Apply a coefficient map (reduction, truncation, specialization).
  template <class F>
  auto map(F&& fn) const {
    using D = decltype(fn(c_[0]));
    std::vector<D> r;
    for (const auto& c : c_) r.push_back(fn(c));
    return SSeries<D>(std::move(r));
  }

  SSeries truncated(int deg) const {
    std::vector<C> r(c_.begin(), c_.begin() + std::min(deg, degree()) + 1);
    return SSeries(std::move(r));
  }

 private:
  std::vector<C> c_;
};

}  // namespace tadic
