#pragma once

#include <vector>

#include "tadic/series/power_series.hpp"

namespace tadic {

/// Digits lost by one_plus_T_pow at truncation N: ord_p((N-1)!).
int binomial_loss(u64 p, int N);

/// (1 + T)^t mod T^N for many t in Z_p given mod p^{M_in}. binom(t, j) depends
/// on t mod p^L only to L - ord_p(j!) digits, so results are certified over
/// `out` when out->precision() <= M_in - binomial_loss(p, N).
class BinomialSeries {
 public:
  BinomialSeries(const ResidueRing& in, int N, ZqPtr out);

  PowerSeries operator()(u64 t) const;
  /// acc += weight * (1 + T)^t.
  void accumulate(u64 t, u64 weight, PowerSeries& acc) const;

  int trunc() const { return N_; }
  const ZqPtr& target() const { return out_; }

 private:
  template <class Emit>
  void expand(u64 t, Emit&& emit) const;

  ResidueRing in_;
  int N_;
  ZqPtr out_;
  std::vector<u64> den_unit_inv_;  // unit part of j, inverted mod p^{M_in}
  std::vector<int> den_val_;
};

PowerSeries one_plus_T_pow(u64 t, const ResidueRing& in, int N, const ZqPtr& out);

}  // namespace tadic
