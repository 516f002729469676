#include "tadic/arith/binomial.hpp"

#include <string>

#include "tadic/errors.hpp"

namespace tadic {

int binomial_loss(u64 p, int N) { return N <= 1 ? 0 : vp_factorial(static_cast<u64>(N - 1), p); }

BinomialSeries::BinomialSeries(const ResidueRing& in, int N, ZqPtr out)
    : in_(in), N_(N), out_(std::move(out)) {
  const u64 p = in.p();
  if (out_->p() != p || out_->degree() != 1) throw DomainError("binomial series target must be Z_p");
  if (N < 0) throw DomainError("negative truncation");
  const int loss = binomial_loss(p, N);
  if (out_->precision() > in.precision() - loss) {
    throw PrecisionUnderflow("(1+T)^t to T^" + std::to_string(N) + " certifies only " +
                             std::to_string(in.precision() - loss) + " p-adic digits, " +
                             std::to_string(out_->precision()) + " requested");
  }
  den_unit_inv_.assign(static_cast<std::size_t>(std::max(N, 1)), 1);
  den_val_.assign(static_cast<std::size_t>(std::max(N, 1)), 0);
  for (int j = 1; j < N; ++j) {
    u64 den = static_cast<u64>(j);
    int v = 0;
    while (den % p == 0) {
      den /= p;
      ++v;
    }
    den_val_[j] = v;
    den_unit_inv_[j] = in.inv(den % in.modulus());
  }
}

// binom(t, j) = p^v * unit through binom(t, j) = binom(t, j-1) (t-j+1) / j with t
// the integer representative in [0, p^{M_in}).
template <class Emit>
void BinomialSeries::expand(u64 t, Emit&& emit) const {
  const ResidueRing& W = in_;
  const ResidueRing& R = out_->base();
  const u64 p = W.p();
  if (N_ == 0) return;
  u64 unit = 1 % W.modulus();
  int v = 0;
  emit(0, 1 % R.modulus());
  for (int j = 1; j < N_; ++j) {
    if (t < static_cast<u64>(j)) break;  // t - j + 1 == 0 from here on
    u64 num = t - static_cast<u64>(j) + 1;
    while (num % p == 0) {
      num /= p;
      ++v;
    }
    v -= den_val_[j];
    unit = W.mul(unit, W.mul(num % W.modulus(), den_unit_inv_[j]));
    if (v < 0) throw Error("negative valuation of a binomial coefficient (internal error)");
    if (v < R.precision()) emit(j, R.mul(unit % R.modulus(), R.p_power(v)));
  }
}

PowerSeries BinomialSeries::operator()(u64 t) const {
  PowerSeries r(out_, N_);
  expand(t, [&](int j, u64 c) { r.set(j, c); });
  return r;
}

void BinomialSeries::accumulate(u64 t, u64 weight, PowerSeries& acc) const {
  const ResidueRing& R = out_->base();
  const u64 w = weight % R.modulus();
  expand(t, [&](int j, u64 c) { acc.set(j, R.add(acc.at(j), R.mul(c, w))); });
}

PowerSeries one_plus_T_pow(u64 t, const ResidueRing& in, int N, const ZqPtr& out) {
  return BinomialSeries(in, N, out)(t);
}

}  // namespace tadic
