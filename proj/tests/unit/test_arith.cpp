#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "tadic/arith/binomial.hpp"
#include "tadic/arith/cyclotomic.hpp"
#include "tadic/arith/field.hpp"
#include "tadic/arith/unramified.hpp"
#include "tadic/errors.hpp"

using namespace tadic;
using boost::multiprecision::cpp_int;

namespace {

// Order of x in (Z/p)^x by repeated multiplication.
u64 naive_order(u64 x, u64 p) {
  u64 k = 1, y = x % p;
  while (y != 1) {
    y = y * x % p;
    ++k;
  }
  return k;
}

// Exact binomial coefficient binom(t, j) for a signed integer t.
cpp_int exact_binom(cpp_int t, int j) {
  cpp_int num = 1, den = 1;
  for (int i = 0; i < j; ++i) {
    num *= (t - i);
    den *= (i + 1);
  }
  return num / den;
}

u64 mod_of(const cpp_int& x, u64 m) {
  cpp_int r = x % m;
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

}  // namespace

TEST_CASE("field construction is deterministic and matches brute force") {
  auto f2 = FieldCtx::build(2, 1);
  CHECK(f2->defining_poly() == std::vector<u64>{0, 1});

  auto f5 = FieldCtx::build(5, 1);
  u64 smallest = 0;
  for (u64 g = 2; g < 5 && smallest == 0; ++g)
    if (naive_order(g, 5) == 4) smallest = g;
  CHECK(f5->generator() == smallest);
  CHECK(smallest == 2);

  auto f4 = FieldCtx::build(2, 2);
  CHECK(f4->defining_poly() == std::vector<u64>{1, 1, 1});

  CHECK_THROWS_AS(FieldCtx::build(4, 1), DomainError);
}

TEST_CASE("field arithmetic agrees with polynomial arithmetic in F_9") {
  auto F = FieldCtx::build(3, 2);
  const auto& h = F->defining_poly();
  for (FieldCtx::Elem x = 0; x < 9; ++x) {
    for (FieldCtx::Elem y = 0; y < 9; ++y) {
      const auto dx = F->digits(x), dy = F->digits(y);
      // (x0 + x1 y)(y0 + y1 y) with y^2 = -h1 y - h0.
      i64 c0 = static_cast<i64>(dx[0] * dy[0]);
      i64 c1 = static_cast<i64>(dx[0] * dy[1] + dx[1] * dy[0]);
      i64 c2 = static_cast<i64>(dx[1] * dy[1]);
      c0 -= c2 * static_cast<i64>(h[0]);
      c1 -= c2 * static_cast<i64>(h[1]);
      c0 = ((c0 % 3) + 3) % 3;
      c1 = ((c1 % 3) + 3) % 3;
      CHECK(F->mul(x, y) == F->from_digits({static_cast<u64>(c0), static_cast<u64>(c1)}));
    }
  }
}

TEST_CASE("frob_power") {
  auto F = FieldCtx::build(2, 2);
  const auto g = F->generator();
  CHECK(F->frob_power(g, 0) == g);
  CHECK(F->frob_power(g, 2) == g);
  CHECK(F->frob_power(g, 1) == F->mul(g, g));
}

TEST_CASE("teichmuller lifts match the brute-force fixed point") {
  {
    UnramifiedRing Z(FieldCtx::build(5, 1), 2);
    CHECK(Z.teichmuller(2)[0] == 7);
    CHECK(Z.teichmuller(1)[0] == 1);
    CHECK(Z.teichmuller(0)[0] == 0);
  }
  {
    UnramifiedRing Z(FieldCtx::build(3, 1), 3);
    CHECK(Z.teichmuller(2)[0] == 26);
  }
  // Prime fields: the unique t < p^M with t^p = t and t = x mod p.
  for (u64 p : {3, 5, 7}) {
    const int M = 3;
    UnramifiedRing Z(FieldCtx::build(p, 1), M);
    const u64 mod = Z.base().modulus();
    for (u64 x = 1; x < p; ++x) {
      u64 found = 0;
      for (u64 t = x; t < mod; t += p)
        if (Z.base().pow(t, p) == t) found = t;
      CHECK(Z.teichmuller(static_cast<FieldCtx::Elem>(x))[0] == found);
    }
  }
}

TEST_CASE("teichmuller lifts are multiplicative and idempotent over small fields") {
  for (auto [p, a] : {std::pair<u64, int>{2, 2}, {2, 3}, {3, 2}, {5, 2}, {7, 2}, {2, 6}}) {
    auto F = FieldCtx::build(p, a);
    UnramifiedRing Z(F, 6);
    std::vector<UnramifiedRing::Elem> lift(F->order());
    for (FieldCtx::Elem x = 0; x < F->order(); ++x) {
      lift[x] = Z.teichmuller(x);
      CHECK(Z.pow(lift[x], F->order()) == lift[x]);
      CHECK(Z.residue(lift[x]) == x);
    }
    for (FieldCtx::Elem x = 1; x < F->order(); ++x)
      for (FieldCtx::Elem y = 1; y < F->order(); ++y)
        CHECK(Z.mul(lift[x], lift[y]) == lift[F->mul(x, y)]);
  }
}

TEST_CASE("trace via the multiplication matrix") {
  // The lifted modulus is y^2 + y + 1, so y acts by [[0, -1], [1, -1]].
  UnramifiedRing Z(FieldCtx::build(2, 2), 4);
  UnramifiedRing::Elem y{0, 1};
  CHECK(Z.trace(y) == 15);
  CHECK(Z.trace(y) % 2 == 1);
  CHECK(Z.trace(Z.zero()) == 0);
  CHECK(Z.trace(Z.from_int(5)) == 10);

  // Trace of a Teichmuller lift equals the sum of its Frobenius conjugates,
  // which are themselves Teichmuller lifts of x^(p^i).
  for (auto [p, a] : {std::pair<u64, int>{3, 2}, {2, 3}, {5, 2}}) {
    auto F = FieldCtx::build(p, a);
    UnramifiedRing R(F, 5);
    for (FieldCtx::Elem x = 1; x < F->order(); ++x) {
      auto sum = R.zero();
      for (int i = 0; i < a; ++i) sum = R.add(sum, R.teichmuller(F->frob_power(x, i)));
      CHECK(sum[0] == R.trace(R.teichmuller(x)));
      for (int j = 1; j < a; ++j) CHECK(sum[j] == 0);
    }
  }
}

TEST_CASE("one_plus_T_pow against exact binomials") {
  const ResidueRing in(3, 12);
  auto out = make_zp(3, 12 - binomial_loss(3, 8));
  for (i64 t : {-5, -1, 0, 1, 2, 7, 40}) {
    const auto s = one_plus_T_pow(in.from_int(t), in, 8, out);
    for (int j = 0; j < 8; ++j) CHECK(s.at(j) == mod_of(exact_binom(t, j), out->base().modulus()));
  }
  auto z = make_zp(5, 3);
  const ResidueRing in5(5, 3);
  const auto geo = one_plus_T_pow(in5.from_int(-1), in5, 4, z);
  CHECK(geo.at(0) == 1);
  CHECK(geo.at(1) == 124);
  CHECK(geo.at(2) == 1);
  CHECK(geo.at(3) == 124);
  CHECK_THROWS_AS(one_plus_T_pow(1, in5, 6, z), PrecisionUnderflow);
}

TEST_CASE("one_plus_T_pow is a homomorphism on random pairs") {
  std::mt19937_64 rng(20260101);
  for (u64 p : {2, 3, 5}) {
    const int N = 12;
    const int Min = 20;
    const ResidueRing in(p, Min);
    auto out = make_zp(p, Min - binomial_loss(p, N));
    BinomialSeries B(in, N, out);
    for (int trial = 0; trial < 30; ++trial) {
      const u64 t1 = rng() % in.modulus();
      const u64 t2 = rng() % in.modulus();
      CHECK(B(in.add(t1, t2)) == B(t1) * B(t2));
    }
  }
}

TEST_CASE("cyclotomic valuation and arithmetic") {
  auto K = CycRing::build(3, 1, 4);
  CHECK(cyc_ord(CycElem::uniformizer(K)).value == Rational(1));
  CHECK(cyc_ord(CycElem::from_int(K, 3)).value == Rational(2));
  const auto z = CycElem::zeta_power(K, 1);
  const auto s = z + z * z;
  CHECK(s == CycElem::from_int(K, -1));
  CHECK(cyc_ord(s).value == Rational(0));
  CHECK(z.pow(3) == CycElem::from_int(K, 1));
  CHECK_FALSE(cyc_ord(CycElem(K)).exact);
  CHECK(cyc_ord(CycElem(K)).value == Rational(8));

  auto K2 = CycRing::build(2, 3, 6);
  CHECK(K2->ramification() == 4);
  CHECK(CycElem::zeta_power(K2, 8) == CycElem::from_int(K2, 1));
  CHECK(CycElem::zeta_power(K2, 4) == CycElem::from_int(K2, -1));

  // ord is additive on random products below the cap.
  std::mt19937_64 rng(7);
  auto K5 = CycRing::build(5, 2, 5);
  for (int trial = 0; trial < 50; ++trial) {
    CycElem x(K5), y(K5);
    for (int i = 0; i < K5->ramification(); ++i) {
      x.set(i, rng() % 5 == 0 ? 0 : rng() % K5->base().modulus());
      y.set(i, rng() % 3 == 0 ? 0 : (rng() % K5->base().modulus()) * 5 % K5->base().modulus());
    }
    const auto vx = cyc_ord(x), vy = cyc_ord(y), vxy = cyc_ord(x * y);
    if (vx.exact && vy.exact && vx.value + vy.value < K5->ramification() * K5->precision()) {
      CHECK(vxy.exact);
      CHECK(vxy.value == vx.value + vy.value);
    }
  }
}

TEST_CASE("specialization of (1+T)^t is zeta^t") {
  auto K = CycRing::build(3, 2, 3);
  const int N = K->ramification() * K->precision();
  const ResidueRing in(3, 3 + binomial_loss(3, N));
  auto zp = make_zp(3, 3);
  for (i64 t : {0, 1, 2, 5, 13, -4}) {
    CHECK(specialize(one_plus_T_pow(in.from_int(t), in, N, zp), K) == CycElem::zeta_power(K, t));
  }
  CHECK_THROWS_AS(specialize(PowerSeries(zp, N - 1), K), PrecisionUnderflow);
}
