#include <doctest.h>

#include <numeric>
#include <random>

#include "tadic/arith/binomial.hpp"
#include "tadic/dwork/dwork.hpp"
#include "tadic/errors.hpp"
#include "tadic/sums/sums.hpp"

using namespace tadic;

namespace {

LaurentPoly poly(int n, u64 p, int a, const std::vector<std::pair<Point, FieldCtx::Elem>>& terms) {
  LaurentPoly f(n, FieldCtx::build(p, a));
  for (const auto& [u, c] : terms) f.add_term(u, c);
  return f;
}

LaurentPoly monomial_x(u64 p, i64 d, int a = 1) { return poly(1, p, a, {{{d}, 1}}); }
LaurentPoly sperber(u64 p) { return poly(2, p, 1, {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, -1}, 1}}); }

using RatSeries = std::vector<BigRational>;

RatSeries rmul(const RatSeries& a, const RatSeries& b) {
  RatSeries r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// exp(g) = sum g^k / k! for g with zero constant term.
RatSeries rexp(const RatSeries& g) {
  RatSeries r(g.size(), 0), term(g.size(), 0);
  r[0] = term[0] = 1;
  for (std::size_t k = 1; k < g.size(); ++k) {
    term = rmul(term, g);
    for (auto& c : term) c /= static_cast<int>(k);
    for (std::size_t i = 0; i < g.size(); ++i) r[i] += term[i];
  }
  return r;
}

u64 rat_mod(const BigRational& x, const ResidueRing& R) {
  using boost::multiprecision::cpp_int;
  cpp_int num = boost::multiprecision::numerator(x) % cpp_int(R.modulus());
  if (num < 0) num += R.modulus();
  const cpp_int den = boost::multiprecision::denominator(x) % cpp_int(R.modulus());
  return R.mul(static_cast<u64>(num), R.inv(static_cast<u64>(den)));
}

// Coefficients of det(1 - A s) by summing principal minors, each by
// permutation expansion.
std::vector<PowerSeries> minors_char(const DworkMatrix& Mx, int K) {
  const std::size_t d = Mx.dim();
  std::vector<PowerSeries> c(static_cast<std::size_t>(K) + 1, Mx.entries[0].zero_like());
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    std::vector<std::size_t> S;
    for (std::size_t i = 0; i < d; ++i)
      if (mask & (1u << i)) S.push_back(i);
    if (static_cast<int>(S.size()) > K) continue;
    std::vector<std::size_t> perm(S.size());
    std::iota(perm.begin(), perm.end(), 0);
    PowerSeries det = Mx.entries[0].zero_like();
    do {
      int inv = 0;
      for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
          if (perm[i] > perm[j]) ++inv;
      PowerSeries term = Mx.entries[0].one_like();
      for (std::size_t i = 0; i < perm.size(); ++i) term = term * Mx.entry(S[i], S[perm[i]]);
      det += (inv % 2 == 0) ? term : -term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    c[S.size()] += (S.size() % 2 == 0) ? det : -det;
  }
  return c;
}

}  // namespace

TEST_CASE("Artin-Hasse coefficients agree with exp of the defining series") {
  for (u64 p : {2, 3, 5}) {
    const int N = 20;
    RatSeries g(N, 0);
    for (u64 pi = 1; pi < static_cast<u64>(N); pi *= p) g[pi] = BigRational(1, static_cast<long>(pi));
    const auto oracle = rexp(g);
    const auto e = artin_hasse(p, N);
    for (int k = 0; k < N; ++k) CHECK(e[k] == oracle[k]);
  }
  const auto e2 = artin_hasse(2, 5);
  CHECK(e2[1] == 1);
  CHECK(e2[2] == 1);
  CHECK(e2[3] == BigRational(2, 3));
}

TEST_CASE("Artin-Hasse coefficients are p-integral to degree 40") {
  for (u64 p : {2, 3, 5, 7}) CHECK_NOTHROW(artin_hasse(p, 41));
}

TEST_CASE("pi(T) inverts E(pi) - 1") {
  {
    const auto pi = pi_of_t(2, 10, 12);
    const ResidueRing R(2, 10);
    CHECK(pi.at(0) == 0);
    CHECK(pi.at(1) == 1);
    CHECK(pi.at(2) == R.from_int(-1));
    CHECK(pi.at(3) == R.mul(4, R.inv(3)));
  }
  // pi(T) = log(1 + T) mod T^p for p >= 5.
  for (u64 p : {5, 7, 11}) {
    const int M = 6;
    const auto pi = pi_of_t(p, M, 40);
    const ResidueRing R(p, M);
    for (int j = 1; j < static_cast<int>(p); ++j) {
      CHECK(pi.at(j) == rat_mod(BigRational(j % 2 == 1 ? 1 : -1, j), R));
    }
  }
  // Round trip to T^40 is asserted inside.
  for (u64 p : {2, 3, 5}) CHECK_NOTHROW(pi_of_t(p, 8, 40));
}

TEST_CASE("E(pi)^{Tr x} splits into Frobenius conjugates") {
  const u64 p = 3;
  const int M = 6, N = 12;
  auto F = FieldCtx::build(p, 2);
  const int M_in = M + binomial_loss(p, N);
  UnramifiedRing big(F, M_in);
  auto Zq = make_zq(F, M);
  auto Zp = make_zp(p, M);
  const ResidueRing in(p, M_in);
  PowerSeries E1 = artin_hasse_series(p, M, N);
  E1.set(0, 0);
  const auto e = artin_hasse(p, N);
  for (FieldCtx::Elem x = 1; x < F->order(); ++x) {
    const auto lhs = one_plus_T_pow(big.trace(big.teichmuller(x)), in, N, Zp).compose(E1);
    PowerSeries rhs = PowerSeries::constant(Zq, N, 1);
    for (int i = 0; i < 2; ++i) {
      const auto y = Zq->teichmuller(frob_power(*F, x, i));
      PowerSeries factor(Zq, N);
      auto power = Zq->one();
      for (int j = 0; j < N; ++j) {
        factor.set_coeff(j, Zq->scale(power, rat_mod(e[j], Zq->base())));
        power = Zq->mul(power, y);
      }
      rhs *= factor;
    }
    CHECK(rhs.is_scalar());
    for (int j = 0; j < N; ++j) CHECK(rhs.at(j) == lhs.at(j));
  }
}

TEST_CASE("alpha_0 is 1 mod varpi and E_f lies over its degree") {
  for (const auto& f : {sperber(3), monomial_x(5, 3), poly(2, 2, 1, {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, 0}, 1}, {{0, -1}, 1}})}) {
    const auto dd = newton_polytope(f);
    const auto alpha = e_f_expansion(f, 3 * dd.D, 6, 12);
    const auto& a0 = alpha.at(Point(static_cast<std::size_t>(f.n), 0));
    CHECK(a0.at(0) == 1);
    CHECK(a0.denom() == dd.D);
  }
}

TEST_CASE("psi for f = x over F_2 has entries e_{2w-u} pi^w") {
  const auto f = monomial_x(2, 1);
  const int M = 8;
  const auto Mx = psi_a_matrix(f, 2, M, 3);
  REQUIRE(Mx.dim() == 3);
  const auto e = artin_hasse(2, 8);
  const ResidueRing R(2, M);
  for (std::size_t w = 0; w < 3; ++w) {
    for (std::size_t u = 0; u < 3; ++u) {
      const auto& x = Mx.entry(w, u);
      const int v = 2 * static_cast<int>(w) - static_cast<int>(u);
      for (int i = 0; i < x.trunc(); ++i) {
        const u64 expect = (v >= 0 && i == static_cast<int>(w)) ? rat_mod(e[v], R) : 0;
        CHECK(x.at(i) == expect);
      }
      // Row w is divisible by pi^w.
      if (!x.is_zero()) CHECK(x.first_nonzero() >= static_cast<int>(w));
    }
  }
  CHECK_THROWS_AS(psi_a_matrix(f, 1, M, 3), DomainError);
}

TEST_CASE("char_series matches sums of principal minors") {
  for (const auto& f : {monomial_x(3, 1), monomial_x(2, 3), sperber(5), sperber(2)}) {
    const auto dd = newton_polytope(f);
    const int N_varpi = static_cast<int>(dd.D) * 3;
    const auto Mx = psi_a_matrix(f, basis_for(f.field->p(), N_varpi), 6, N_varpi);
    REQUIRE(Mx.dim() <= 10);
    const int K = 3;
    const auto cs = char_series(Mx, K);
    const auto oracle = minors_char(Mx, K);
    for (int k = 0; k <= K; ++k) CHECK(cs[k] == oracle[k]);
  }
}

TEST_CASE("trace formula holds against the direct sums") {
  for (const auto& f : {monomial_x(3, 1), monomial_x(2, 3), sperber(2), sperber(3), monomial_x(2, 1, 2)}) {
    for (int k : {1, 2}) {
      const auto r = verify_trace_formula(f, k, 6, 6);
      CHECK(r.pass);
      CHECK(r.t_trunc == 6);
    }
  }
}

TEST_CASE("C-function through the operator matches the direct path") {
  for (const auto& f : {monomial_x(3, 1), monomial_x(2, 3), sperber(3), monomial_x(3, 2)}) {
    const int M = 5, N = 6, K = 3;
    const auto dw = dwork_c_function(f, K, M, N);
    const auto direct = c_function(f, K, M, N);
    for (int k = 0; k <= K; ++k) {
      for (int j = 0; j < N; ++j) CHECK(dw[k].at(j) == direct[k].at(j));
    }
  }
}

TEST_CASE("ordinariness minors for monomials x^3") {
  // p = 7 is 1 mod 3: every minor is nonzero.
  for (const auto& mv : ordinariness_determinants(monomial_x(7, 3), 6, 6)) CHECK(mv.nonzero);
  // p = 5: the block of degree 1/3 already vanishes.
  const auto bad = ordinariness_determinants(monomial_x(5, 3), 3, 6);
  CHECK(bad[0].nonzero);
  CHECK_FALSE(bad[1].nonzero);
  CHECK(bad[1].valuation == 6);
  CHECK(bad[1].size == 2);
}

TEST_CASE("minor nonvanishing forces NP_T onto HP at the vertex") {
  for (const auto& f : {monomial_x(7, 3), monomial_x(5, 3), sperber(3), sperber(2), monomial_x(2, 1)}) {
    const auto dd = newton_polytope(f);
    const auto minors = ordinariness_determinants(f, 3, 6);
    Caps caps;
    caps.M = 6;
    caps.N = 14;
    caps.deg_s = 5;
    const auto rep = np_T_report(f, caps);
    const auto W = weight_counts(dd, 3);
    i64 x = 0;
    for (i64 k = 0; k <= 3; ++k) {
      x += W[k];
      const Rational X(x);
      if (!minors[k].nonzero || X > rep.np_T.certified_upto) continue;
      CHECK(rep.np_T.at(X) == rep.hp_q.at(X));
    }
  }
}

TEST_CASE("facial criterion agrees with the whole polytope") {
  for (const auto& f : {sperber(3), sperber(2), monomial_x(5, 3), poly(2, 3, 1, {{{1, 0}, 1}, {{0, 1}, 2}, {{-1, -1}, 1}, {{1, 1}, 1}})}) {
    const auto rep = facial_criterion(f, 4, 6);
    CHECK(rep.block_triangular);
    for (std::size_t k = 0; k < rep.whole.size(); ++k) {
      if (rep.whole[k].nonzero) CHECK(rep.conjunction[k]);
    }
  }
  const auto sp = facial_criterion(sperber(3), 3, 6);
  CHECK(sp.faces.size() == 3);
  for (const auto& mv : sp.whole) CHECK(mv.nonzero);
}

TEST_CASE("entries obey ord >= (p-1) deg w + c(pw-u, u)") {
  for (const auto& f : {sperber(3), sperber(2), monomial_x(5, 3), poly(2, 3, 1, {{{1, 0}, 1}, {{0, 1}, 2}, {{-1, -1}, 1}, {{1, 1}, 1}})}) {
    const auto dd = newton_polytope(f);
    const u64 p = f.field->p();
    const int N_varpi = static_cast<int>(dd.D) * 6;
    const auto Mx = psi_a_matrix(f, basis_for(p, N_varpi), 5, N_varpi);
    for (std::size_t w = 0; w < Mx.dim(); ++w)
      for (std::size_t u = 0; u < Mx.dim(); ++u) {
        const auto& x = Mx.entry(w, u);
        if (x.is_zero()) continue;
        Point v = Mx.basis[w];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<i64>(p) * v[i] - Mx.basis[u][i];
        REQUIRE(in_cone(dd, v));
        const Rational c = cofacial_defect(dd, v, Mx.basis[u]);
        CHECK(Rational(x.first_nonzero()) >= Rational(static_cast<i64>(p - 1) * Mx.basis_deg[w]) + c * dd.D);
      }
  }
}

TEST_CASE("a larger basis leaves the certified char-series coefficients unchanged") {
  for (const auto& f : {sperber(3), monomial_x(2, 3), monomial_x(5, 1)}) {
    const auto dd = newton_polytope(f);
    const u64 p = f.field->p();
    const int N_varpi = static_cast<int>(dd.D) * 5;
    const i64 B = basis_for(p, N_varpi);
    const auto small = char_series(psi_a_matrix(f, B, 5, N_varpi), 3);
    const auto large = char_series(psi_a_matrix(f, B + 2 * dd.D, 5, N_varpi), 3);
    for (int k = 0; k <= 3; ++k) CHECK(small[k] == large[k]);
  }
}
