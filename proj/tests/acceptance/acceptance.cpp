// One line per acceptance criterion; exit status 0 only when all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "tadic/arith/binomial.hpp"
#include "tadic/dwork/dwork.hpp"
#include "tadic/errors.hpp"
#include "tadic/sums/sums.hpp"

using namespace tadic;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

LaurentPoly poly(int n, u64 p, int a, const std::vector<std::pair<Point, FieldCtx::Elem>>& terms) {
  LaurentPoly f(n, FieldCtx::build(p, a));
  for (const auto& [u, c] : terms) f.add_term(u, c);
  return f;
}

LaurentPoly monomial_x(u64 p, i64 d) { return poly(1, p, 1, {{{d}, 1}}); }
LaurentPoly sperber(u64 p) { return poly(2, p, 1, {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, -1}, 1}}); }

u64 ipow(u64 b, int e) {
  u64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Random f with full-dimensional Delta: 1..4 terms, exponents in [-2, 2].
LaurentPoly random_poly(std::mt19937_64& rng, u64 p, int a, int n) {
  auto F = FieldCtx::build(p, a);
  while (true) {
    LaurentPoly f(n, F);
    const int terms = 1 + static_cast<int>(rng() % 4);
    try {
      for (int t = 0; t < terms; ++t) {
        Point u(static_cast<std::size_t>(n));
        for (auto& c : u) c = static_cast<i64>(rng() % 5) - 2;
        f.add_term(u, F->exp(rng() % (F->order() - 1)));
      }
      newton_polytope(f);
      return f;
    } catch (const DomainError&) {
    }
  }
}

Rational agreement_prefix(const NewtonPolygon& P, const NewtonPolygon& Q) {
  const Rational R = std::min(P.certified_upto, Q.certified_upto);
  std::set<Rational> xs{Rational(0), R};
  for (const auto& v : P.vertices)
    if (v.x <= R) xs.insert(v.x);
  for (const auto& v : Q.vertices)
    if (v.x <= R) xs.insert(v.x);
  Rational last(0);
  for (const auto& x : xs) {
    if (P.at(x) != Q.at(x)) break;
    last = x;
  }
  return last;
}

std::vector<LaurentPoly> two_path_instances() {
  std::vector<LaurentPoly> out;
  for (u64 p : {2, 3, 5}) {
    out.push_back(monomial_x(p, 1));
    out.push_back(monomial_x(p, 3));
    out.push_back(sperber(p));
  }
  return out;
}

Outcome interpolation() {
  std::mt19937_64 rng(101);
  int count = 0, bad = 0;
  const int M = 3;
  for (u64 p : {2, 3, 5}) {
    for (int a : {1, 2}) {
      for (int n : {1, 2}) {
        for (int rep = 0; rep < 2; ++rep) {
          const auto f = random_poly(rng, p, a, n);
          for (int k : {1, 2}) {
            if (ipow(ipow(p, a * k) - 1, n) > 400000) continue;
            for (int m : {1, 2}) {
              const auto K = CycRing::build(p, m, M);
              const int N = K->ramification() * M;
              if (!(specialize(s_f_T(f, k, M, N), K) == s_f_psi(f, k, m, M))) ++bad;
              ++count;
            }
          }
        }
      }
    }
  }
  return {bad == 0 && count >= 20, std::to_string(count) + " (f, k, m) cases exact mod p^3, " + std::to_string(bad) + " mismatches"};
}

// Largest T-truncation <= 12 whose operator basis has at most 80 monomials.
int desk_N(const LaurentPoly& f) {
  const auto dd = newton_polytope(f);
  for (int N = 12;; --N) {
    i64 size = 0;
    for (auto w : weight_counts(dd, basis_for(f.field->p(), static_cast<int>(dd.D) * N))) size += w;
    if (size <= 80 || N == 1) return N;
  }
}

Outcome two_path_c() {
  int bad = 0, count = 0, N_min = 100;
  const int M = 5, K = 4;
  for (const auto& f : two_path_instances()) {
    const int N = desk_N(f);
    N_min = std::min(N_min, N);
    const auto dw = dwork_c_function(f, K, M, N);
    const auto direct = c_function(f, K, M, N);
    for (int k = 0; k <= K; ++k)
      for (int j = 0; j < N; ++j)
        if (dw[k].at(j) != direct[k].at(j)) ++bad;
    ++count;
  }
  return {bad == 0, std::to_string(count) + " instances, deg_s 4, mod (T^N, p^5) with N in [" + std::to_string(N_min) +
                        ", 12]: " + std::to_string(bad) + " differing coefficients"};
}

Outcome trace_formula() {
  int bad = 0, count = 0;
  for (const auto& f : two_path_instances())
    for (int k : {1, 2}) {
      if (!verify_trace_formula(f, k, 5, desk_N(f)).pass) ++bad;
      ++count;
    }
  return {bad == 0, std::to_string(count) + " (f, k) traces mod (pi^N, p^5), N as in criterion 2: " + std::to_string(bad) +
                        " failures"};
}

Outcome hodge_bound() {
  std::mt19937_64 rng(202);
  int count = 0, bad = 0;
  while (count < 60) {
    const u64 p = std::vector<u64>{2, 3, 5, 7}[rng() % 4];
    const int a = 1 + static_cast<int>(rng() % 2);
    const int n = 1 + static_cast<int>(rng() % 2);
    const auto f = random_poly(rng, p, a, n);
    Caps caps;
    caps.M = 4;
    caps.N = 16;
    caps.deg_s = 2;
    while (caps.deg_s < 4 && ipow(ipow(p, a * (caps.deg_s + 1)) - 1, n) <= 300000) ++caps.deg_s;
    try {
      const auto r = np_T_report(f, caps);
      if (!polygon_dominates(r.np_T, r.hp_q)) ++bad;
    } catch (const TheoremViolation&) {
      ++bad;
    }
    ++count;
  }
  return {bad == 0, std::to_string(count) + " random f: NP_T >= HP_q on certified prefixes, " + std::to_string(bad) + " violations"};
}

Outcome rigidity_transfer() {
  std::mt19937_64 rng(303);
  std::vector<LaurentPoly> fs{sperber(3), poly(1, 3, 1, {{{2}, 1}}), monomial_x(2, 1)};
  for (int i = 0; i < 10; ++i) fs.push_back(random_poly(rng, 2 + (i % 2), 1, 1 + (i % 2)));
  int bad = 0, transfers = 0;
  for (const auto& f : fs) {
    Caps caps;
    caps.M = 3;
    caps.N = 18;
    caps.deg_s = 3;
    try {
      const auto r = np_report(f, {1, 2}, caps);
      for (const auto& ps : r.psi)
        if (!polygon_dominates(ps.np, r.np_T)) ++bad;
      const Rational X1 = agreement_prefix(r.psi[0].np, r.np_T);
      const Rational X = std::min(X1, std::min(r.psi[1].np.certified_upto, r.np_T.certified_upto));
      if (X > Rational(0)) {
        ++transfers;
        if (agreement_prefix(r.psi[1].np, r.np_T) < X) ++bad;
      }
    } catch (const TheoremViolation&) {
      ++bad;
    }
  }
  return {bad == 0 && transfers > 0, std::to_string(fs.size()) + " f, m in {1,2}; " + std::to_string(transfers) +
                                        " certified m=1 prefixes transferred; " + std::to_string(bad) + " failures"};
}

Outcome sharp_ordinary() {
  std::string detail;
  bool ok = true;
  for (auto [p, d] : {std::pair<u64, i64>{3, 2}, {7, 3}}) {
    Caps caps;
    caps.M = 6;
    caps.N = 20;
    caps.deg_s = 4;
    const auto r = np_T_report(monomial_x(p, d), caps);
    int vertices = 0;
    for (const auto& v : r.np_T.vertices)
      if (v.x > Rational(0) && v.x <= r.np_T.certified_upto) ++vertices;
    const bool good = r.t_ordinary.value == Flag::yes && vertices >= 3;
    ok = ok && good;
    detail += "x^" + std::to_string(d) + " p=" + std::to_string(p) + ": " + std::to_string(vertices) + " vertices; ";
  }
  Caps caps;
  caps.M = 6;
  caps.N = 16;
  caps.deg_s = 4;
  const auto s = np_report(sperber(3), {1}, caps);
  const bool sp = s.psi[0].ordinary.value == Flag::yes;
  ok = ok && sp;
  detail += std::string("Sperber p=3 m=1 ordinary ") + (sp ? "certified" : "not certified");
  return {ok, detail};
}

Outcome l_c_identities() {
  int bad = 0;
  const int M = 5, N = 6, K = 4;
  for (const auto& f : two_path_instances()) {
    const int a = f.field->degree();
    const auto L = l_function(f, K, M, N);
    const auto C = c_function(f, K, M, N);
    const auto C2 = convert_l_c(L, f.n, a, M, Direction::l_to_c);
    if (!(C2 == C)) ++bad;
    if (!(convert_l_c(C2, f.n, a, M, Direction::c_to_l) == L)) ++bad;
    if (f.n == 1 && !(C * C.scale_s(a).inverse() == L)) ++bad;
  }
  return {bad == 0, "L->C->L and L(s) = C(s)/C(qs) on 9 instances, " + std::to_string(bad) + " failures"};
}

// Newton polygon in q-adic units of a pi_psi-adic series (m = 1).
NewtonPolygon q_adic_np(const CycSSeries& F, const std::optional<TailBound>& tail, i64 scale) {
  auto vals = cyc_vals(F);
  for (auto& v : vals) v.value /= scale;
  return newton_polygon_of(vals, tail);
}

Outcome slope_series() {
  std::string detail;
  bool ok = true;
  for (const auto& f : {poly(1, 3, 1, {{{2}, 1}}), sperber(3)}) {
    const auto dd = newton_polytope(f);
    const u64 p = f.field->p();
    const int a = f.field->degree();
    const i64 scale = static_cast<i64>(p - 1) * a;
    const int M = 8;
    const int degL = static_cast<int>(normalized_volume(dd));
    auto L = l_function_psi(f, degL, 1, M);
    if (f.n % 2 == 0) L = L.inverse();
    const auto npL = q_adic_np(L, std::nullopt, scale);
    const int degC = 5;
    auto tail = hodge_tail(dd, p, a, degC + 1);
    tail.floor = polygon_rescale(tail.floor, Rational(1, scale));
    tail.slope_beyond /= scale;
    const auto npC = q_adic_np(c_function_psi(f, degC, 1, M), tail, scale);
    const bool complete = npL.certified_upto == npL.width() && npL.width() == Rational(degL);
    const auto prod = slope_series_mul(SlopeSeries::from_polygon(npL, complete), SlopeSeries::geometric_power(f.n, degC));
    const auto P = prod.to_polygon();
    const Rational R = std::min(P.certified_upto, npC.certified_upto);
    const bool good = complete && R >= Rational(2) && polygon_agrees(npC, P);
    ok = ok && good;
    detail += "n=" + std::to_string(f.n) + ": agree on [0," + to_string(R) + "]; ";
  }
  return {ok, detail};
}

Outcome congruence() {
  struct Case {
    LaurentPoly f;
    int m, M, N;
  };
  std::vector<Case> cases{{monomial_x(3, 1), 1, 4, 8},  {monomial_x(3, 1), 2, 3, 24}, {monomial_x(5, 1), 1, 3, 12},
                          {monomial_x(5, 1), 2, 3, 72}, {sperber(3), 1, 4, 8}};
  int bad = 0, rows = 0;
  for (const auto& c : cases) {
    const u64 p = c.f.field->p();
    const i64 bound = normalized_volume(newton_polytope(c.f)) * static_cast<i64>(ipow(p, c.f.n * (c.m - 1)));
    const auto rep = congruence_check(c.f, c.m, static_cast<int>(bound) + 1, static_cast<int>(bound) + 2, c.M, c.N, false);
    for (const auto& row : rep.rows) {
      ++rows;
      if (!row.checked || !row.pass) ++bad;
    }
  }
  return {bad == 0 && rows == 10, std::to_string(rows) + " remainders at k = bound+1, bound+2; " + std::to_string(bad) + " nonzero"};
}

Outcome facial() {
  std::string detail;
  bool ok = true;
  for (const auto& f : {sperber(3), poly(2, 3, 1, {{{1, 0}, 1}, {{0, 1}, 1}})}) {
    const auto rep = facial_criterion(f, 4, 6);
    bool same = rep.block_triangular;
    int nonzero = 0;
    for (std::size_t k = 0; k < rep.whole.size(); ++k) {
      same = same && rep.whole[k].nonzero == rep.conjunction[k];
      if (rep.whole[k].nonzero) ++nonzero;
    }
    ok = ok && same;
    detail += to_string(f) + ": " + std::to_string(rep.faces.size()) + " facets, " + std::to_string(nonzero) + "/" +
              std::to_string(rep.whole.size()) + " minors nonzero, " + (same ? "agree" : "DISAGREE") + "; ";
  }
  return {ok, detail};
}

Outcome infrastructure() {
  int bad = 0;
  for (auto [p, a] : {std::pair<u64, int>{2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 2}, {3, 3}, {5, 2}, {7, 2}}) {
    auto F = FieldCtx::build(p, a);
    UnramifiedRing Z(F, 6);
    std::vector<UnramifiedRing::Elem> lift(F->order());
    for (FieldCtx::Elem x = 1; x < F->order(); ++x) lift[x] = Z.teichmuller(x);
    for (FieldCtx::Elem x = 1; x < F->order(); ++x)
      for (FieldCtx::Elem y = 1; y < F->order(); ++y)
        if (Z.mul(lift[x], lift[y]) != lift[F->mul(x, y)]) ++bad;
  }
  std::mt19937_64 rng(404);
  for (int i = 0; i < 100; ++i) {
    const u64 p = std::vector<u64>{2, 3, 5}[i % 3];
    const int N = 12;
    const ResidueRing in(p, 20);
    auto out = make_zp(p, 20 - binomial_loss(p, N));
    const u64 t1 = rng() % in.modulus(), t2 = rng() % in.modulus();
    if (!(one_plus_T_pow(in.add(t1, t2), in, N, out) == one_plus_T_pow(t1, in, N, out) * one_plus_T_pow(t2, in, N, out))) ++bad;
  }
  for (u64 p : {2, 3, 5, 7}) {
    try {
      artin_hasse(p, 41);
      pi_of_t(p, 8, 41);
    } catch (const Error&) {
      ++bad;
    }
  }
  return {bad == 0, "Teichmuller (q <= 64), 100 homomorphism pairs, Artin-Hasse and pi(T) to degree 40: " +
                        std::to_string(bad) + " failures"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> fn;
  };
  const std::vector<Criterion> criteria{
      {1, "interpolation", 60, interpolation},
      {2, "two-path C-function", 300, two_path_c},
      {3, "Dwork trace formula", 120, trace_formula},
      {4, "Hodge bound", 600, hodge_bound},
      {5, "rigidity bound and transfer", 600, rigidity_transfer},
      {6, "sharp ordinariness", 300, sharp_ordinary},
      {7, "L/C identities", 60, l_c_identities},
      {8, "slope series of L and C", 120, slope_series},
      {9, "congruence", 300, congruence},
      {10, "facial decomposition", 300, facial},
      {11, "infrastructure invariants", 60, infrastructure},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.budget_s)) + "s budget)";
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
