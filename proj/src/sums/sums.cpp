#include "tadic/sums/sums.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <random>
#include <set>
#include <unordered_map>

#include "tadic/arith/binomial.hpp"
#include "tadic/arith/unramified.hpp"
#include "tadic/errors.hpp"

namespace tadic {
namespace {

struct TorusTable {
  FieldPtr big;
  u64 order = 0;  // q^k - 1
  std::vector<u64> trace_of_power;  // trace(Teich(g)^e) mod p^{M_in}
  std::vector<std::pair<Point, u64>> terms;  // (u mod order, log of embedded coefficient)
};

TorusTable torus_table(const LaurentPoly& f, int k, int M_in) {
  if (k < 1) throw DomainError("extension degree k must be positive");
  const auto& F = *f.field;
  if (M_in > max_precision(F.p())) {
    throw DomainError("p-adic working precision " + std::to_string(M_in) + " exceeds 62-bit residues");
  }
  TorusTable t;
  t.big = FieldCtx::build(F.p(), F.degree() * k);
  t.order = t.big->order() - 1;
  double points = 1;
  for (int i = 0; i < f.n; ++i) points *= static_cast<double>(t.order);
  if (points > static_cast<double>(kMaxTorusPoints)) {
    throw DomainError("torus of " + std::to_string(static_cast<u64>(points)) + " points is beyond desk scale");
  }
  const FieldEmbedding emb(f.field, t.big);
  UnramifiedRing Z(t.big, M_in);
  const auto g = Z.teichmuller(t.big->generator());
  auto cur = Z.one();
  t.trace_of_power.resize(t.order);
  for (u64 e = 0; e < t.order; ++e) {
    t.trace_of_power[e] = Z.trace(cur);
    cur = Z.mul(cur, g);
  }
  const i64 ord = static_cast<i64>(t.order);
  for (const auto& [u, c] : f.terms) {
    Point r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) r[i] = ((u[i] % ord) + ord) % ord;
    t.terms.emplace_back(r, t.big->log(emb(c)));
  }
  return t;
}

// Visits every torus point by its log vector; fn(logs, trace).
template <class Fn>
void for_each_torus_point(const TorusTable& t, int n, const ResidueRing& R, Fn&& fn) {
  std::vector<u64> logs(static_cast<std::size_t>(n), 0);
  const u64 ord = t.order;
  while (true) {
    u64 tr = 0;
    for (const auto& [u, lc] : t.terms) {
      u64 e = lc;
      for (int i = 0; i < n; ++i) e = (e + static_cast<u64>(u[i]) * logs[i]) % ord;
      tr = R.add(tr, t.trace_of_power[e]);
    }
    fn(logs, tr);
    int i = n - 1;
    while (i >= 0 && logs[i] == ord - 1) {
      logs[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++logs[i];
  }
}

std::map<u64, u64> sorted(const std::unordered_map<u64, u64>& h) { return {h.begin(), h.end()}; }

int exp_loss(u64 p, int deg_s) { return vp_factorial(static_cast<u64>(deg_s), p); }

void check_caps(int deg_s, int M, int N) {
  if (deg_s < 0 || M < 1 || N < 1) throw DomainError("need deg_s >= 0, M >= 1, N >= 1");
}

}  // namespace

std::map<u64, u64> trace_histogram(const LaurentPoly& f, int k, int M_in) {
  const auto t = torus_table(f, k, M_in);
  const ResidueRing R(f.field->p(), M_in);
  std::unordered_map<u64, u64> h;
  for_each_torus_point(t, f.n, R, [&](const std::vector<u64>&, u64 tr) { ++h[tr]; });
  return sorted(h);
}

PowerSeries s_f_T(const LaurentPoly& f, int k, int M, int N) {
  check_caps(0, M, N);
  const u64 p = f.field->p();
  const int M_in = M + binomial_loss(p, N);
  const auto hist = trace_histogram(f, k, M_in);
  const ResidueRing in(p, M_in);
  auto out = make_zp(p, M);
  const BinomialSeries B(in, N, out);
  PowerSeries acc(out, N);
  const u64 mod = out->base().modulus();
  for (const auto& [tr, count] : hist) B.accumulate(tr, count % mod, acc);
  return acc;
}

CycElem s_f_psi(const LaurentPoly& f, int k, int m, int M) {
  if (m < 1) throw DomainError("character level m must be at least 1");
  const u64 p = f.field->p();
  const auto ring = CycRing::build(p, m, M);
  const auto hist = trace_histogram(f, k, m);
  std::vector<CycElem> zeta;
  zeta.push_back(CycElem::from_int(ring, 1));
  const auto z = CycElem::zeta_power(ring, 1);
  const u64 pm = checked_pow(p, m);
  for (u64 t = 1; t < pm; ++t) zeta.push_back(zeta.back() * z);
  CycElem acc(ring);
  const auto& R = ring->base();
  for (const auto& [tr, count] : hist) {
    CycElem term = zeta[tr % pm];
    for (int i = 0; i < ring->ramification(); ++i) term.set(i, R.mul(term.coeff(i), R.reduce(count)));
    acc += term;
  }
  return acc;
}

namespace {

// sigma_k = factor_k * S_k at precision W, then exp, then reduce to M.
template <class C, class Sum, class Factor, class Reduce>
SSeries<C> exp_of_sums(int deg_s, Sum&& sum, Factor&& factor, const C& proto, Reduce&& reduce) {
  std::vector<C> sigma{proto.zero_like()};
  for (int k = 1; k <= deg_s; ++k) sigma.push_back(factor(k, sum(k)));
  return SSeries<C>::exp_of_power_sums(sigma, proto).map(reduce);
}

// -(q^k - 1)^{-n} mod p^W.
u64 c_factor(const ResidueRing& R, u64 q, int k, int n) {
  const u64 qk1 = R.sub(R.pow(R.reduce(q), static_cast<u64>(k)), 1);
  return R.neg(R.inv(R.pow(qk1, static_cast<u64>(n))));
}

}  // namespace

TSSeries l_function(const LaurentPoly& f, int deg_s, int M, int N) {
  check_caps(deg_s, M, N);
  const u64 p = f.field->p();
  const int W = M + exp_loss(p, deg_s);
  auto work = make_zp(p, W);
  auto out = make_zp(p, M);
  return exp_of_sums<PowerSeries>(
      deg_s, [&](int k) { return s_f_T(f, k, W, N); }, [](int, PowerSeries s) { return s; },
      PowerSeries::constant(work, N, 1), [&](const PowerSeries& c) { return c.reduced(out); });
}

TSSeries c_function(const LaurentPoly& f, int deg_s, int M, int N) {
  check_caps(deg_s, M, N);
  const u64 p = f.field->p();
  const int W = M + exp_loss(p, deg_s);
  auto work = make_zp(p, W);
  auto out = make_zp(p, M);
  const u64 q = f.field->order();
  return exp_of_sums<PowerSeries>(
      deg_s, [&](int k) { return s_f_T(f, k, W, N); },
      [&](int k, const PowerSeries& s) { return s.scaled(c_factor(work->base(), q, k, f.n)); },
      PowerSeries::constant(work, N, 1), [&](const PowerSeries& c) { return c.reduced(out); });
}

CycSSeries l_function_psi(const LaurentPoly& f, int deg_s, int m, int M) {
  check_caps(deg_s, M, 1);
  const u64 p = f.field->p();
  const int W = M + exp_loss(p, deg_s);
  const auto work = CycRing::build(p, m, W);
  const auto out = CycRing::build(p, m, M);
  return exp_of_sums<CycElem>(
      deg_s, [&](int k) { return s_f_psi(f, k, m, W); }, [](int, CycElem s) { return s; },
      CycElem::from_int(work, 1), [&](const CycElem& c) { return c.reduced(out); });
}

CycSSeries c_function_psi(const LaurentPoly& f, int deg_s, int m, int M) {
  check_caps(deg_s, M, 1);
  const u64 p = f.field->p();
  const int W = M + exp_loss(p, deg_s);
  const auto work = CycRing::build(p, m, W);
  const auto out = CycRing::build(p, m, M);
  const u64 q = f.field->order();
  return exp_of_sums<CycElem>(
      deg_s, [&](int k) { return s_f_psi(f, k, m, W); },
      [&](int k, const CycElem& s) {
        return s * CycElem::from_int(work, static_cast<i64>(c_factor(work->base(), q, k, f.n)));
      },
      CycElem::from_int(work, 1), [&](const CycElem& c) { return c.reduced(out); });
}

TSSeries l_function_euler(const LaurentPoly& f, int deg_s, int M, int N) {
  check_caps(deg_s, M, N);
  const u64 p = f.field->p();
  const u64 q = f.field->order();
  const int M_in = M + binomial_loss(p, N);
  const ResidueRing in(p, M_in);
  auto out = make_zp(p, M);
  const BinomialSeries B(in, N, out);
  const auto& R = out->base();
  const auto one = PowerSeries::constant(out, N, 1);
  TSSeries L = TSSeries::one(one, deg_s);
  for (int d = 1; d <= deg_s; ++d) {
    const auto t = torus_table(f, d, M_in);
    // Frobenius acts on log vectors by multiplication by q.
    std::vector<u64> qpow{1};
    for (int j = 1; j <= d; ++j) qpow.push_back(static_cast<u64>(static_cast<u128>(qpow.back()) * q % t.order));
    std::unordered_map<u64, u64> h;
    for_each_torus_point(t, f.n, in, [&](const std::vector<u64>& logs, u64 tr) {
      int orbit = d;
      for (int j = 1; j < d; ++j) {
        if (d % j != 0) continue;
        bool fixed = true;
        for (u64 l : logs)
          if (static_cast<u64>(static_cast<u128>(l) * qpow[j] % t.order) != l) fixed = false;
        if (fixed) {
          orbit = j;
          break;
        }
      }
      if (orbit == d) ++h[tr];
    });
    for (const auto& [tr, points] : sorted(h)) {
      if (points % static_cast<u64>(d) != 0) throw TheoremViolation("closed points do not split into orbits");
      const u64 c = points / static_cast<u64>(d);
      // (1 - (1+T)^tr s^d)^{-c} = sum_j binom(c+j-1, j) (1+T)^{j tr} s^{dj}.
      std::vector<PowerSeries> g(static_cast<std::size_t>(deg_s) + 1, one.zero_like());
      boost::multiprecision::cpp_int binom = 1;
      for (int j = 0; d * j <= deg_s; ++j) {
        if (j > 0) binom = binom * (c + static_cast<u64>(j) - 1) / static_cast<u64>(j);
        const u64 b = static_cast<u64>(binom % R.modulus());
        const u64 tj = static_cast<u64>(static_cast<u128>(tr) * static_cast<u64>(j) % in.modulus());
        g[static_cast<std::size_t>(d * j)] = B(tj).scaled(b);
      }
      L = L * TSSeries(std::move(g));
    }
  }
  return L;
}

CycSSeries specialize_series(const TSSeries& F, const CycPtr& ring) {
  return F.map([&](const PowerSeries& c) { return specialize(c, ring); });
}

std::vector<Valuation> t_adic_vals(const TSSeries& F) {
  std::vector<Valuation> v;
  for (const auto& c : F.coeffs()) v.push_back(c.ord());
  return v;
}

std::vector<Valuation> cyc_vals(const CycSSeries& F) {
  std::vector<Valuation> v;
  for (const auto& c : F.coeffs()) v.push_back(cyc_ord(c));
  return v;
}

TailBound hodge_tail(const DegreeData& dd, u64 p, int a, i64 width) {
  i64 K = 0;
  while (true) {
    const auto W = weight_counts(dd, K);
    i64 total = 0;
    for (i64 w : W) total += w;
    if (total >= width) break;
    ++K;
  }
  TailBound t;
  t.floor = hodge_polygon(dd, p, a, K);
  t.slope_beyond = Rational(static_cast<i64>(a) * static_cast<i64>(p - 1) * (K + 1), dd.D);
  return t;
}

std::string to_string(Flag f) {
  switch (f) {
    case Flag::yes: return "true";
    case Flag::no: return "false";
    case Flag::uncertified: return "uncertified";
  }
  return "?";
}

namespace {

// Largest x <= min(certified ranges) with P == Q on [0, x].
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

void assert_dominates(const NewtonPolygon& upper, const NewtonPolygon& lower, const std::string& what) {
  if (!polygon_dominates(upper, lower)) throw TheoremViolation(what);
}

FlagOn t_ordinary_flag(const NPReport& r) {
  const Rational X = agreement_prefix(r.np_T, r.hp_q);
  if (r.np_T.certified_upto > Rational(0) && X == r.np_T.certified_upto) return {Flag::yes, X};
  return {Flag::uncertified, X};
}

NPReport base_report(const LaurentPoly& f, const Caps& caps, DegreeData& dd, TailBound& tail) {
  dd = newton_polytope(f);
  const u64 p = f.field->p();
  const int a = f.field->degree();
  tail = hodge_tail(dd, p, a, caps.deg_s + 1);
  NPReport r;
  r.hp_q = tail.floor;
  r.hp_absolute = polygon_rescale(r.hp_q, Rational(1, static_cast<i64>(a) * static_cast<i64>(p - 1)));
  const auto C = c_function(f, caps.deg_s, caps.M, caps.N);
  r.np_T = newton_polygon_of(t_adic_vals(C), tail);
  assert_dominates(r.np_T, r.hp_q, "NP_T lies below HP_q");
  r.t_ordinary = t_ordinary_flag(r);
  return r;
}

}  // namespace

NPReport np_T_report(const LaurentPoly& f, const Caps& caps) {
  DegreeData dd;
  TailBound tail;
  return base_report(f, caps, dd, tail);
}

NPReport np_report(const LaurentPoly& f, const std::vector<int>& m_list, const Caps& caps) {
  DegreeData dd;
  TailBound tail;
  NPReport r = base_report(f, caps, dd, tail);
  for (int m : m_list) {
    PsiReport ps;
    ps.m = m;
    const auto C = c_function_psi(f, caps.deg_s, m, caps.M);
    ps.np = newton_polygon_of(cyc_vals(C), tail);
    assert_dominates(ps.np, r.np_T, "NP_pi_psi lies below NP_T at m = " + std::to_string(m));
    assert_dominates(ps.np, r.hp_q, "NP_pi_psi lies below HP_q at m = " + std::to_string(m));
    const Rational cert = ps.np.certified_upto;
    const Rational X = agreement_prefix(ps.np, r.hp_q);
    if (cert == Rational(0)) ps.ordinary = {Flag::uncertified, cert};
    else if (X == cert) ps.ordinary = {Flag::yes, cert};
    else ps.ordinary = {Flag::no, cert};
    if (ps.ordinary.value == Flag::yes) {
      ps.rigid = {Flag::yes, cert};
    } else {
      const Rational Y = agreement_prefix(ps.np, r.np_T);
      const Rational common = std::min(cert, r.np_T.certified_upto);
      if (Y < common) ps.rigid = {Flag::no, common};
      else ps.rigid = {Flag::uncertified, Y};
    }
    r.psi.push_back(ps);
  }
  return r;
}

std::vector<u64> congruence_modulus(u64 p, int m, const ResidueRing& R) {
  const u64 pm = checked_pow(p, m);
  if (pm == 0 || pm > 100000) throw DomainError("p^m too large for the congruence modulus");
  // binom(p^m, i + 1), i = 0 .. p^m - 1, by exact cpp_int recurrence.
  std::vector<u64> out;
  boost::multiprecision::cpp_int b = 1;
  for (u64 i = 1; i <= pm; ++i) {
    b = b * (pm - i + 1) / i;
    out.push_back(static_cast<u64>(b % R.modulus()));
  }
  return out;
}

CongruenceReport congruence_check(const LaurentPoly& f, int m, int k_lo, int k_hi, int M, int N,
                                  bool override_nondegenerate, int r_max) {
  if (m < 1 || k_lo < 1 || k_hi < k_lo) throw DomainError("need m >= 1 and 1 <= k_lo <= k_hi");
  const u64 p = f.field->p();
  CongruenceReport rep;
  rep.m = m;
  rep.M = M;
  rep.N = N;
  const auto dd = newton_polytope(f);
  const u64 pm = checked_pow(p, m);
  i64 bound = normalized_volume(dd);
  for (int i = 0; i < f.n * (m - 1); ++i) bound *= static_cast<i64>(p);
  rep.bound = bound;
  const auto nd = is_nondegenerate(f, r_max);
  if (nd.verdict == Nondegeneracy::Verdict::nondegenerate) {
    rep.attestation = "nondegenerate: " + nd.note;
  } else if (override_nondegenerate) {
    rep.attestation = "override (verdict " + to_string(nd.verdict) + ": " + nd.note + ")";
  } else {
    throw DomainError("non-degeneracy is " + to_string(nd.verdict) + " (" + nd.note +
                      "); pass the override to run the congruence check");
  }
  const int d = static_cast<int>(pm) - 1;
  if (static_cast<i64>(N) < static_cast<i64>(d) * M) {
    throw PrecisionUnderflow("T-truncation " + std::to_string(N) + " is below (p^m - 1) M = " +
                             std::to_string(static_cast<i64>(d) * M) + " needed for the remainder mod p^M");
  }
  auto L = l_function(f, k_hi, M, N);
  if (f.n % 2 == 0) L = L.inverse();
  const auto& R = L[0].ring()->base();
  const auto phi = congruence_modulus(p, m, R);
  for (int k = k_lo; k <= k_hi; ++k) {
    CongruenceRow row;
    row.k = k;
    row.checked = k > bound;
    if (row.checked) {
      std::vector<u64> r(static_cast<std::size_t>(N));
      for (int j = 0; j < N; ++j) r[j] = L[k].at(j);
      for (int j = N - 1; j >= d; --j) {
        const u64 c = r[j];
        if (c == 0) continue;
        for (int i = 0; i < d; ++i) r[j - d + i] = R.sub(r[j - d + i], R.mul(c, phi[i]));
        r[j] = 0;
      }
      r.resize(static_cast<std::size_t>(std::min(d, N)));
      row.pass = std::all_of(r.begin(), r.end(), [](u64 x) { return x == 0; });
      row.remainder = r;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

std::string polygon_key(const NewtonPolygon& P) {
  std::string s = "[";
  for (std::size_t i = 0; i < P.vertices.size(); ++i) {
    if (i) s += ",";
    s += "(" + to_string(P.vertices[i].x) + "," + to_string(P.vertices[i].y) + ")";
  }
  return s + "] certified to " + to_string(P.certified_upto);
}

SurveyReport survey_family(int n, const FieldPtr& field, const std::vector<Point>& support, int samples, u64 seed,
                           const Caps& caps) {
  if (samples < 0) throw DomainError("sample count must be nonnegative");
  SurveyReport rep;
  std::mt19937_64 rng(seed);
  const u64 units = field->order() - 1;
  for (int s = 0; s < samples; ++s) {
    LaurentPoly f(n, field);
    for (const auto& u : support) f.add_term(u, field->exp(rng() % units));
    const auto r = np_T_report(f, caps);
    SurveySample smp{to_string(f), r.np_T, r.t_ordinary.value};
    ++rep.histogram[polygon_key(r.np_T)];
    if (smp.t_ordinary == Flag::yes) ++rep.t_ordinary;
    rep.samples.push_back(std::move(smp));
  }
  return rep;
}

}  // namespace tadic
