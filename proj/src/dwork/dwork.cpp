#include "tadic/dwork/dwork.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "tadic/errors.hpp"

namespace tadic {

using boost::multiprecision::cpp_int;

std::vector<BigRational> artin_hasse(u64 p, int N) {
  if (!is_prime(p)) throw DomainError("Artin-Hasse needs a prime");
  std::vector<BigRational> e(static_cast<std::size_t>(std::max(N, 0)));
  if (N <= 0) return e;
  e[0] = 1;
  for (int k = 1; k < N; ++k) {
    BigRational acc = 0;
    for (u64 pi = 1; pi <= static_cast<u64>(k); pi *= p) acc += e[k - pi];
    e[k] = acc / k;
    if (boost::multiprecision::denominator(e[k]) % p == 0) {
      throw IntegralityViolation("Artin-Hasse coefficient " + std::to_string(k) + " is not p-integral");
    }
  }
  return e;
}

namespace {

u64 rational_mod(const BigRational& x, const ResidueRing& R) {
  const cpp_int mod = R.modulus();
  cpp_int num = boost::multiprecision::numerator(x) % mod;
  if (num < 0) num += mod;
  const cpp_int den = boost::multiprecision::denominator(x) % mod;
  return R.mul(static_cast<u64>(num), R.inv(static_cast<u64>(den)));
}

Point add_scaled(const Point& a, const Point& b, i64 s) {
  Point r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += s * b[i];
  return r;
}

}  // namespace

PowerSeries artin_hasse_series(u64 p, int M, int N) {
  auto Z = make_zp(p, M);
  PowerSeries E(Z, N);
  const auto e = artin_hasse(p, N);
  for (int k = 0; k < N; ++k) E.set(k, rational_mod(e[k], Z->base()));
  return E;
}

PowerSeries pi_of_t(u64 p, int M, int N) {
  auto Z = make_zp(p, M);
  PowerSeries E1 = artin_hasse_series(p, M, N);
  E1.set(0, 0);
  const PowerSeries T = PowerSeries::monomial(Z, N, 1);
  // pi = T - (E(pi) - 1 - pi); each pass fixes one more coefficient.
  PowerSeries pi = T;
  for (int it = 1; it < N; ++it) pi = T - (E1.compose(pi) - pi);
  if (!(E1.compose(pi) == T)) throw Error("pi(T) does not invert E(pi) - 1 (internal error)");
  return pi;
}

std::map<Point, PowerSeries> e_f_raw(const LaurentPoly& f, const ZqPtr& ring, int N_pi, int twist) {
  if (N_pi < 1) throw DomainError("E_f expansion needs a positive pi-truncation");
  const auto e = artin_hasse(ring->p(), N_pi);
  std::vector<UnramifiedRing::Elem> ez(e.size(), ring->zero());
  for (int j = 0; j < N_pi; ++j) ez[j][0] = rational_mod(e[j], ring->base());

  std::map<Point, PowerSeries> acc;
  acc.emplace(Point(static_cast<std::size_t>(f.n), 0), PowerSeries::constant(ring, N_pi, 1));
  for (const auto& [u, c] : f.terms) {
    const auto lift = ring->teichmuller(frob_power(*f.field, c, twist));
    std::vector<UnramifiedRing::Elem> factor;
    auto power = ring->one();
    for (int j = 0; j < N_pi; ++j) {
      factor.push_back(ring->mul(ez[j], power));
      power = ring->mul(power, lift);
    }
    std::map<Point, PowerSeries> next;
    for (const auto& [v, s] : acc) {
      const int lead = s.first_nonzero();
      if (lead < 0) continue;
      for (int j = 0; j + lead < N_pi; ++j) {
        if (ring->is_zero(factor[j])) continue;
        const Point key = add_scaled(v, u, j);
        auto term = s.shifted(j).scaled(factor[j]);
        auto it = next.find(key);
        if (it == next.end()) next.emplace(key, std::move(term));
        else it->second += term;
      }
    }
    acc = std::move(next);
  }
  return acc;
}

std::map<Point, PowerSeries> e_f_expansion(const LaurentPoly& f, i64 B_num, int M, int N_varpi) {
  const auto dd = newton_polytope(f);
  const i64 D = dd.D;
  auto ring = make_zq(f.field, M);
  const int N_pi = static_cast<int>(ceil_div(N_varpi + B_num, D));
  const auto raw = e_f_raw(f, ring, std::max(N_pi, 1));
  std::map<Point, PowerSeries> out;
  for_each_lattice_point(dd, B_num, [&](const Point& v, i64 dv) {
    PowerSeries alpha(ring, N_varpi, static_cast<int>(D));
    auto it = raw.find(v);
    if (it != raw.end()) {
      for (int m = 0; m < it->second.trunc(); ++m) {
        if (it->second.coeff_is_zero(m)) continue;
        const i64 idx = D * m - dv;
        if (idx < 0) throw TheoremViolation("E_f coefficient below the degree bound");
        if (idx < N_varpi) alpha.set_coeff(static_cast<int>(idx), it->second.coeff(m));
      }
    }
    out.emplace(v, std::move(alpha));
  });
  return out;
}

i64 basis_for(u64 p, int N_varpi) {
  return std::max<i64>(0, ceil_div(N_varpi, static_cast<i64>(p - 1)) - 1);
}

namespace {

struct Basis {
  std::vector<Point> pts;
  std::vector<i64> deg;
};

// Lattice points of the cone with D deg <= K, sorted by (degree, lex).
Basis make_basis(const DegreeData& dd, i64 K) {
  std::vector<std::pair<i64, Point>> all;
  for_each_lattice_point(dd, K, [&](const Point& u, i64 du) { all.emplace_back(du, u); });
  std::stable_sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Basis b;
  for (auto& [d, u] : all) {
    b.pts.push_back(u);
    b.deg.push_back(d);
  }
  return b;
}

}  // namespace

DworkMatrix psi_a_matrix(const LaurentPoly& f, i64 B_num, int M, int N_varpi) {
  const auto dd = newton_polytope(f);
  const u64 p = f.field->p();
  const int a = f.field->degree();
  if (a > 2) throw DomainError("psi^a matrices are built for a in {1, 2}");
  if (B_num < 0 || N_varpi < 1) throw DomainError("basis degree and precision must be positive");
  if (static_cast<i64>(p - 1) * (B_num + 1) < N_varpi) {
    throw DomainError("basis too small: need (p-1)(B+1) >= N_varpi, use B >= " +
                      std::to_string(basis_for(p, N_varpi)));
  }
  DworkMatrix Mx;
  Mx.p = p;
  Mx.a = a;
  Mx.D = dd.D;
  Mx.B_num = B_num;
  Mx.N_varpi = N_varpi;
  Mx.M = M;
  Mx.certified = N_varpi;
  auto basis = make_basis(dd, B_num);
  Mx.basis = std::move(basis.pts);
  Mx.basis_deg = std::move(basis.deg);

  auto ring = make_zq(f.field, M);
  const i64 D = dd.D;
  const int N_beta = static_cast<int>(ceil_div(N_varpi + B_num, D));
  auto g = e_f_raw(f, ring, N_beta);
  if (a == 2) {
    const auto h = e_f_raw(f, ring, N_beta, 1);
    std::map<Point, PowerSeries> prod;
    for (const auto& [v1, s1] : g)
      for (const auto& [v2, s2] : h) {
        const int l1 = s1.first_nonzero(), l2 = s2.first_nonzero();
        if (l1 < 0 || l2 < 0 || l1 + l2 >= N_beta) continue;
        const Point key = add_scaled(v1, v2, static_cast<i64>(p));
        auto term = s1 * s2;
        auto it = prod.find(key);
        if (it == prod.end()) prod.emplace(key, std::move(term));
        else it->second += term;
      }
    g = std::move(prod);
  }

  const i64 q = static_cast<i64>(checked_pow(p, a));
  const std::size_t d = Mx.basis.size();
  Mx.entries.assign(d * d, PowerSeries(ring, N_varpi, static_cast<int>(D)));
  for (std::size_t w = 0; w < d; ++w) {
    for (std::size_t u = 0; u < d; ++u) {
      Point z = Mx.basis[w];
      for (std::size_t i = 0; i < z.size(); ++i) z[i] = q * z[i] - Mx.basis[u][i];
      auto it = g.find(z);
      if (it == g.end()) continue;
      const i64 shift = Mx.basis_deg[u] - Mx.basis_deg[w];
      auto& entry = Mx.entries[w * d + u];
      for (int m = 0; m < it->second.trunc(); ++m) {
        if (it->second.coeff_is_zero(m)) continue;
        const i64 idx = D * m + shift;
        if (idx < static_cast<i64>(p - 1) * Mx.basis_deg[w]) {
          throw TheoremViolation("psi^a entry below the (p-1) deg w estimate");
        }
        if (idx < N_varpi) entry.set_coeff(static_cast<int>(idx), it->second.coeff(m));
      }
    }
  }
  return Mx;
}

SSeries<PowerSeries> char_series(const DworkMatrix& Mx, int deg_s) {
  if (deg_s < 0) throw DomainError("s-degree must be nonnegative");
  const std::size_t d = Mx.dim();
  const PowerSeries zero = Mx.entries.empty() ? PowerSeries() : Mx.entries[0].zero_like();
  if (d == 0) throw DomainError("empty basis");
  const auto K = static_cast<std::size_t>(deg_s);
  // Coefficients of det(1 - A s) for the trailing block r..d-1 (Berkowitz).
  std::vector<PowerSeries> c(K + 1, zero);
  c[0] = zero.one_like();
  for (std::size_t r = d; r-- > 0;) {
    std::vector<PowerSeries> t(K + 1, zero);
    t[0] = zero.one_like();
    if (K >= 1) t[1] = -Mx.entry(r, r);
    std::vector<PowerSeries> v;
    for (std::size_t i = r + 1; i < d; ++i) v.push_back(Mx.entry(i, r));
    for (std::size_t i = 2; i <= K; ++i) {
      PowerSeries acc = zero;
      for (std::size_t j = r + 1; j < d; ++j) acc += Mx.entry(r, j) * v[j - r - 1];
      t[i] = -acc;
      if (i == K) break;
      std::vector<PowerSeries> nv(v.size(), zero);
      for (std::size_t a = r + 1; a < d; ++a)
        for (std::size_t b = r + 1; b < d; ++b) nv[a - r - 1] += Mx.entry(a, b) * v[b - r - 1];
      v = std::move(nv);
    }
    std::vector<PowerSeries> nc(K + 1, zero);
    for (std::size_t k = 0; k <= K; ++k)
      for (std::size_t i = 0; i <= k; ++i) nc[k] += t[i] * c[k - i];
    c = std::move(nc);
  }
  return SSeries<PowerSeries>(std::move(c));
}

PowerSeries trace_power(const DworkMatrix& Mx, int k) {
  if (k < 1) throw DomainError("trace power needs k >= 1");
  const std::size_t d = Mx.dim();
  std::vector<PowerSeries> P = Mx.entries;
  for (int step = 1; step < k; ++step) {
    std::vector<PowerSeries> Q(d * d, Mx.entries[0].zero_like());
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t l = 0; l < d; ++l) {
        const auto& x = P[i * d + l];
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < d; ++j) Q[i * d + j] += x * Mx.entry(l, j);
      }
    P = std::move(Q);
  }
  PowerSeries tr = Mx.entries[0].zero_like();
  for (std::size_t i = 0; i < d; ++i) tr += P[i * d + i];
  return tr;
}

PowerSeries varpi_to_t(const PowerSeries& s, int certified, const PowerSeries& pi_t) {
  const int D = s.denom();
  const int cert = std::min(certified, s.trunc());
  const int Tt = static_cast<int>(ceil_div(cert, D));
  if (pi_t.trunc() < Tt) throw PrecisionUnderflow("pi(T) is shorter than the required T-truncation");
  if (pi_t.ring()->precision() < s.ring()->precision()) {
    throw PrecisionUnderflow("pi(T) carries fewer p-adic digits than the series");
  }
  auto Z = make_zp(s.ring()->p(), s.ring()->precision());
  PowerSeries P(Z, Tt);
  for (int i = 0; i < cert; ++i) {
    if (s.coeff_is_zero(i)) continue;
    if (i % D != 0) throw TheoremViolation("varpi-series has a fractional pi-exponent");
    const auto c = s.coeff(i);
    for (std::size_t j = 1; j < c.size(); ++j)
      if (c[j] != 0) throw TheoremViolation("varpi-series coefficient outside Z_p");
    P.set(i / D, c[0]);
  }
  return P.compose(pi_t.reduced(Z).truncated(Tt));
}

TSSeries dwork_c_function(const LaurentPoly& f, int deg_s, int M, int N_T) {
  const auto dd = newton_polytope(f);
  const u64 p = f.field->p();
  const int N_varpi = static_cast<int>(dd.D) * N_T;
  const auto Mx = psi_a_matrix(f, basis_for(p, N_varpi), M, N_varpi);
  const auto cs = char_series(Mx, deg_s);
  const auto pi_t = pi_of_t(p, M, N_T);
  return cs.map([&](const PowerSeries& c) { return varpi_to_t(c, Mx.certified, pi_t); });
}

TraceCheck verify_trace_formula(const LaurentPoly& f, int k, int M, int N_T) {
  const auto dd = newton_polytope(f);
  const u64 p = f.field->p();
  const int a = f.field->degree();
  const int N_varpi = static_cast<int>(dd.D) * N_T;
  const auto Mx = psi_a_matrix(f, basis_for(p, N_varpi), M, N_varpi);
  const auto lhs = varpi_to_t(trace_power(Mx, k), Mx.certified, pi_of_t(p, M, N_T));

  const auto S = s_f_T(f, k, M, N_T);
  const ResidueRing& R = S.ring()->base();
  const u64 qk = R.pow(R.from_int(static_cast<i64>(p)), static_cast<u64>(a) * k);
  const u64 unit = R.inv(R.pow(R.sub(qk, 1), static_cast<u64>(f.n)));
  const auto rhs = S.scaled(unit);

  TraceCheck r;
  r.k = k;
  r.M = M;
  r.t_trunc = std::min(lhs.trunc(), rhs.trunc());
  r.modulus = "pi^" + std::to_string(r.t_trunc) + ", p^" + std::to_string(M);
  r.pass = true;
  for (int j = 0; j < r.t_trunc; ++j)
    if (lhs.at(j) % R.modulus() != rhs.at(j)) r.pass = false;
  return r;
}

namespace {

// ord_p(det A) mod p^M over Z_q by elimination with a pivot of least
// valuation: every Schur complement entry stays correct mod p^M.
int det_valuation(std::vector<UnramifiedRing::Elem> A, std::size_t d, const UnramifiedRing& Z) {
  const int M = Z.precision();
  int total = 0;
  std::vector<std::size_t> rows(d), cols(d);
  for (std::size_t i = 0; i < d; ++i) rows[i] = cols[i] = i;
  while (!rows.empty()) {
    int best = M;
    std::size_t br = 0, bc = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) {
        const int v = Z.val(A[rows[i] * d + cols[j]]);
        if (v < best) {
          best = v;
          br = i;
          bc = j;
        }
      }
    total += best;
    if (best >= M || total >= M) return M;
    const std::size_t pr = rows[br], pc = cols[bc];
    const u64 pv = Z.base().p_power(best);
    auto unit = A[pr * d + pc];
    for (auto& x : unit) x /= pv;
    const auto inv = Z.inv(unit);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == br) continue;
      const std::size_t r = rows[i];
      auto x = A[r * d + pc];
      if (Z.is_zero(x)) continue;
      for (auto& c : x) c /= pv;
      const auto factor = Z.mul(x, inv);
      for (std::size_t j = 0; j < cols.size(); ++j) {
        const std::size_t c = cols[j];
        A[r * d + c] = Z.sub(A[r * d + c], Z.mul(factor, A[pr * d + c]));
      }
    }
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(br));
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(bc));
  }
  return total;
}

struct ConstantMatrix {
  Basis basis;  // degrees on the requested grid
  std::vector<UnramifiedRing::Elem> A;
  ZqPtr ring;
  DegreeData dd;
};

// (alpha_{pw-u}(f) pi^{c(pw-u,u)}) mod varpi on the cone points of grid degree <= K.
ConstantMatrix constant_matrix(const LaurentPoly& f, i64 K, int M, i64 grid_D) {
  ConstantMatrix cm;
  cm.dd = newton_polytope(f);
  const auto& dd = cm.dd;
  const i64 D = dd.D;
  const i64 G = grid_D > 0 ? grid_D : D;
  if (G % D != 0) throw DomainError("grid denominator must be a multiple of D");
  const i64 scale = G / D;
  const u64 p = f.field->p();
  cm.basis = make_basis(dd, K / scale);
  for (auto& g : cm.basis.deg) g *= scale;
  cm.ring = make_zq(f.field, M);
  const auto& Z = *cm.ring;
  const int N_pi = static_cast<int>(static_cast<i64>(p) * K / G) + 1;
  const auto raw = e_f_raw(f, cm.ring, N_pi);
  const std::size_t d = cm.basis.pts.size();
  cm.A.assign(d * d, Z.zero());
  for (std::size_t w = 0; w < d; ++w) {
    for (std::size_t u = 0; u < d; ++u) {
      Point v = cm.basis.pts[w];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<i64>(p) * v[i] - cm.basis.pts[u][i];
      if (!in_cone(dd, v)) continue;
      const i64 dv = degree_num(dd, v);
      if (dv % D != 0) continue;
      const i64 du = cm.basis.deg[u] / scale, dw = cm.basis.deg[w] / scale;
      if (dv + du != static_cast<i64>(p) * dw) continue;
      auto it = raw.find(v);
      if (it == raw.end()) continue;
      const int m = static_cast<int>(dv / D);
      if (m >= it->second.trunc()) throw Error("E_f expansion too short (internal error)");
      cm.A[w * d + u] = it->second.coeff(m);
    }
  }
  return cm;
}

std::vector<MinorVerdict> minors_of(const ConstantMatrix& cm, i64 K) {
  const std::size_t d = cm.basis.pts.size();
  const int M = cm.ring->precision();
  std::vector<MinorVerdict> out;
  for (i64 k = 0; k <= K; ++k) {
    std::size_t sz = 0;
    while (sz < d && cm.basis.deg[sz] <= k) ++sz;
    std::vector<UnramifiedRing::Elem> sub;
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t j = 0; j < sz; ++j) sub.push_back(cm.A[i * d + j]);
    MinorVerdict mv;
    mv.k = k;
    mv.size = sz;
    mv.valuation = det_valuation(std::move(sub), sz, *cm.ring);
    mv.nonzero = mv.valuation < M;
    out.push_back(mv);
  }
  return out;
}

int rank_of(std::vector<std::vector<Rational>> rows) {
  int rank = 0;
  const std::size_t n = rows.empty() ? 0 : rows[0].size();
  for (std::size_t col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows.size() && rows[piv][col] == Rational(0)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    const auto& pr = rows[static_cast<std::size_t>(rank)];
    for (std::size_t i = static_cast<std::size_t>(rank) + 1; i < rows.size(); ++i) {
      const Rational factor = rows[i][col] / pr[col];
      for (std::size_t j = col; j < n; ++j) rows[i][j] -= factor * pr[j];
    }
    ++rank;
  }
  return rank;
}

// Open face of u/deg(u): the set of facets it lies on, with the face's
// dimension; the origin is its own block of dimension -1.
std::pair<std::vector<std::size_t>, int> open_face(const DegreeData& dd, const Point& u, i64 du) {
  if (du == 0) return {{}, -1};
  std::vector<std::size_t> tight;
  std::vector<std::vector<Rational>> normals;
  for (std::size_t i = 0; i < dd.facets.size(); ++i) {
    const auto& F = dd.facets[i];
    i64 dot = 0;
    for (int j = 0; j < dd.n; ++j) dot += F.normal[j] * u[j];
    if (dot * dd.D == F.d * du) {
      tight.push_back(i);
      std::vector<Rational> row;
      for (auto c : F.normal) row.emplace_back(c);
      normals.push_back(std::move(row));
    }
  }
  return {tight, dd.n - rank_of(std::move(normals))};
}

}  // namespace

std::vector<MinorVerdict> ordinariness_determinants(const LaurentPoly& f, i64 K, int M, i64 grid_D) {
  if (K < 0) throw DomainError("minor depth must be nonnegative");
  return minors_of(constant_matrix(f, K, M, grid_D), K);
}

FacialReport facial_criterion(const LaurentPoly& f, i64 K, int M) {
  const auto cm = constant_matrix(f, K, M, 0);
  FacialReport rep;
  rep.whole = minors_of(cm, K);

  const std::size_t d = cm.basis.pts.size();
  std::vector<std::pair<std::vector<std::size_t>, int>> key;
  for (std::size_t i = 0; i < d; ++i) key.push_back(open_face(cm.dd, cm.basis.pts[i], cm.basis.deg[i]));
  for (std::size_t w = 0; w < d; ++w)
    for (std::size_t u = 0; u < d; ++u) {
      if (key[w].first == key[u].first || key[w].second > key[u].second) continue;
      if (!cm.ring->is_zero(cm.A[w * d + u])) {
        throw TheoremViolation("constant-term matrix is not block triangular over the open faces");
      }
    }
  rep.block_triangular = true;

  const auto dd = newton_polytope(f);
  for (const auto& face : codim1_faces_no_origin(dd, f)) {
    const auto fs = restrict_to_face(f, face);
    rep.faces.push_back({to_string(fs), ordinariness_determinants(fs, K, M, dd.D)});
  }
  for (i64 k = 0; k <= K; ++k) {
    bool all = true;
    int vsum = 0;
    for (const auto& fv : rep.faces) {
      all = all && fv.minors[k].nonzero;
      vsum += fv.minors[k].valuation;
    }
    rep.conjunction.push_back(all);
    if (rep.whole[k].nonzero && !all) {
      throw TheoremViolation("whole minor is nonzero but a facial minor vanishes at k = " + std::to_string(k));
    }
    if (all && vsum < M && !rep.whole[k].nonzero) {
      throw TheoremViolation("facial minors are nonzero but the whole minor vanishes at k = " + std::to_string(k));
    }
  }
  return rep;
}

}  // namespace tadic
