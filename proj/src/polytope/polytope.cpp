#include "tadic/polytope/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "tadic/errors.hpp"

namespace tadic {
namespace {

using Matrix = std::vector<std::vector<i64>>;

i64 dot(const Point& a, const Point& b) {
  i64 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Bareiss elimination on a square integer matrix.
i64 det(Matrix m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  __int128 sign = 1, prev = 1;
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return static_cast<i64>(sign * a[n - 1][n - 1]);
}

int rank(const std::vector<Point>& rows) {
  if (rows.empty()) return 0;
  std::vector<std::vector<Rational>> a;
  for (const auto& r : rows) {
    std::vector<Rational> row;
    for (i64 x : r) row.emplace_back(x);
    a.push_back(row);
  }
  const std::size_t cols = a[0].size();
  std::size_t rk = 0;
  for (std::size_t c = 0; c < cols && rk < a.size(); ++c) {
    std::size_t piv = rk;
    while (piv < a.size() && a[piv][c] == Rational(0)) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[rk], a[piv]);
    for (std::size_t i = rk + 1; i < a.size(); ++i) {
      const Rational f = a[i][c] / a[rk][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rk][j];
    }
    ++rk;
  }
  return static_cast<int>(rk);
}

int affine_rank(const std::vector<Point>& pts) {
  std::vector<Point> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Point d(pts[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
    diffs.push_back(d);
  }
  return rank(diffs);
}

// A vector orthogonal to the n-1 given rows (generalized cross product).
Point cofactor_normal(const std::vector<Point>& rows, int n) {
  Point normal(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Matrix minor;
    for (const auto& r : rows) {
      std::vector<i64> row;
      for (int j = 0; j < n; ++j)
        if (j != i) row.push_back(r[j]);
      minor.push_back(row);
    }
    normal[i] = (i % 2 == 0 ? 1 : -1) * det(minor);
  }
  return normal;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t total) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < total - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool on_facet(const Facet& F, const Point& u) { return dot(F.normal, u) == F.d; }

using VertexSet = std::vector<std::size_t>;

// Vertex-index sets of all nonempty proper faces.
std::vector<VertexSet> face_sets(const DegreeData& dd) {
  std::set<VertexSet> all;
  for (const auto& F : dd.facets) {
    VertexSet s;
    for (std::size_t v = 0; v < dd.vertices.size(); ++v)
      if (on_facet(F, dd.vertices[v])) s.push_back(v);
    all.insert(s);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<VertexSet> cur(all.begin(), all.end());
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        VertexSet s;
        std::set_intersection(cur[i].begin(), cur[i].end(), cur[j].begin(), cur[j].end(), std::back_inserter(s));
        if (!s.empty() && all.insert(s).second) grew = true;
      }
    }
  }
  return {all.begin(), all.end()};
}

std::vector<Point> points_of(const DegreeData& dd, const VertexSet& s) {
  std::vector<Point> pts;
  for (auto v : s) pts.push_back(dd.vertices[v]);
  return pts;
}

}  // namespace

std::string to_string(OriginPosition pos) {
  switch (pos) {
    case OriginPosition::interior: return "interior";
    case OriginPosition::boundary: return "boundary";
    case OriginPosition::vertex: return "vertex";
  }
  return "?";
}

DegreeData polytope_of_points(int n, const std::vector<Point>& points) {
  if (n < 1 || n > 4) throw DomainError("dimension too large: facet enumeration supports 1 <= n <= 4");
  std::set<Point> uniq{Point(static_cast<std::size_t>(n), 0)};
  for (const auto& u : points) {
    if (static_cast<int>(u.size()) != n) throw DomainError("exponent vector has the wrong length");
    uniq.insert(u);
  }
  const std::vector<Point> pts(uniq.begin(), uniq.end());
  if (pts.size() == 1) throw DomainError("degenerate polytope: all exponents are zero");
  if (affine_rank(pts) != n) throw DomainError("degenerate polytope: Delta is not full-dimensional");

  std::set<std::pair<Point, i64>> found;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  do {
    std::vector<Point> rows;
    for (std::size_t j = 1; j < idx.size(); ++j) {
      Point d(static_cast<std::size_t>(n));
      for (int c = 0; c < n; ++c) d[c] = pts[idx[j]][c] - pts[idx[0]][c];
      rows.push_back(d);
    }
    Point normal = cofactor_normal(rows, n);
    i64 g = 0;
    for (i64 x : normal) g = std::gcd(g, x);
    if (g == 0) continue;
    for (auto& x : normal) x /= g;
    i64 c = dot(normal, pts[idx[0]]);
    bool below = true, above = true;
    for (const auto& x : pts) {
      const i64 v = dot(normal, x);
      below = below && v <= c;
      above = above && v >= c;
    }
    if (!below && !above) continue;
    if (!below) {
      for (auto& x : normal) x = -x;
      c = -c;
    }
    found.emplace(normal, c);
  } while (next_combination(idx, pts.size()));

  DegreeData dd;
  dd.n = n;
  for (const auto& [normal, d] : found) dd.facets.push_back({normal, d});
  i64 D = 1;
  std::vector<Point> origin_normals;
  for (const auto& F : dd.facets) {
    if (F.d > 0) {
      dd.facets_no_origin.push_back(F);
      D = std::lcm(D, F.d);
    } else {
      origin_normals.push_back(F.normal);
    }
  }
  dd.D = D;
  for (const auto& x : pts) {
    std::vector<Point> normals;
    for (const auto& F : dd.facets)
      if (on_facet(F, x)) normals.push_back(F.normal);
    if (rank(normals) == n) dd.vertices.push_back(x);
  }
  if (origin_normals.empty()) dd.origin = OriginPosition::interior;
  else if (rank(origin_normals) == n) dd.origin = OriginPosition::vertex;
  else dd.origin = OriginPosition::boundary;
  return dd;
}

DegreeData newton_polytope(const LaurentPoly& f) {
  if (f.terms.empty()) throw DomainError("the zero polynomial has no Newton polytope");
  return polytope_of_points(f.n, f.exponents());
}

bool in_cone(const DegreeData& dd, const Point& u) {
  for (const auto& F : dd.facets)
    if (F.d == 0 && dot(F.normal, u) > 0) return false;
  return true;
}

bool in_polytope(const DegreeData& dd, const Point& u) {
  for (const auto& F : dd.facets)
    if (dot(F.normal, u) > F.d) return false;
  return true;
}

i64 degree_num(const DegreeData& dd, const Point& u) {
  if (static_cast<int>(u.size()) != dd.n) throw DomainError("lattice point has the wrong dimension");
  if (!in_cone(dd, u)) throw DomainError("lattice point is not in the cone of Delta");
  i64 best = 0;
  for (const auto& F : dd.facets_no_origin) best = std::max(best, dot(F.normal, u) * (dd.D / F.d));
  return best;
}

Rational degree_of(const DegreeData& dd, const Point& u) { return Rational(degree_num(dd, u), dd.D); }

Rational cofacial_defect(const DegreeData& dd, const Point& u, const Point& v) {
  Point w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] + v[i];
  return degree_of(dd, u) + degree_of(dd, v) - degree_of(dd, w);
}

void for_each_lattice_point(const DegreeData& dd, i64 K, const std::function<void(const Point&, i64)>& fn) {
  if (K < 0) return;
  const int n = dd.n;
  Point lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    i64 mn = 0, mx = 0;
    for (const auto& v : dd.vertices) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = floor_div(mn * K, dd.D);
    hi[i] = ceil_div(mx * K, dd.D);
  }
  Point u = lo;
  while (true) {
    if (in_cone(dd, u)) {
      const i64 k = degree_num(dd, u);
      if (k <= K) fn(u, k);
    }
    int i = n - 1;
    while (i >= 0 && u[i] == hi[i]) {
      u[i] = lo[i];
      --i;
    }
    if (i < 0) break;
    ++u[i];
  }
}

std::vector<i64> weight_counts(const DegreeData& dd, i64 K) {
  if (K < 0) throw DomainError("weight depth must be nonnegative");
  std::vector<i64> W(static_cast<std::size_t>(K) + 1, 0);
  for_each_lattice_point(dd, K, [&](const Point&, i64 k) { ++W[k]; });
  return W;
}

namespace {

NewtonPolygon weighted_polygon(const std::vector<i64>& W, const Rational& unit) {
  NewtonPolygon P;
  P.vertices.push_back({Rational(0), Rational(0)});
  Rational x(0), y(0);
  for (std::size_t j = 0; j < W.size(); ++j) {
    if (W[j] == 0) continue;
    x += W[j];
    y += unit * static_cast<i64>(j) * W[j];
    P.vertices.push_back({x, y});
  }
  P.certified_upto = x;
  return P;
}

}  // namespace

NewtonPolygon hodge_polygon(const DegreeData& dd, u64 p, int a, i64 K) {
  return weighted_polygon(weight_counts(dd, K), Rational(static_cast<i64>(a) * static_cast<i64>(p - 1), dd.D));
}

NewtonPolygon hodge_polygon_absolute(const DegreeData& dd, i64 K) {
  return weighted_polygon(weight_counts(dd, K), Rational(1, dd.D));
}

std::vector<Face> faces(const DegreeData& dd, const LaurentPoly& f) {
  std::vector<Face> out;
  for (const auto& s : face_sets(dd)) {
    Face face;
    face.vertices = points_of(dd, s);
    face.dim = affine_rank(face.vertices);
    face.contains_origin = true;
    for (std::size_t i = 0; i < dd.facets.size(); ++i) {
      const auto& F = dd.facets[i];
      if (std::all_of(face.vertices.begin(), face.vertices.end(), [&](const Point& v) { return on_facet(F, v); })) {
        face.facets.push_back(i);
        if (F.d != 0) face.contains_origin = false;
      }
    }
    for (const auto& [u, c] : f.terms) {
      if (std::all_of(face.facets.begin(), face.facets.end(), [&](std::size_t i) { return on_facet(dd.facets[i], u); }))
        face.exponents.push_back(u);
    }
    out.push_back(std::move(face));
  }
  std::stable_sort(out.begin(), out.end(), [](const Face& a, const Face& b) { return a.dim < b.dim; });
  return out;
}

std::vector<Face> codim1_faces_no_origin(const DegreeData& dd, const LaurentPoly& f) {
  std::vector<Face> out;
  for (auto& face : faces(dd, f))
    if (face.dim == dd.n - 1 && !face.contains_origin) out.push_back(std::move(face));
  return out;
}

LaurentPoly restrict_to_face(const LaurentPoly& f, const Face& face) {
  LaurentPoly r(f.n, f.field);
  for (const auto& u : face.exponents) r.terms.emplace(u, f.terms.at(u));
  if (r.terms.empty()) throw DomainError("empty restriction: no term of f lies on the face");
  return r;
}

namespace {

// Pulling triangulation of a face into simplices on its own vertices.
std::vector<VertexSet> triangulate(const DegreeData& dd, const std::vector<VertexSet>& all, const VertexSet& s,
                                   int dim) {
  if (dim == 0) return {s};
  const std::size_t v0 = s.front();
  std::vector<VertexSet> out;
  for (const auto& sub : all) {
    if (sub.size() >= s.size() || !std::includes(s.begin(), s.end(), sub.begin(), sub.end())) continue;
    if (std::binary_search(sub.begin(), sub.end(), v0)) continue;
    if (affine_rank(points_of(dd, sub)) != dim - 1) continue;
    for (auto simplex : triangulate(dd, all, sub, dim - 1)) {
      simplex.push_back(v0);
      out.push_back(simplex);
    }
  }
  return out;
}

}  // namespace

i64 normalized_volume(const DegreeData& dd) {
  const auto all = face_sets(dd);
  i64 total = 0;
  for (const auto& s : all) {
    const auto pts = points_of(dd, s);
    if (affine_rank(pts) != dd.n - 1) continue;
    bool origin_facet = true;
    for (const auto& F : dd.facets_no_origin)
      if (std::all_of(pts.begin(), pts.end(), [&](const Point& v) { return on_facet(F, v); })) origin_facet = false;
    if (origin_facet) continue;
    for (const auto& simplex : triangulate(dd, all, s, dd.n - 1)) {
      Matrix m;
      for (auto v : simplex) m.push_back(dd.vertices[v]);
      total += std::abs(det(m));
    }
  }
  return total;
}

std::string to_string(Nondegeneracy::Verdict v) {
  switch (v) {
    case Nondegeneracy::Verdict::nondegenerate: return "nondegenerate";
    case Nondegeneracy::Verdict::degenerate: return "degenerate";
    case Nondegeneracy::Verdict::unknown: return "unknown";
  }
  return "?";
}

namespace {

// x_i df/dx_i restricted to a face, as (exponent, coefficient) pairs.
std::vector<std::vector<std::pair<Point, FieldCtx::Elem>>> toric_gradient(const LaurentPoly& g) {
  const auto& F = *g.field;
  const i64 p = static_cast<i64>(F.p());
  std::vector<std::vector<std::pair<Point, FieldCtx::Elem>>> out(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) {
    for (const auto& [u, c] : g.terms) {
      const i64 r = ((u[i] % p) + p) % p;
      if (r != 0) out[i].emplace_back(u, F.mul(F.from_int(r), c));
    }
  }
  return out;
}

// A common zero on the torus over `big`, or nothing.
std::optional<std::vector<FieldCtx::Elem>> torus_search(
    const std::vector<std::vector<std::pair<Point, FieldCtx::Elem>>>& grad, int n, const FieldPtr& big,
    const FieldEmbedding& emb) {
  const i64 order = static_cast<i64>(big->order()) - 1;
  std::vector<std::vector<std::pair<Point, FieldCtx::Elem>>> g = grad;
  for (auto& gi : g)
    for (auto& [u, c] : gi) c = emb(c);
  std::vector<i64> logs(static_cast<std::size_t>(n), 0);
  while (true) {
    bool all_zero = true;
    for (const auto& gi : g) {
      FieldCtx::Elem acc = 0;
      for (const auto& [u, c] : gi) {
        i64 e = 0;
        for (int j = 0; j < n; ++j) e = (e + ((u[j] % order) + order) % order * logs[j]) % order;
        acc = big->add(acc, big->mul(c, big->exp(static_cast<u64>(e))));
      }
      if (acc != 0) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) {
      std::vector<FieldCtx::Elem> x;
      for (i64 l : logs) x.push_back(big->exp(static_cast<u64>(l)));
      return x;
    }
    int j = n - 1;
    while (j >= 0 && logs[j] == order - 1) {
      logs[j] = 0;
      --j;
    }
    if (j < 0) return std::nullopt;
    ++logs[j];
  }
}

constexpr double kTorusLimit = 1 << 24;

}  // namespace

Nondegeneracy is_nondegenerate(const LaurentPoly& f, int r_max) {
  if (r_max < 1) throw DomainError("r_max must be at least 1");
  const auto dd = newton_polytope(f);
  const auto& F = *f.field;
  Nondegeneracy res;
  std::vector<std::pair<Face, std::vector<std::vector<std::pair<Point, FieldCtx::Elem>>>>> pending;
  for (const auto& face : faces(dd, f)) {
    if (face.contains_origin) continue;
    const auto grad = toric_gradient(restrict_to_face(f, face));
    bool certified = false, all_vanish = true;
    for (const auto& gi : grad) {
      if (gi.size() == 1) certified = true;
      if (!gi.empty()) all_vanish = false;
    }
    if (certified) continue;
    if (all_vanish) {
      res.verdict = Nondegeneracy::Verdict::degenerate;
      res.face = face;
      res.r = F.degree();
      res.witness_field = f.field;
      res.witness.assign(static_cast<std::size_t>(f.n), F.one());
      res.note = "every x_i df/dx_i vanishes identically on the face";
      return res;
    }
    pending.emplace_back(face, grad);
  }
  if (pending.empty()) {
    res.verdict = Nondegeneracy::Verdict::nondegenerate;
    res.note = "every face avoiding the origin has a monomial x_i df/dx_i";
    return res;
  }
  int searched = 0;
  for (int r = F.degree(); r <= r_max; r += F.degree()) {
    double torus = 1;
    for (int i = 0; i < f.n; ++i) torus *= static_cast<double>(checked_pow(F.p(), r) - 1);
    if (checked_pow(F.p(), r) == 0 || torus * static_cast<double>(pending.size()) > kTorusLimit) break;
    const auto big = FieldCtx::build(F.p(), r);
    const FieldEmbedding emb(f.field, big);
    for (const auto& [face, grad] : pending) {
      if (auto x = torus_search(grad, f.n, big, emb)) {
        res.verdict = Nondegeneracy::Verdict::degenerate;
        res.face = face;
        res.r = r;
        res.witness_field = big;
        res.witness = *x;
        res.note = "common toric zero of the face gradients";
        return res;
      }
    }
    searched = r;
  }
  res.verdict = Nondegeneracy::Verdict::unknown;
  res.note = searched > 0 ? "no common toric zero over F_{p^r} for r <= " + std::to_string(searched)
                          : "no extension small enough to search";
  return res;
}

ExponentI exponent_I(const DegreeData& dd, i64 search_bound) {
  if (search_bound < 1) throw DomainError("search bound must be at least 1");
  const i64 D = dd.D;
  std::vector<Point> gens, targets;
  for_each_lattice_point(dd, dd.n * D, [&](const Point& u, i64 k) {
    if (k == D) gens.push_back(u);
    if (k > 0) targets.push_back(u);
  });
  // layers[m] = sums of m generators that have degree exactly m.
  std::vector<std::set<Point>> layers{{Point(static_cast<std::size_t>(dd.n), 0)}};
  const auto layer = [&](i64 m) -> const std::set<Point>& {
    while (static_cast<i64>(layers.size()) <= m) {
      const i64 next = static_cast<i64>(layers.size());
      std::set<Point> R;
      for (const auto& x : layers.back()) {
        for (const auto& g : gens) {
          Point y(x.size());
          for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] + g[i];
          if (degree_num(dd, y) == next * D) R.insert(y);
        }
      }
      layers.push_back(std::move(R));
    }
    return layers[static_cast<std::size_t>(m)];
  };
  for (i64 d = 1; d <= search_bound; ++d) {
    bool ok = true;
    for (const auto& u : targets) {
      const i64 k = d * degree_num(dd, u);
      if (k % D != 0) {
        ok = false;
        break;
      }
      Point du(u.size());
      for (std::size_t i = 0; i < du.size(); ++i) du[i] = d * u[i];
      if (layer(k / D).count(du) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) return {d, d};
  }
  return {std::nullopt, search_bound + 1};
}

}  // namespace tadic
