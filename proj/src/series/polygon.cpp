#include "tadic/series/polygon.hpp"

#include <algorithm>
#include <set>

#include "tadic/errors.hpp"

namespace tadic {

Rational NewtonPolygon::at(const Rational& x) const {
  if (vertices.empty() || x < 0 || x > width()) throw DomainError("polygon evaluated outside its range");
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const auto& a = vertices[i - 1];
    const auto& b = vertices[i];
    if (x <= b.x) return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
  }
  return vertices.back().y;
}

std::vector<std::pair<Rational, Rational>> NewtonPolygon::sides() const {
  std::vector<std::pair<Rational, Rational>> out;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const auto dx = vertices[i].x - vertices[i - 1].x;
    out.emplace_back((vertices[i].y - vertices[i - 1].y) / dx, dx);
  }
  return out;
}

bool operator==(const NewtonPolygon& a, const NewtonPolygon& b) {
  return a.vertices == b.vertices && a.certified_upto == b.certified_upto;
}

namespace {

// Cross product sign of (b - a) x (c - a); > 0 means c is above line ab.
Rational cross(const PolyPoint& a, const PolyPoint& b, const PolyPoint& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

}  // namespace

std::vector<PolyPoint> lower_hull(std::vector<PolyPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const PolyPoint& a, const PolyPoint& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  std::vector<PolyPoint> h;
  for (const auto& pt : pts) {
    if (!h.empty() && h.back().x == pt.x) continue;  // keep the lowest per x
    while (h.size() >= 2 && cross(h[h.size() - 2], h.back(), pt) <= 0) h.pop_back();
    h.push_back(pt);
  }
  return h;
}

namespace {

Rational floor_value(const TailBound& t, const Rational& x) {
  const Rational w = t.floor.width();
  if (x <= w) return t.floor.at(x);
  return t.floor.at(w) + t.slope_beyond * (x - w);
}

// a == b as functions on [0, X]; both must cover [0, X].
bool agree_on(const std::vector<PolyPoint>& a, const std::vector<PolyPoint>& b, const Rational& X) {
  NewtonPolygon pa{a, 0}, pb{b, 0};
  if (pa.width() < X || pb.width() < X) return false;
  std::set<Rational> xs{X};
  for (const auto& v : a)
    if (v.x <= X) xs.insert(v.x);
  for (const auto& v : b)
    if (v.x <= X) xs.insert(v.x);
  for (const auto& x : xs)
    if (pa.at(x) != pb.at(x)) return false;
  return true;
}

}  // namespace

NewtonPolygon newton_polygon_of(const std::vector<Valuation>& vals, const std::optional<TailBound>& tail) {
  const int K = static_cast<int>(vals.size()) - 1;
  std::vector<PolyPoint> exact, low;
  for (int k = 0; k <= K; ++k) {
    const Rational x(k);
    if (vals[k].exact) {
      exact.push_back({x, vals[k].value});
      low.push_back({x, vals[k].value});
    } else {
      Rational y = vals[k].value;
      if (tail) y = std::max(y, floor_value(*tail, x));
      low.push_back({x, y});
    }
  }
  if (tail) {
    const std::int64_t last = std::max<std::int64_t>(ceil(tail->floor.width()), K + 1);
    for (std::int64_t k = K + 1; k <= last; ++k) low.push_back({Rational(k), floor_value(*tail, Rational(k))});
  }

  NewtonPolygon P;
  P.vertices = lower_hull(exact);
  if (P.vertices.empty() || P.vertices.front().x != Rational(0)) {
    throw DomainError("Newton polygon needs an exact constant term");
  }
  const auto H_low = lower_hull(low);

  Rational cert(0);
  Rational prev_slope;
  for (std::size_t i = 1; i < P.vertices.size(); ++i) {
    const auto& a = P.vertices[i - 1];
    const auto& b = P.vertices[i];
    const Rational slope = (b.y - a.y) / (b.x - a.x);
    if (tail && slope > tail->slope_beyond) break;
    if (!agree_on(P.vertices, H_low, b.x)) break;
    cert = b.x;
  }
  P.certified_upto = cert;
  return P;
}

namespace {

std::set<Rational> breakpoints(const NewtonPolygon& P, const NewtonPolygon& Q, const Rational& R) {
  std::set<Rational> xs{Rational(0), R};
  for (const auto& v : P.vertices)
    if (v.x <= R) xs.insert(v.x);
  for (const auto& v : Q.vertices)
    if (v.x <= R) xs.insert(v.x);
  return xs;
}

Rational common_range(const NewtonPolygon& P, const NewtonPolygon& Q) {
  if (P.vertices.empty() || Q.vertices.empty()) throw DomainError("incomparable polygons: empty");
  const Rational R = std::min(P.certified_upto, Q.certified_upto);
  if (R > P.width() || R > Q.width()) throw DomainError("incomparable polygons: range exceeds vertices");
  return R;
}

}  // namespace

bool polygon_dominates(const NewtonPolygon& P, const NewtonPolygon& Q) {
  const Rational R = common_range(P, Q);
  for (const auto& x : breakpoints(P, Q, R))
    if (P.at(x) < Q.at(x)) return false;
  return true;
}

bool polygon_agrees(const NewtonPolygon& P, const NewtonPolygon& Q) {
  const Rational R = common_range(P, Q);
  for (const auto& x : breakpoints(P, Q, R))
    if (P.at(x) != Q.at(x)) return false;
  return true;
}

NewtonPolygon polygon_rescale(const NewtonPolygon& P, const Rational& factor) {
  if (factor <= 0) throw DomainError("polygon rescale factor must be positive");
  NewtonPolygon r = P;
  for (auto& v : r.vertices) v.y *= factor;
  return r;
}

SlopeSeries SlopeSeries::geometric_power(int n, int depth) {
  if (n < 0 || depth < 0) throw DomainError("geometric_power needs n, depth >= 0");
  SlopeSeries s;
  // binom(n + j - 1, j) by the multiplicative recurrence.
  long long c = 1;
  for (int j = 0; j <= depth; ++j) {
    if (j > 0) c = c * (n + j - 1) / j;
    if (c > 0) s.mult[Rational(j)] = c;
    if (n == 0) break;
  }
  if (n > 0) s.complete_below = Rational(depth + 1);
  return s;
}

SlopeSeries SlopeSeries::from_polygon(const NewtonPolygon& P, bool complete) {
  SlopeSeries s;
  Rational last_slope;
  bool any = false;
  Rational x0(0);
  for (std::size_t i = 1; i < P.vertices.size(); ++i) {
    const auto& a = P.vertices[i - 1];
    const auto& b = P.vertices[i];
    if (b.x > P.certified_upto) break;
    const Rational len = b.x - a.x;
    if (len.denominator() != 1) throw DomainError("polygon side of non-integral length");
    const Rational slope = (b.y - a.y) / len;
    s.mult[slope] += len.numerator();
    last_slope = slope;
    any = true;
    x0 = b.x;
  }
  if (complete && x0 == P.width()) {
    s.complete_below.reset();
  } else {
    s.complete_below = any ? last_slope : Rational(0);
  }
  return s;
}

NewtonPolygon SlopeSeries::to_polygon() const {
  NewtonPolygon P;
  P.vertices.push_back({0, 0});
  Rational x(0), y(0);
  Rational cert(0);
  for (const auto& [slope, m] : mult) {
    x += m;
    y += slope * m;
    P.vertices.push_back({x, y});
    if (!complete_below || slope < *complete_below) cert = x;
  }
  P.certified_upto = cert;
  return P;
}

SlopeSeries slope_series_mul(const SlopeSeries& A, const SlopeSeries& B) {
  SlopeSeries r;
  for (const auto& [la, ma] : A.mult)
    for (const auto& [lb, mb] : B.mult) r.mult[la + lb] += ma * mb;
  const auto min_slope = [](const SlopeSeries& S) {
    return S.mult.empty() ? Rational(0) : S.mult.begin()->first;
  };
  std::optional<Rational> bound;
  if (A.complete_below) bound = *A.complete_below + min_slope(B);
  if (B.complete_below) {
    const Rational other = *B.complete_below + min_slope(A);
    bound = bound ? std::min(*bound, other) : other;
  }
  r.complete_below = bound;
  if (bound) {
    // Drop slopes that may be incomplete.
    for (auto it = r.mult.begin(); it != r.mult.end();) {
      if (it->first >= *bound) it = r.mult.erase(it);
      else ++it;
    }
  }
  return r;
}

}  // namespace tadic
