#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tadic/rational.hpp"
#include "tadic/valuation.hpp"

namespace tadic {

struct PolyPoint {
  Rational x, y;
};

inline bool operator==(const PolyPoint& a, const PolyPoint& b) { return a.x == b.x && a.y == b.y; }

/// A convex polygon starting at (0,0). Only the part over [0, certified_upto]
/// is proven; vertices beyond it are reported as computed.
struct NewtonPolygon {
  std::vector<PolyPoint> vertices;
  Rational certified_upto{0};

  Rational width() const { return vertices.empty() ? Rational(0) : vertices.back().x; }
  /// Linear interpolation; x must lie in [0, width()].
  Rational at(const Rational& x) const;
  /// (slope, horizontal length) of each side.
  std::vector<std::pair<Rational, Rational>> sides() const;
};

bool operator==(const NewtonPolygon& a, const NewtonPolygon& b);

/// Lower convex hull of finitely many points with distinct x (vertices only).
std::vector<PolyPoint> lower_hull(std::vector<PolyPoint> pts);

/// What is known about coefficients past the last computed one: every point
/// (k, v_k) lies on or above `floor` over its width, and beyond that width the
/// floor keeps rising with slope at least `slope_beyond`.
struct TailBound {
  NewtonPolygon floor;
  Rational slope_beyond;
};

/// Newton polygon of points (k, vals[k]). Inexact valuations are lower bounds.
/// A prefix [0, X] is certified when the hull of the exact points agrees there
/// with the hull obtained by moving every uncertain point down to its lower
/// bound; `tail`, when given, supplies lower bounds for indices past the data
/// and for uncertain points. Without a tail the data is taken as complete.
NewtonPolygon newton_polygon_of(const std::vector<Valuation>& vals,
                                const std::optional<TailBound>& tail = std::nullopt);

/// P >= Q pointwise on [0, min(P.certified_upto, Q.certified_upto)].
bool polygon_dominates(const NewtonPolygon& P, const NewtonPolygon& Q);
/// P == Q on the same common range.
bool polygon_agrees(const NewtonPolygon& P, const NewtonPolygon& Q);

/// Multiply ordinates by a positive factor.
NewtonPolygon polygon_rescale(const NewtonPolygon& P, const Rational& factor);

/// Slope multiset sum t^{lambda_i}. Multiplicities of slopes below
/// `complete_below` are exact; larger slopes may be missing (a truncated
/// infinite series). An empty optional means the whole multiset is known.
struct SlopeSeries {
  std::map<Rational, long long> mult;
  std::optional<Rational> complete_below;

  /// 1/(1 - t)^n: slope j with multiplicity binom(n + j - 1, j), j <= depth.
  static SlopeSeries geometric_power(int n, int depth);
  /// The slopes of the certified part of a polygon (side lengths must be
  /// integral). With `complete`, a fully certified polygon is taken as the
  /// entire multiset (the series it came from is a polynomial).
  static SlopeSeries from_polygon(const NewtonPolygon& P, bool complete = false);
  NewtonPolygon to_polygon() const;
};

SlopeSeries slope_series_mul(const SlopeSeries& A, const SlopeSeries& B);

}  // namespace tadic
