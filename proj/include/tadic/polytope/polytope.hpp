#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tadic/polytope/laurent.hpp"
#include "tadic/rational.hpp"
#include "tadic/series/polygon.hpp"

namespace tadic {

/// The half-space <normal, x> <= d. Normals are primitive and outward.
struct Facet {
  Point normal;
  i64 d = 0;
};

enum class OriginPosition { interior, boundary, vertex };

std::string to_string(OriginPosition pos);

/// Delta = conv({0} u exponents of f), full-dimensional, with its facets.
/// The degree of u in the cone is max(0, max over facets with d > 0 of
/// <normal, u>/d); D is the lcm of those d.
struct DegreeData {
  int n = 0;
  std::vector<Point> vertices;
  std::vector<Facet> facets;
  std::vector<Facet> facets_no_origin;
  i64 D = 1;
  OriginPosition origin = OriginPosition::interior;
};

/// Requires 1 <= n <= 4 and a full-dimensional Delta.
DegreeData newton_polytope(const LaurentPoly& f);
DegreeData polytope_of_points(int n, const std::vector<Point>& points);

bool in_cone(const DegreeData& dd, const Point& u);
bool in_polytope(const DegreeData& dd, const Point& u);
/// D * deg(u); throws DomainError outside the cone.
i64 degree_num(const DegreeData& dd, const Point& u);
Rational degree_of(const DegreeData& dd, const Point& u);
Rational cofacial_defect(const DegreeData& dd, const Point& u, const Point& v);

/// Calls fn(u, D deg u) for every lattice point of the cone with degree at
/// most K/D, in lexicographic order.
void for_each_lattice_point(const DegreeData& dd, i64 K, const std::function<void(const Point&, i64)>& fn);

/// W(0..K).
std::vector<i64> weight_counts(const DegreeData& dd, i64 K);

/// Sides of slope a(p-1) j/D and length W(j), j = 0..K.
NewtonPolygon hodge_polygon(const DegreeData& dd, u64 p, int a, i64 K);
/// Sides of slope j/D.
NewtonPolygon hodge_polygon_absolute(const DegreeData& dd, i64 K);

struct Face {
  int dim = 0;
  std::vector<Point> vertices;
  /// Indices into DegreeData::facets of the facets containing the face.
  std::vector<std::size_t> facets;
  /// Exponents of f lying on the closed face.
  std::vector<Point> exponents;
  bool contains_origin = false;
};

/// All nonempty proper faces of Delta, by increasing dimension.
std::vector<Face> faces(const DegreeData& dd, const LaurentPoly& f);
std::vector<Face> codim1_faces_no_origin(const DegreeData& dd, const LaurentPoly& f);
/// Keeps the terms on the face; throws DomainError when none remain.
LaurentPoly restrict_to_face(const LaurentPoly& f, const Face& face);

/// n! Vol(Delta).
i64 normalized_volume(const DegreeData& dd);

struct Nondegeneracy {
  enum class Verdict { nondegenerate, degenerate, unknown };
  Verdict verdict = Verdict::unknown;
  /// For a degenerate verdict: the face and a common toric zero of the
  /// partial derivatives of f restricted to it, over F_{p^r}.
  std::optional<Face> face;
  int r = 0;
  FieldPtr witness_field;
  std::vector<FieldCtx::Elem> witness;
  std::string note;
};

std::string to_string(Nondegeneracy::Verdict v);

/// Per closed face avoiding the origin: a single surviving monomial in some
/// x_i df/dx_i certifies that face; all of them vanishing identically gives
/// a witness; otherwise the torus over F_{p^r} (r <= r_max, a | r) is
/// searched. One variable is always decided by the certificates.
Nondegeneracy is_nondegenerate(const LaurentPoly& f, int r_max);

struct ExponentI {
  std::optional<i64> value;
  /// When no value was found: I(Delta) is at least this.
  i64 lower_bound = 1;
};

/// Smallest d <= search_bound with d M(Delta) in the monoid generated by
/// the lattice points of degree 1.
ExponentI exponent_I(const DegreeData& dd, i64 search_bound);

}  // namespace tadic
