#pragma once

#include "tadic/arith/cyclotomic.hpp"
#include "tadic/cli/run.hpp"
#include "tadic/series/polygon.hpp"
#include "tadic/series/power_series.hpp"
#include "tadic/series/s_series.hpp"

namespace tadic {

Json to_json(const Rational& r);
Json to_json(const NewtonPolygon& P);
/// Nonzero coefficients as exponent -> residue string; Z_q coordinates are
/// joined by commas.
Json to_json(const PowerSeries& s);
Json to_json(const CycElem& x);
Json to_json(const Point& u);

template <class C>
Json to_json(const SSeries<C>& F) {
  Json arr = Json::array();
  for (int k = 0; k <= F.degree(); ++k) arr.push_back(to_json(F[k]));
  return arr;
}

}  // namespace tadic
