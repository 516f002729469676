#pragma once

#include <map>
#include <vector>

#include "tadic/arith/field.hpp"

namespace tadic {

using Point = std::vector<i64>;

/// f = sum a_u x^u over F_q with nonzero coefficients. Coefficients are
/// stored in F_q and Teichmuller-lifted by the consumers that need Z_q.
struct LaurentPoly {
  int n = 0;
  FieldPtr field;
  std::map<Point, FieldCtx::Elem> terms;

  LaurentPoly() = default;
  LaurentPoly(int nvars, FieldPtr ctx) : n(nvars), field(std::move(ctx)) {}

  /// Adds c x^u; a merge that cancels the term throws DomainError.
  void add_term(const Point& u, FieldCtx::Elem c);
  std::vector<Point> exponents() const;
  bool has_constant_term() const;
  /// Value at a torus point over the same field (coordinates nonzero).
  FieldCtx::Elem eval(const std::vector<FieldCtx::Elem>& x) const;
};

std::string to_string(const LaurentPoly& f);

}  // namespace tadic
