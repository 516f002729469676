#include "tadic/polytope/laurent.hpp"

#include <string>

#include "tadic/errors.hpp"

namespace tadic {

void LaurentPoly::add_term(const Point& u, FieldCtx::Elem c) {
  if (static_cast<int>(u.size()) != n) throw DomainError("exponent vector has the wrong length");
  if (c == 0) throw DomainError("zero coefficient: every coefficient must be a root of unity");
  auto it = terms.find(u);
  if (it == terms.end()) {
    terms.emplace(u, c);
    return;
  }
  const auto sum = field->add(it->second, c);
  if (sum == 0) throw DomainError("terms cancel to a zero coefficient");
  it->second = sum;
}

std::vector<Point> LaurentPoly::exponents() const {
  std::vector<Point> out;
  for (const auto& [u, c] : terms) out.push_back(u);
  return out;
}

bool LaurentPoly::has_constant_term() const { return terms.count(Point(static_cast<std::size_t>(n), 0)) > 0; }

FieldCtx::Elem LaurentPoly::eval(const std::vector<FieldCtx::Elem>& x) const {
  const auto& F = *field;
  const i64 order = static_cast<i64>(F.order()) - 1;
  std::vector<i64> logs;
  for (auto xi : x) {
    if (xi == 0) throw DomainError("evaluation point is off the torus");
    logs.push_back(static_cast<i64>(F.log(xi)));
  }
  FieldCtx::Elem acc = 0;
  for (const auto& [u, c] : terms) {
    i64 e = 0;
    for (int i = 0; i < n; ++i) e = (e + (u[i] % order) * logs[i]) % order;
    if (e < 0) e += order;
    acc = F.add(acc, F.mul(c, F.exp(static_cast<u64>(e))));
  }
  return acc;
}

std::string to_string(const LaurentPoly& f) {
  std::string out;
  const auto& F = *f.field;
  for (const auto& [u, c] : f.terms) {
    if (!out.empty()) out += " + ";
    std::string coeff;
    if (c < F.p()) {
      coeff = std::to_string(c);
    } else {
      coeff = "g^" + std::to_string(F.log(c));
    }
    std::string mono;
    for (int i = 0; i < f.n; ++i) {
      if (u[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (u[i] != 1) mono += "^" + std::to_string(u[i]);
    }
    if (mono.empty()) out += coeff;
    else if (coeff == "1") out += mono;
    else out += coeff + "*" + mono;
  }
  return out.empty() ? "0" : out;
}

}  // namespace tadic
