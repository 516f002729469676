#include "tadic/cli/json_out.hpp"

#include <string>

namespace tadic {

Json to_json(const Rational& r) {
  Json j;
  j["num"] = std::to_string(r.numerator());
  j["den"] = std::to_string(r.denominator());
  return j;
}

Json to_json(const NewtonPolygon& P) {
  Json j;
  Json verts = Json::array();
  for (const auto& v : P.vertices) verts.push_back(Json::array({to_json(v.x), to_json(v.y)}));
  j["vertices"] = std::move(verts);
  j["certified_upto"] = to_json(P.certified_upto);
  return j;
}

Json to_json(const PowerSeries& s) {
  Json j;
  if (s.denom() != 1) j["denom"] = s.denom();
  j["trunc"] = s.trunc();
  j["p_digits"] = s.ring()->precision();
  Json coeffs = Json::object();
  for (int i = 0; i < s.trunc(); ++i) {
    if (s.coeff_is_zero(i)) continue;
    std::string text;
    if (s.is_scalar()) {
      text = std::to_string(s.at(i));
    } else {
      const auto c = s.coeff(i);
      for (std::size_t t = 0; t < c.size(); ++t) text += (t ? "," : "") + std::to_string(c[t]);
    }
    coeffs[std::to_string(i)] = text;
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

Json to_json(const CycElem& x) {
  Json j;
  j["basis"] = "(zeta - 1)^i";
  j["p_digits"] = x.ring()->precision();
  Json c = Json::array();
  for (int i = 0; i < x.ring()->ramification(); ++i) c.push_back(std::to_string(x.coeff(i)));
  j["coeffs"] = std::move(c);
  const auto v = cyc_ord(x);
  j["ord_pi_psi"] = to_json(v.value);
  j["ord_exact"] = v.exact;
  return j;
}

Json to_json(const Point& u) {
  Json j = Json::array();
  for (auto c : u) j.push_back(c);
  return j;
}

}  // namespace tadic
