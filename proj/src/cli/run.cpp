#include "tadic/cli/run.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "tadic/cli/json_out.hpp"
#include "tadic/dwork/dwork.hpp"
#include "tadic/errors.hpp"
#include "tadic/sums/sums.hpp"

namespace tadic {
namespace {

Json flag_json(const FlagOn& f) {
  Json j;
  j["value"] = to_string(f.value);
  j["upto"] = to_json(f.upto);
  return j;
}

Json minors_json(const std::vector<MinorVerdict>& ms) {
  Json arr = Json::array();
  for (const auto& m : ms) {
    Json j;
    j["k"] = m.k;
    j["size"] = m.size;
    j["nonzero"] = m.nonzero;
    j["ord_p"] = m.valuation;
    arr.push_back(std::move(j));
  }
  return arr;
}

Json face_json(const Face& face) {
  Json j;
  j["dim"] = face.dim;
  Json v = Json::array();
  for (const auto& u : face.vertices) v.push_back(to_json(u));
  j["vertices"] = std::move(v);
  Json e = Json::array();
  for (const auto& u : face.exponents) e.push_back(to_json(u));
  j["exponents"] = std::move(e);
  j["contains_origin"] = face.contains_origin;
  return j;
}

Caps caps_of(const RunConfig& cfg) {
  Caps c;
  c.M = cfg.M;
  c.N = cfg.N;
  c.deg_s = cfg.deg_s;
  return c;
}

Json cmd_hodge(const LaurentPoly& f, const RunConfig& cfg) {
  const auto dd = newton_polytope(f);
  Json r;
  r["D"] = dd.D;
  r["origin"] = to_string(dd.origin);
  Json verts = Json::array();
  for (const auto& v : dd.vertices) verts.push_back(to_json(v));
  r["polytope_vertices"] = std::move(verts);
  r["normalized_volume"] = normalized_volume(dd);
  Json w = Json::array();
  for (auto c : weight_counts(dd, cfg.K)) w.push_back(c);
  r["weights"] = std::move(w);
  r["hodge_polygon"] = to_json(hodge_polygon(dd, f.field->p(), f.field->degree(), cfg.K));
  r["hodge_absolute"] = to_json(hodge_polygon_absolute(dd, cfg.K));
  return r;
}

Json cmd_sum(const LaurentPoly& f, const RunConfig& cfg) {
  Json arr = Json::array();
  for (int k = cfg.k_lo; k <= cfg.k_hi; ++k) {
    Json j;
    j["k"] = k;
    j["S_T"] = to_json(s_f_T(f, k, cfg.M, cfg.N));
    Json psi = Json::array();
    for (int m : cfg.m_list) {
      Json e;
      e["m"] = m;
      e["value"] = to_json(s_f_psi(f, k, m, cfg.M));
      psi.push_back(std::move(e));
    }
    j["S_psi"] = std::move(psi);
    arr.push_back(std::move(j));
  }
  Json r;
  r["sums"] = std::move(arr);
  return r;
}

Json cmd_np(const LaurentPoly& f, const RunConfig& cfg) {
  const auto rep = np_report(f, cfg.m_list, caps_of(cfg));
  Json r;
  r["np_T"] = to_json(rep.np_T);
  r["hp_q"] = to_json(rep.hp_q);
  r["hp_absolute"] = to_json(rep.hp_absolute);
  r["t_ordinary"] = flag_json(rep.t_ordinary);
  Json psi = Json::array();
  for (const auto& ps : rep.psi) {
    Json j;
    j["m"] = ps.m;
    j["np"] = to_json(ps.np);
    j["ordinary"] = flag_json(ps.ordinary);
    j["rigid"] = flag_json(ps.rigid);
    psi.push_back(std::move(j));
  }
  r["psi"] = std::move(psi);
  return r;
}

Json cmd_dwork(const LaurentPoly& f, const RunConfig& cfg) {
  const auto dd = newton_polytope(f);
  const u64 p = f.field->p();
  const int N_varpi = static_cast<int>(dd.D) * cfg.N;
  const i64 B = cfg.B >= 0 ? cfg.B : basis_for(p, N_varpi);
  const auto Mx = psi_a_matrix(f, B, cfg.M, N_varpi);
  Json r;
  r["D"] = Mx.D;
  r["B_num"] = Mx.B_num;
  r["N_varpi"] = Mx.N_varpi;
  r["certified_varpi"] = Mx.certified;
  Json basis = Json::array();
  for (const auto& u : Mx.basis) basis.push_back(to_json(u));
  r["basis"] = std::move(basis);
  // Row-wise ord_varpi of the entries (null: zero at this precision).
  Json ords = Json::array();
  for (std::size_t w = 0; w < Mx.dim(); ++w) {
    Json row = Json::array();
    for (std::size_t u = 0; u < Mx.dim(); ++u) {
      const int i = Mx.entry(w, u).first_nonzero();
      if (i < 0) row.push_back(nullptr);
      else row.push_back(i);
    }
    ords.push_back(std::move(row));
  }
  r["entry_ord_varpi"] = std::move(ords);
  const auto cs = char_series(Mx, cfg.deg_s);
  r["char_series_varpi"] = to_json(cs);
  const auto pi_t = pi_of_t(p, cfg.M, cfg.N);
  r["char_series_T"] = to_json(cs.map([&](const PowerSeries& c) { return varpi_to_t(c, Mx.certified, pi_t); }));
  return r;
}

Json cmd_verify(const LaurentPoly& f, const RunConfig& cfg) {
  Json r;
  r["what"] = cfg.what;
  if (cfg.what == "trace") {
    bool all = true;
    Json checks = Json::array();
    std::string modulus;
    for (int k = cfg.k_lo; k <= cfg.k_hi; ++k) {
      const auto t = verify_trace_formula(f, k, cfg.M, cfg.N);
      all = all && t.pass;
      if (modulus.empty()) modulus = t.modulus;
      Json j;
      j["k"] = k;
      j["pass"] = t.pass;
      j["modulus"] = t.modulus;
      checks.push_back(std::move(j));
    }
    r["pass"] = all;
    r["modulus"] = modulus;
    r["checks"] = std::move(checks);
  } else if (cfg.what == "cfun") {
    const auto dw = dwork_c_function(f, cfg.deg_s, cfg.M, cfg.N);
    const auto direct = c_function(f, cfg.deg_s, cfg.M, cfg.N);
    bool pass = true;
    for (int k = 0; k <= cfg.deg_s; ++k)
      for (int j = 0; j < cfg.N; ++j) pass = pass && dw[k].at(j) == direct[k].at(j);
    r["pass"] = pass;
    r["modulus"] = "pi^" + std::to_string(cfg.N) + ", p^" + std::to_string(cfg.M) + ", s^" +
                   std::to_string(cfg.deg_s + 1);
    r["c_function"] = to_json(direct);
  } else if (cfg.what == "interpolation") {
    bool all = true;
    Json checks = Json::array();
    for (int k = cfg.k_lo; k <= cfg.k_hi; ++k)
      for (int m : cfg.m_list) {
        const auto K = CycRing::build(f.field->p(), m, cfg.M);
        const auto lhs = specialize(s_f_T(f, k, cfg.M, cfg.N), K);
        const bool pass = lhs == s_f_psi(f, k, m, cfg.M);
        all = all && pass;
        Json j;
        j["k"] = k;
        j["m"] = m;
        j["pass"] = pass;
        checks.push_back(std::move(j));
      }
    r["pass"] = all;
    r["checks"] = std::move(checks);
  } else if (cfg.what == "facial") {
    const auto rep = facial_criterion(f, cfg.K, cfg.M);
    r["whole"] = minors_json(rep.whole);
    Json faces = Json::array();
    for (const auto& fv : rep.faces) {
      Json j;
      j["restriction"] = fv.face;
      j["minors"] = minors_json(fv.minors);
      faces.push_back(std::move(j));
    }
    r["faces"] = std::move(faces);
    Json conj = Json::array();
    for (bool b : rep.conjunction) conj.push_back(b);
    r["conjunction"] = std::move(conj);
    r["block_triangular"] = rep.block_triangular;
    bool agree = true;
    for (std::size_t k = 0; k < rep.whole.size(); ++k) agree = agree && rep.whole[k].nonzero == rep.conjunction[k];
    r["pass"] = agree;
  } else {
    throw DomainError("unknown --what '" + cfg.what + "' (trace, cfun, interpolation, facial)");
  }
  return r;
}

Json cmd_congruence(const LaurentPoly& f, const RunConfig& cfg) {
  const int m = cfg.m_list.empty() ? 1 : cfg.m_list.front();
  const auto rep = congruence_check(f, m, cfg.k_lo, cfg.k_hi, cfg.M, cfg.N, cfg.override_nondegenerate);
  Json r;
  r["m"] = rep.m;
  r["bound"] = rep.bound;
  r["attestation"] = rep.attestation;
  r["M"] = rep.M;
  r["N"] = rep.N;
  Json rows = Json::array();
  for (const auto& row : rep.rows) {
    Json j;
    j["k"] = row.k;
    j["checked"] = row.checked;
    if (row.checked) {
      j["pass"] = row.pass;
      Json rem = Json::array();
      for (auto c : row.remainder) rem.push_back(std::to_string(c));
      j["remainder"] = std::move(rem);
    }
    rows.push_back(std::move(j));
  }
  r["rows"] = std::move(rows);
  return r;
}

Json cmd_survey(const LaurentPoly& f, const RunConfig& cfg) {
  const auto rep = survey_family(f.n, f.field, f.exponents(), cfg.samples, cfg.seed, caps_of(cfg));
  Json r;
  Json samples = Json::array();
  for (const auto& s : rep.samples) {
    Json j;
    j["poly"] = s.poly;
    j["np_T"] = to_json(s.np_T);
    j["t_ordinary"] = to_string(s.t_ordinary);
    samples.push_back(std::move(j));
  }
  r["samples"] = std::move(samples);
  Json hist = Json::object();
  for (const auto& [key, count] : rep.histogram) hist[key] = count;
  r["histogram"] = std::move(hist);
  r["t_ordinary_count"] = rep.t_ordinary;
  return r;
}

Json cmd_faces(const LaurentPoly& f, const RunConfig&) {
  const auto dd = newton_polytope(f);
  Json r;
  Json all = Json::array();
  for (const auto& face : faces(dd, f)) all.push_back(face_json(face));
  r["faces"] = std::move(all);
  Json codim1 = Json::array();
  for (const auto& face : codim1_faces_no_origin(dd, f)) {
    Json j = face_json(face);
    j["restriction"] = to_string(restrict_to_face(f, face));
    codim1.push_back(std::move(j));
  }
  r["codim1_no_origin"] = std::move(codim1);
  const auto nd = is_nondegenerate(f, 2);
  Json jn;
  jn["verdict"] = to_string(nd.verdict);
  if (nd.face) jn["face"] = face_json(*nd.face);
  if (!nd.witness.empty()) {
    jn["witness_field"] = "F_" + std::to_string(nd.witness_field->p()) + "^" + std::to_string(nd.r);
    Json w = Json::array();
    for (auto x : nd.witness) w.push_back(x);
    jn["witness"] = std::move(w);
  }
  jn["note"] = nd.note;
  r["nondegeneracy"] = std::move(jn);
  const auto I = exponent_I(dd, 12);
  if (I.value) r["exponent_I"] = *I.value;
  else r["exponent_I_at_least"] = I.lower_bound;
  return r;
}

void parse_k_range(const std::string& s, RunConfig& cfg) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      cfg.k_lo = cfg.k_hi = std::stoi(s);
    } else {
      cfg.k_lo = std::stoi(s.substr(0, dots));
      cfg.k_hi = std::stoi(s.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw DomainError("bad --k '" + s + "' (expected k or lo..hi)");
  }
  if (cfg.k_lo < 1 || cfg.k_hi < cfg.k_lo) throw DomainError("bad --k range '" + s + "'");
}

}  // namespace

int parse_args(int argc, const char* const* argv, RunConfig& cfg) {
  CLI::App app{"T-adic exponential sums, L- and C-functions, Newton and Hodge polygons"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  std::string k_text = "1", poly_file;
  u64 p = 0;
  app.add_option("command", cfg.command, "hodge|sum|lfun|cfun|np|dwork|verify|congruence|survey|faces")->required();
  app.add_option("poly", cfg.poly, "Laurent polynomial, e.g. \"x1 + x2 + x1^-1*x2^-1\"");
  app.add_option("--poly-file", poly_file, "read the polynomial from a file");
  app.add_option("--p", p, "characteristic")->required();
  app.add_option("--a", cfg.a, "F_q = F_{p^a}");
  app.add_option("--n", cfg.n, "number of variables (default: largest index used)");
  app.add_option("--m", cfg.m_list, "character levels psi of order p^m");
  app.add_option("--prec-p", cfg.M, "p-adic digits M");
  app.add_option("--prec-t", cfg.N, "T-adic truncation N");
  app.add_option("--deg-s", cfg.deg_s, "s-degree of L/C series");
  app.add_option("--basis", cfg.B, "D * basis degree for dwork (default: smallest certified)");
  app.add_option("--hodge-depth", cfg.K, "Hodge depth / minor cutoff in units of 1/D");
  app.add_option("--k", k_text, "k or lo..hi");
  app.add_option("--seed", cfg.seed, "survey seed");
  app.add_option("--samples", cfg.samples, "survey sample count");
  app.add_option("--what", cfg.what, "verify target: trace|cfun|interpolation|facial");
  app.add_flag("--override-nondegenerate", cfg.override_nondegenerate, "attest nondegeneracy for congruence");
  app.add_option("--out", cfg.out, "write JSON here instead of stdout");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  cfg.p = p;
  parse_k_range(k_text, cfg);
  if (!poly_file.empty()) {
    std::ifstream in(poly_file);
    if (!in) throw DomainError("cannot read " + poly_file);
    std::stringstream ss;
    ss << in.rdbuf();
    cfg.poly = ss.str();
  }
  return -1;
}

Json run(const RunConfig& cfg) {
  if (cfg.poly.empty()) throw DomainError("no polynomial given");
  const auto field = FieldCtx::build(cfg.p, cfg.a);
  const auto f = parse_laurent(cfg.poly, field, cfg.n);

  Json doc;
  doc["command"] = cfg.command;
  Json in;
  in["poly"] = to_string(f);
  in["n"] = f.n;
  in["p"] = cfg.p;
  in["a"] = cfg.a;
  in["M"] = cfg.M;
  in["N"] = cfg.N;
  doc["input"] = std::move(in);

  const auto& c = cfg.command;
  if (c == "hodge") doc["result"] = cmd_hodge(f, cfg);
  else if (c == "sum") doc["result"] = cmd_sum(f, cfg);
  else if (c == "lfun") doc["result"] = Json{{"deg_s", cfg.deg_s}, {"L", to_json(l_function(f, cfg.deg_s, cfg.M, cfg.N))}};
  else if (c == "cfun") doc["result"] = Json{{"deg_s", cfg.deg_s}, {"C", to_json(c_function(f, cfg.deg_s, cfg.M, cfg.N))}};
  else if (c == "np") doc["result"] = cmd_np(f, cfg);
  else if (c == "dwork") doc["result"] = cmd_dwork(f, cfg);
  else if (c == "verify") doc["result"] = cmd_verify(f, cfg);
  else if (c == "congruence") doc["result"] = cmd_congruence(f, cfg);
  else if (c == "survey") doc["result"] = cmd_survey(f, cfg);
  else if (c == "faces") doc["result"] = cmd_faces(f, cfg);
  else throw DomainError("unknown command '" + c + "'");
  return doc;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const PrecisionUnderflow*>(&e)) return 2;
  if (dynamic_cast<const TheoremViolation*>(&e)) return 3;
  return 1;
}

}  // namespace tadic
