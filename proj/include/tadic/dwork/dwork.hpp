#pragma once

#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tadic/polytope/polytope.hpp"
#include "tadic/series/power_series.hpp"
#include "tadic/series/s_series.hpp"
#include "tadic/sums/sums.hpp"

namespace tadic {

using BigRational = boost::multiprecision::cpp_rational;

/// Coefficients e_0 .. e_{N-1} of E(pi) = exp(sum_i pi^{p^i} / p^i), exact,
/// from k e_k = sum_{p^i <= k} e_{k - p^i}. Each is checked p-integral.
std::vector<BigRational> artin_hasse(u64 p, int N);

/// E(pi) mod (p^M, pi^N) as a series in pi.
PowerSeries artin_hasse_series(u64 p, int M, int N);

/// pi as a series in T with E(pi(T)) = 1 + T, mod (p^M, T^N). The round trip
/// is asserted.
PowerSeries pi_of_t(u64 p, int M, int N);

/// E_f(x) = prod_u E(pi a^_u x^u) (coefficients twisted by sigma^twist) as
/// x^v -> series in pi, mod (p^M, pi^N_pi).
std::map<Point, PowerSeries> e_f_raw(const LaurentPoly& f, const ZqPtr& ring, int N_pi, int twist = 0);

/// alpha_v(f) with E_f = sum alpha_v pi^{deg v} x^v, as series in
/// varpi = pi^{1/D} truncated at varpi^{N_varpi}, for v of degree <= B_num/D.
std::map<Point, PowerSeries> e_f_expansion(const LaurentPoly& f, i64 B_num, int M, int N_varpi);

/// The operator psi^a on the basis pi^{deg u} x^u, deg u <= B_num/D, with
/// entries in Z_q[[varpi]] mod (p^M, varpi^{N_varpi}).
struct DworkMatrix {
  u64 p = 0;
  int a = 1;
  i64 D = 1;
  i64 B_num = 0;
  int N_varpi = 0;
  int M = 0;
  std::vector<Point> basis;
  std::vector<i64> basis_deg;  // D deg u
  std::vector<PowerSeries> entries;  // row-major: entry(w, u)
  /// Coefficients of char_series and traces are certified below varpi^certified.
  int certified = 0;

  std::size_t dim() const { return basis.size(); }
  const PowerSeries& entry(std::size_t w, std::size_t u) const { return entries[w * dim() + u]; }
};

/// Needs (p - 1)(B_num + 1) >= N_varpi and a in {1, 2}.
DworkMatrix psi_a_matrix(const LaurentPoly& f, i64 B_num, int M, int N_varpi);

/// Smallest basis degree for a requested varpi-precision.
i64 basis_for(u64 p, int N_varpi);

/// det(1 - Mx s) mod s^{deg_s + 1}, division free.
SSeries<PowerSeries> char_series(const DworkMatrix& Mx, int deg_s);

/// Tr(Mx^k).
PowerSeries trace_power(const DworkMatrix& Mx, int k);

/// A varpi-series that lies in Z_p[[pi]] rewritten as a T-series through
/// pi(T); only the first `certified` varpi-coefficients are used.
PowerSeries varpi_to_t(const PowerSeries& s, int certified, const PowerSeries& pi_t);

/// C_f(s, T) mod (p^M, T^{N_T}, s^{deg_s+1}) through the operator.
TSSeries dwork_c_function(const LaurentPoly& f, int deg_s, int M, int N_T);

struct TraceCheck {
  int k = 0;
  bool pass = false;
  int t_trunc = 0;  // compared mod T^t_trunc
  int M = 0;
  std::string modulus;  // T^N is pi^N up to a unit
};

/// Tr(psi^{ak}) against (q^k - 1)^{-n} S_f(k, T).
TraceCheck verify_trace_formula(const LaurentPoly& f, int k, int M, int N_T);

struct MinorVerdict {
  i64 k = 0;  // basis points of degree <= k/D
  std::size_t size = 0;
  bool nonzero = false;  // certified: det mod varpi is nonzero mod p^M
  int valuation = 0;  // ord_p of that constant term (M when it vanishes)
};

/// Leading degree-block minors of (alpha_{pw-u}(f) pi^{c(pw-u,u)}) mod
/// varpi, k = 0..K in units of 1/D where D is `grid_D` (default: Delta's).
std::vector<MinorVerdict> ordinariness_determinants(const LaurentPoly& f, i64 K, int M, i64 grid_D = 0);

struct FaceVerdicts {
  std::string face;
  std::vector<MinorVerdict> minors;
};

struct FacialReport {
  std::vector<MinorVerdict> whole;
  std::vector<FaceVerdicts> faces;
  /// Per k: all facets nonzero.
  std::vector<bool> conjunction;
  /// Block triangularity mod varpi held on the assembled matrix.
  bool block_triangular = false;
};

/// Per closed codimension-1 face avoiding the origin. The whole-Delta and
/// facial verdicts are cross-asserted.
FacialReport facial_criterion(const LaurentPoly& f, i64 K, int M);

}  // namespace tadic
