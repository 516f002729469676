#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tadic/arith/cyclotomic.hpp"
#include "tadic/polytope/polytope.hpp"
#include "tadic/series/polygon.hpp"
#include "tadic/series/power_series.hpp"
#include "tadic/series/s_series.hpp"

namespace tadic {

using TSSeries = SSeries<PowerSeries>;
using CycSSeries = SSeries<CycElem>;

/// Largest torus (q^k - 1)^n the direct path will enumerate.
constexpr u64 kMaxTorusPoints = 50'000'000;

/// trace(f(x^)) mod p^{M_in} -> number of x in (F_{q^k}^*)^n with that trace.
std::map<u64, u64> trace_histogram(const LaurentPoly& f, int k, int M_in);

/// S_f(k, T) mod (p^M, T^N).
PowerSeries s_f_T(const LaurentPoly& f, int k, int M, int N);
/// S_{f,psi}(k) for psi of order p^m, mod p^M.
CycElem s_f_psi(const LaurentPoly& f, int k, int m, int M);

/// L_f(s, T) and C_f(s, T) mod (p^M, T^N, s^{deg_s + 1}).
TSSeries l_function(const LaurentPoly& f, int deg_s, int M, int N);
TSSeries c_function(const LaurentPoly& f, int deg_s, int M, int N);
/// L_f(s, T) as a product over closed points of the torus.
TSSeries l_function_euler(const LaurentPoly& f, int deg_s, int M, int N);

/// The same functions at T = pi_psi, from the classical sums.
CycSSeries l_function_psi(const LaurentPoly& f, int deg_s, int m, int M);
CycSSeries c_function_psi(const LaurentPoly& f, int deg_s, int m, int M);

/// L = prod_i C(q^i s)^{(-1)^{n-i-1} binom(n, i)} and
/// C^{(-1)^{n-1}} = prod_{j < ceil(M/a)} L(q^j s)^{binom(n+j-1, j)}.
enum class Direction { c_to_l, l_to_c };

template <class C>
SSeries<C> convert_l_c(const SSeries<C>& F, int n, int a, int precision, Direction dir) {
  if (n < 1 || a < 1) throw DomainError("conversion needs n, a >= 1");
  SSeries<C> out = SSeries<C>::one(F[0], F.degree());
  if (dir == Direction::c_to_l) {
    long binom = 1;
    for (int i = 0; i <= n; ++i) {
      if (i > 0) binom = binom * (n - i + 1) / i;
      const long sign = ((n - i - 1) % 2 == 0) ? 1 : -1;
      out = out * F.scale_s(a * i).pow(sign * binom);
    }
    return out;
  }
  const int J = (precision + a - 1) / a;
  long binom = 1;
  for (int j = 0; j < J; ++j) {
    if (j > 0) binom = binom * (n + j - 1) / j;
    out = out * F.scale_s(a * j).pow(binom);
  }
  return n % 2 == 1 ? out : out.inverse();
}

/// T -> pi_psi coefficientwise (needs N >= e M).
CycSSeries specialize_series(const TSSeries& F, const CycPtr& ring);

/// ord_T of each coefficient of F mod p^M. A nonzero coefficient's first
/// nonzero index bounds the true order from above; a coefficient vanishing
/// mod (p^M, T^N) is reported as "at least N".
std::vector<Valuation> t_adic_vals(const TSSeries& F);
std::vector<Valuation> cyc_vals(const CycSSeries& F);

/// HP_q deep enough to cover [0, width], with the slope that continues it.
TailBound hodge_tail(const DegreeData& dd, u64 p, int a, i64 width);

enum class Flag { yes, no, uncertified };
std::string to_string(Flag f);

struct FlagOn {
  Flag value = Flag::uncertified;
  /// The verdict holds for the polygons over [0, upto].
  Rational upto{0};
};

struct PsiReport {
  int m = 1;
  NewtonPolygon np;
  FlagOn ordinary;
  FlagOn rigid;
};

struct NPReport {
  NewtonPolygon np_T;
  NewtonPolygon hp_q;
  NewtonPolygon hp_absolute;
  std::vector<PsiReport> psi;
  FlagOn t_ordinary;
};

struct Caps {
  int M = 8;
  int N = 24;
  int deg_s = 4;
};

/// Polygons with certified prefixes and the flags they support. The chain
/// NP_psi >= NP_T >= HP_q is asserted (TheoremViolation otherwise).
NPReport np_report(const LaurentPoly& f, const std::vector<int>& m_list, const Caps& caps);

/// NP_T against HP_q only (no character sums).
NPReport np_T_report(const LaurentPoly& f, const Caps& caps);

struct CongruenceRow {
  int k = 0;
  bool checked = false;
  bool pass = false;
  /// Remainder of L_{f,k}(T) mod ((1+T)^{p^m} - 1)/T, low degree first.
  std::vector<u64> remainder;
};

struct CongruenceReport {
  int m = 1;
  i64 bound = 0;
  std::string attestation;
  int M = 0;
  int N = 0;
  std::vector<CongruenceRow> rows;
};

/// ((1+T)^{p^m} - 1)/T mod p^M, low degree first.
std::vector<u64> congruence_modulus(u64 p, int m, const ResidueRing& R);

/// Checks the congruence for k in [k_lo, k_hi]; k at or below
/// n! Vol p^{n(m-1)} is skipped. Needs N >= (p^m - 1) M so the remainder is
/// determined mod p^M. A nondegeneracy verdict other than "nondegenerate"
/// requires `override_nondegenerate`.
CongruenceReport congruence_check(const LaurentPoly& f, int m, int k_lo, int k_hi, int M, int N,
                                  bool override_nondegenerate, int r_max = 2);

struct SurveySample {
  std::string poly;
  NewtonPolygon np_T;
  Flag t_ordinary = Flag::uncertified;
};

struct SurveyReport {
  std::vector<SurveySample> samples;
  /// Polygon (rendered as its vertex list) -> count.
  std::map<std::string, int> histogram;
  int t_ordinary = 0;
};

/// Coefficients drawn uniformly from F_q^* by mt19937_64(seed) on a fixed
/// exponent support.
SurveyReport survey_family(int n, const FieldPtr& field, const std::vector<Point>& support, int samples, u64 seed,
                           const Caps& caps);

std::string polygon_key(const NewtonPolygon& P);

}  // namespace tadic
