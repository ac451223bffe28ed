#pragma once

// Complex special functions and Riemann zeta machinery: Euler-Maclaurin
// evaluation of zeta and its derivatives, the functional-equation factor
// chi(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s), Hardy's Z(t) with the
// Riemann-Siegel theta function, critical-line zero location certified by
// the argument principle, Stieltjes constants, the Barnes G-function at
// integers, a Bessel-kernel building block, and the prime zeta function.

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lfr/errors.hpp"
#include "lfr/types.hpp"

namespace lfr::specfun {

using bigint = boost::multiprecision::cpp_int;

// --- zeta -------------------------------------------------------------

// zeta(s), s != 1.  Euler-Maclaurin with N ~ max(base_terms, t_factor*|Im s|)
// main terms and Bernoulli corrections up to plan.bernoulli_order.
cplx zeta(cplx s, const ZetaEvalPlan& plan = {});

// m-th derivative by Cauchy integration on a circle of radius
// min(plan.derivative_radius, |s-1|/2) around s.
cplx zeta_derivative(cplx s, int m, const ZetaEvalPlan& plan = {});

// zeta^(order)(s) for order in {0,1,2}.
cplx zeta_family(cplx s, int order, const ZetaEvalPlan& plan = {});

// zeta'/zeta(s); requires zeta(s) != 0 within tolerance.
cplx zeta_logderiv(cplx s, const ZetaEvalPlan& plan = {});

// Stable evaluators around the pole: zeta(1+w), zeta'(1+w)/zeta(1+w),
// (zeta'/zeta)'(1+w) and the symmetric product zeta(1+w)zeta(1-w).  For
// |w| < 0.05 these switch to the Laurent expansion in Stieltjes constants,
// which avoids the cancellation a direct evaluation suffers.
cplx zeta_1p(cplx w, const ZetaEvalPlan& plan = {});
cplx zeta_recip_1p(cplx w, const ZetaEvalPlan& plan = {});  // 1/zeta(1+w); 0 at w=0
cplx zeta_logderiv_1p(cplx w, const ZetaEvalPlan& plan = {});
cplx zeta_logderiv_prime_1p(cplx w, const ZetaEvalPlan& plan = {});
cplx zeta_d2_over_zeta_1p(cplx w, const ZetaEvalPlan& plan = {});  // zeta''/zeta(1+w)
cplx zeta_sym_product(cplx w, const ZetaEvalPlan& plan = {});  // zeta(1+w) zeta(1-w)

// --- gamma family -------------------------------------------------------

enum class GammaKind { log_gamma, digamma };

cplx log_gamma(cplx z);  // principal branch
cplx digamma(cplx z);
cplx gamma_family(cplx s, GammaKind kind);

// --- functional equation factor ------------------------------------------

// chi(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s), or chi'/chi(s).
// Both are computed through log Gamma / digamma, never the asymptotic form.
cplx chi_factor(cplx s, bool log_deriv = false);
cplx log_chi(cplx s);

// --- Hardy Z and zeros ----------------------------------------------------

double riemann_siegel_theta(double t);

// Z(t) = e^{i theta(t)} zeta(1/2+it), real for real t.  Full accuracy
// (rotated Euler-Maclaurin).
double hardy_Z(double t, const ZetaEvalPlan& plan = {});

// Riemann-Siegel main sum plus the first correction term; absolute error
// O(t^{-5/4}).  Used for scanning and integrals of |zeta|^2k; below t = 40
// it falls back to the accurate path.
double hardy_Z_fast(double t);

struct ZeroSearchOptions {
  double refine_tol = 1e-9;
  double step_fraction = 0.2;  // fraction of the mean gap 2*pi/log(t/2*pi)
  int max_halvings = 4;
  ZetaEvalPlan plan{};
};

// All critical-line ordinates in (t0, t1], refined to refine_tol and
// count-checked against the argument principle.  Throws on count mismatch
// after max_halvings step reductions.
std::vector<double> find_zeros(double t0, double t1, const ZeroSearchOptions& opts = {});

// N(T): number of zeros with 0 < gamma <= T, by Backlund's method
// (theta(T)/pi + 1 + S(T) with S tracked along 2 -> 2+iT -> 1/2+iT).
long long zero_count(double T, const ZetaEvalPlan& plan = {});

// --- Stieltjes constants --------------------------------------------------

// gamma_n in zeta(1+s) = 1/s + sum_n (-1)^n gamma_n s^n / n!, for 0 <= n <= 4.
double stieltjes(int n);

// --- Barnes G --------------------------------------------------------------

// G(n) for integer n >= 1 via G(z+1) = Gamma(z) G(z), G(1) = 1.  Exact.
bigint barnes_g_int(int n);

// --- Bessel kernel ----------------------------------------------------------

// F_k(X) = (pi/2) (x J_{k+1/2}(x)^2 + x J_{k-1/2}(x)^2
//                  - 2k J_{k+1/2}(x) J_{k-1/2}(x)),  x = X/2.
// Half-integer Bessel via trigonometric closed forms for k <= 3, series
// otherwise.  F_1(2x) = 1 - (sin x / x)^2.
double bessel_F(int k, double X);

double bessel_j_half_integer(int k, double x);  // J_{k+1/2}(x), k >= -1

// --- prime zeta --------------------------------------------------------------

// P(s) = sum_p p^{-s} via Moebius inversion of log zeta; Re s > 1.
cplx prime_zeta(cplx s, const ZetaEvalPlan& plan = {});
// P'(s) = -sum_p log p * p^{-s}  and  P''(s) = sum_p log^2 p * p^{-s}.
cplx prime_zeta_d1(cplx s, const ZetaEvalPlan& plan = {});
cplx prime_zeta_d2(cplx s, const ZetaEvalPlan& plan = {});

}  // namespace lfr::specfun
