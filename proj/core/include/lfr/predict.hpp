#pragma once

// Conjectural statistics with their lower-order terms: shifted-ratio
// integrands and averages for the three symmetry types, their
// logarithmic-derivative forms, one-level densities over the quadratic
// families, the pair correlation of zeta zeros, discrete moments of zeta
// and its derivative at zeros, and the full fourth-moment polynomial.

#include <array>
#include <vector>

#include "lfr/arith.hpp"
#include "lfr/report.hpp"
#include "lfr/types.hpp"
#include "lfr/zerolab.hpp"

namespace lfr::predict {

// Shared evaluation context: prime-product truncation, zeta plan, and the
// tau table the orthogonal family needs.
struct Context {
  EulerProductConfig euler{};
  ZetaEvalPlan plan{};
  const arith::TauTable* tau = nullptr;

  const arith::TauTable& require_tau() const {
    if (!tau) throw_data("prediction: this statistic needs a tau table in the context");
    return *tau;
  }
};

enum class Family { symplectic, orthogonal };

// --- families of discriminants ----------------------------------------------------

// Positive fundamental discriminants (even real primitive characters) up to X.
struct DiscriminantFamily {
  double X = 0.0;
  std::vector<int64_t> d;
  static DiscriminantFamily build(double X);
  size_t size() const { return d.size(); }  // X*
};

// --- unitary ratios -----------------------------------------------------------------

struct UnitaryShifts {
  cplx alpha, beta, gamma, delta;
};

// Integrand of the averaged ratio of two shifted zetas over two: main term
// plus the (t/2pi)^{-alpha-beta} swapped term.
cplx ratio_unitary_integrand(const UnitaryShifts& s, double t, const Context& ctx);
// Integral over [0, T), exact in t (the only t-dependence is a power).
PredictionReport ratio_unitary_integrated(const UnitaryShifts& s, double T, const Context& ctx);

// (zeta'/zeta)'(1+a+b) + (t/2pi)^{-a-b} zeta(1+a+b) zeta(1-a-b) A(a+b) - B(a+b).
cplx ratio_logderiv_unitary(cplx alpha, cplx beta, double t, const Context& ctx);

// --- symplectic / orthogonal ratios ----------------------------------------------------

// Per-discriminant summand of the one-over-one ratio average.
cplx ratio_symplectic(cplx alpha, cplx gamma, double d, const Context& ctx);
cplx ratio_logderiv_symplectic(cplx r, double d, const Context& ctx);
cplx ratio_orthogonal(cplx alpha, cplx gamma, double d, const Context& ctx);
cplx ratio_logderiv_orthogonal(cplx r, double d, const Context& ctx);

// Leading-order two-over-two ratio average (rational function with X powers).
cplx ratio_two_over_two(Family family, cplx alpha, cplx beta, cplx gamma, cplx delta,
                        double X);

// --- one-level density -------------------------------------------------------------------

struct OneLevelOptions {
  double panel_width = 0.1;
  double t_floor = 1e-4;     // below this the integrand comes from even extrapolation
  int smooth_grid = 24;      // coarse grid for the slowly varying prime factors
};

PredictionReport one_level_density(Family family, const zerolab::TestFunction& f, double X,
                                   const Context& ctx, const OneLevelOptions& opts = {});
// (1/X*) sum_d sum_gamma g(gamma log X / 2 pi); limit kernel 1 -+ sin(2 pi x)/(2 pi x).
double one_level_scaled(Family family, const zerolab::TestFunction& g, double X,
                        const Context& ctx, const OneLevelOptions& opts = {});

// --- pair correlation ---------------------------------------------------------------------

struct PairCorrelationOptions {
  double r_floor = 1e-3;     // principal-value exclusion radius
  double panel_width = 0.1;  // inner grid panel width
  bool include_oscillatory = true;
};

PredictionReport pair_correlation_prediction(const zerolab::TestFunction& f, double T,
                                             const Context& ctx,
                                             const PairCorrelationOptions& opts = {});
// (2 pi / (T log(T/2pi))) * prediction with f(x) = g(x log(T/2pi) / 2 pi);
// tends to g(0) + int g(y)(1 - (sin pi y/pi y)^2) dy.
double pair_correlation_scaled(const zerolab::TestFunction& g, double T, const Context& ctx,
                               const PairCorrelationOptions& opts = {});

// --- discrete moments ----------------------------------------------------------------------

// sum_{gamma < T} |zeta'(rho)|^2: quartic polynomial in log(t/2pi) integrated.
PredictionReport moment2_zetaprime(double T);
// ascending coefficients c_0..c_4 of the integrand polynomial in log(t/2pi)
std::array<double, 5> moment2_zetaprime_coeffs();

// sum_{gamma < T} |zeta'(rho)|^4: the three known leading terms; the log^6
// and lower coefficients are undetermined and reported as an error budget.
PredictionReport moment4_zetaprime(double T, const Context& ctx);
std::array<double, 3> moment4_zetaprime_leading_coeffs(const Context& ctx);  // log^9, log^8, log^7

// sum_{0<gamma<T} |zeta(rho+a)|^2, a != 0 off the pole.
PredictionReport moment2_shifted(double T, cplx a, const Context& ctx);

// Scaled form at a = 2 pi i alpha / log(T/2pi): the three displayed
// coefficient groups of (T/2pi)(c2 L^2 + c1 L + c0).
struct ScaledShiftedMoment {
  double c2, c1, c0;
  double value(double T) const;
};
ScaledShiftedMoment moment2_shifted_scaled(double alpha);

// (T/2pi) (G^2(k+2)/G(2k+3)) a(k) (log T)^{k(k+2)+1}, k in {1,2,3}.
double hko_leading(int k, double T, const Context& ctx);
double hko_leading_coefficient(int k, const Context& ctx);  // without T (log T)^...

// (1/T) int_0^T |zeta(1/2+it)|^4 dt as the full quartic polynomial in
// log(t/2pi); report carries both the averaged total and the raw integral.
PredictionReport fourth_moment_zeta(double T, const Context& ctx);
std::array<double, 5> fourth_moment_zeta_coeffs(const Context& ctx);  // ascending in log

// zeta derivative values at 2 used by the fourth-moment polynomial (cached).
std::array<double, 4> zeta_derivatives_at_2(const Context& ctx);  // zeta', zeta'', zeta''', zeta''''

// Determinant kernel of the mollified k-th moment (numeric evaluation).
double iv_determinant(int k, double theta, const std::vector<double>& u);

}  // namespace lfr::predict
