#pragma once

// Exact-rational polynomial calculus and the mollified-moment closed forms:
// second moments in the three symmetry families, the fourth-moment
// mollifications (diagonal and four-mollifier split over the polytope R),
// the mixed third-power moment, non-vanishing ratios and their optimizer,
// plus a numerical integrator that cross-checks the unitary closed form
// against zeta on the critical line.

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lfr/errors.hpp"
#include "lfr/types.hpp"

namespace lfr::mollify {

using rat = boost::multiprecision::cpp_rational;

inline constexpr int kMaxDegree = 64;

// Univariate polynomial with exact rational coefficients, ascending order,
// canonical (no trailing zeros).
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<rat> coeffs);
  static Polynomial monomial(int degree, const rat& coeff = 1);
  static Polynomial constant(const rat& c) { return monomial(0, c); }

  int degree() const { return (int)c_.size() - 1; }  // -1 for the zero polynomial
  bool is_zero() const { return c_.empty(); }
  const std::vector<rat>& coeffs() const { return c_; }
  rat coeff(int i) const { return i >= 0 && i < (int)c_.size() ? c_[i] : rat(0); }

  Polynomial derivative() const;
  Polynomial derivative(int order) const;
  Polynomial antiderivative() const;  // constant term 0
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const rat& c) const;

  rat operator()(const rat& x) const;
  double operator()(double x) const;
  rat integrate01() const;
  // P(a x + b)
  Polynomial compose_linear(const rat& a, const rat& b) const;
  Polynomial shift_compose(const rat& c) const { return compose_linear(1, c); }

  bool is_even() const;
  int vanishing_order() const;  // number of leading zero coefficients at 0

  bool operator==(const Polynomial& o) const { return c_ == o.c_; }

private:
  void canonicalize();
  std::vector<rat> c_;
};

// Exact rational function of theta of the form sum_j c_j theta^{-j}.
struct ThetaExpansion {
  std::vector<rat> inv_theta_coeffs;  // [j] multiplies theta^{-j}
  rat eval(const rat& theta) const;
  double eval_double(double theta) const;
};

// --- closed forms ----------------------------------------------------------

// Unitary second moment: P1(1)P2(1)Q1(0)Q2(0)
//   + (1/theta) int int (P1'Q1 + theta P1 Q1')(P2'Q2 + theta P2 Q2') dr du.
rat unitary_mollified(const Polynomial& P1, const Polynomial& P2, const Polynomial& Q1,
                      const Polynomial& Q2, const rat& theta);

// Symplectic second moment (even Q, P vanishing to order 2), compact form.
rat symplectic_mollified(const Polynomial& P1, const Polynomial& P2, const Polynomial& Q1,
                         const Polynomial& Q2, const rat& theta);
// The six-term hyperbolic pre-form evaluated at a = b = 0 (equals 4x the
// compact form with Q1 = Q2 = 1); kept as an independent cross-check route.
rat symplectic_sixterm_at_zero(const Polynomial& P1, const Polynomial& P2, const rat& theta);

enum class OrthogonalVariant { paper, kmv };
rat orthogonal_mollified(const Polynomial& P1, const Polynomial& P2, const Polynomial& Q1,
                         const Polynomial& Q2, const rat& theta,
                         OrthogonalVariant variant = OrthogonalVariant::paper);
rat orthogonal_mollified_kmv(const Polynomial& P, const Polynomial& Q, const rat& theta);

// Fourth-moment mollification, diagonal mollifier (P, Q vanish to order 4).
// Returned as exact coefficients of theta^0 .. theta^-4.
ThetaExpansion fourth_mollified_diag(const Polynomial& Q, const Polynomial& P);

// Four-mollifier fourth moment (all vanish to order 2): the eightfold
// derivative of the polytope integral against the determinant kernel.
ThetaExpansion fourth_mollified_split(const Polynomial& P1, const Polynomial& P2,
                                      const Polynomial& Q1, const Polynomial& Q2);

// Mixed third-power moment; P1, P2 vanish to order 2, theta1 >= theta2 > 0.
rat i3_mixed(const Polynomial& P1, const Polynomial& P2, const rat& theta1, const rat& theta2);

// --- non-vanishing ratios -----------------------------------------------------

rat nonvanishing_ratio(const Polynomial& P, const rat& theta, int k);
rat nonvanishing_ratio_two_piece(const Polynomial& P, const rat& theta, const rat& a);

struct PolyOptimum {
  Polynomial P;     // P(0)=0, P(1)=1
  rat ratio;        // exact
  rat min_form;     // minimized quadratic form value
};
// Maximizes the non-vanishing ratio over polynomials of degree <= degree_cap
// with P(0)=0, P(1)=1 (exact generalized Rayleigh solve on the denominator
// form; the numerator is rank one so this is a linear system).
PolyOptimum optimize_nonvanishing_poly(const rat& theta, int k, int degree_cap);

struct SinhOptimum {
  double lambda;
  double ratio;
  Polynomial taylor;  // truncated series of sinh(lambda x)/sinh(lambda)
};
SinhOptimum optimize_nonvanishing_sinh(double theta, int k, int taylor_terms = 12);

// --- empirical cross-check -----------------------------------------------------

// (1/T) int_0^T of the Q-differentiated critical-line product
// zeta(s+a) zeta(1-s+b) M(s,P1) M(1-s,P2) at a=b=0, with M the
// Moebius-weighted mollifier of length y = T^theta.  Direct quadrature.
double empirical_mollified_moment(const Polynomial& P1, const Polynomial& P2,
                                  const Polynomial& Q1, const Polynomial& Q2, double theta,
                                  double T);

// --- polytope helpers (exposed for verification) --------------------------------

// Exact volume of R = {eta in [-1,1]^4 : eta1+eta2, eta3+eta4, eta1+eta3,
// eta2+eta4 >= 0} via the same cell decomposition the split moment uses.
rat r_region_volume();
double r_region_volume_mc(int64_t samples, uint64_t seed);

// Numeric determinant kernel; u must have 2k entries.
double iv_determinant(int k, double theta, const std::vector<double>& u);
// Exact variant used by the symbolic route.
rat iv_determinant_exact(int k, const rat& theta, const std::vector<rat>& u);

}  // namespace lfr::mollify
