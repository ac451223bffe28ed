#pragma once

#include <complex>
#include <cstdint>

namespace lfr {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

// Shifts with real part at or beyond 1/4 make the arithmetic Euler products
// diverge; every evaluator rejects them up front.
inline constexpr double shift_box_halfwidth = 0.25;

// Controls for zeta evaluation: Euler-Maclaurin length N ~ max(base_terms,
// t_factor*|Im s|), Bernoulli correction order, and the Cauchy circle used
// for derivatives.
struct ZetaEvalPlan {
  int base_terms = 20;
  double t_factor = 2.0;
  int bernoulli_order = 12;   // even; uses B_2..B_order
  double derivative_radius = 0.25;
  int circle_nodes = 64;
  int precision_bits = 53;    // 53 = double, >53 switches to long double internals
  double target_abs_tol = 1e-12;
};

// Truncation controls shared by every prime product / prime sum.
struct EulerProductConfig {
  long long prime_cutoff = 100000;
  int tail_order = 2;       // number of prime-zeta tail terms retained
  double abs_tol = 1e-10;
};

}  // namespace lfr
