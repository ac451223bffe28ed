#pragma once

// Arithmetic factors: Moebius-type coefficient tables, Ramanujan tau,
// symmetric-square L-values, and the shared truncated-Euler-product engine
// with prime-zeta tail control.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lfr/errors.hpp"
#include "lfr/types.hpp"

namespace lfr::arith {

using bigint = boost::multiprecision::cpp_int;
using int128 = __int128;

// Primes up to n, memoized process-wide.
std::span<const int64_t> primes_up_to(int64_t n);

// --- Ramanujan tau -----------------------------------------------------------

// tau(n) for n <= n_max, exact, from the q-expansion of
// Delta = q prod (1-q^n)^24 computed as the eighth power of the sparse
// eta^3 series (Jacobi).  n_max capped at 10^6 so every coefficient fits in
// a signed 128-bit integer by the Deligne bound.
class TauTable {
public:
  static TauTable build(int64_t n_max);

  int64_t n_max() const { return n_max_; }
  bigint value(int64_t n) const;           // tau(n), exact
  double star(int64_t n) const;            // tau(n)/n^{11/2}
  double star_p2(int64_t p) const;         // tau*(p^2) = tau*(p)^2 - 1 (Hecke)

  void save(const std::filesystem::path& file) const;
  static TauTable load(const std::filesystem::path& file);

private:
  int64_t n_max_ = 0;
  std::vector<int128> tau_;      // tau_[n-1] = tau(n)
  std::vector<double> star_;
};

// --- Moebius-type coefficient tables -------------------------------------------

enum class CoeffKind { moebius, moebius_k, moebius_delta };

// mu(n), the k-fold Dirichlet convolution mu_k(n) (coefficients of
// 1/zeta(s)^k), or mu_Delta(n) (coefficients of 1/L_Delta(s)).
class CoefficientTable {
public:
  static CoefficientTable build(CoeffKind kind, int64_t n_max, int k = 1,
                                const TauTable* tau = nullptr);

  CoeffKind kind() const { return kind_; }
  int64_t n_max() const { return n_max_; }
  long long ivalue(int64_t n) const;  // moebius / moebius_k
  double dvalue(int64_t n) const;     // moebius_delta (real-valued)

private:
  CoeffKind kind_ = CoeffKind::moebius;
  int k_ = 1;
  int64_t n_max_ = 0;
  std::vector<long long> ivalues_;
  std::vector<double> dvalues_;
};

// --- Euler product engine --------------------------------------------------------

// One appended tail term: coeff * sum_{p > cutoff} p^{-exponent} added to
// log of the product (weight: 1, log p, or log^2 p).
struct TailTerm {
  cplx coeff;
  cplx exponent;
  int log_weight = 0;  // 0, 1, or 2
};

struct EulerProductResult {
  cplx value;
  cplx tail_log;             // tail correction applied to the log
  double residual_estimate;  // |last dyadic block| of the log sum
  long long primes_used;
};

// prod_{p <= cutoff} factor(p) * exp(tail).  With no explicit tail terms the
// leading coefficient c/p^sigma of log factor is estimated from the largest
// primes and a single prime-zeta tail appended; sigma <= 1 raises Divergent.
EulerProductResult euler_product(const std::function<cplx(int64_t)>& factor,
                                 const EulerProductConfig& cfg);
EulerProductResult euler_product_tailed(const std::function<cplx(int64_t)>& factor,
                                        const EulerProductConfig& cfg,
                                        std::span<const TailTerm> tails);

// sum_{p <= cutoff} term(p) + prime-zeta tails
cplx prime_sum_tailed(const std::function<cplx(int64_t)>& term, const EulerProductConfig& cfg,
                      std::span<const TailTerm> tails);

// --- named arithmetic factors ------------------------------------------------------

void require_shift_box(std::initializer_list<cplx> shifts);  // |Re| < 1/4 each

// Arithmetic factor of the two-over-two zeta ratio average.
cplx a_zeta(cplx alpha, cplx beta, cplx gamma, cplx delta, const EulerProductConfig& cfg);

// Quadratic-Dirichlet-family factor A_D(alpha; gamma), its reflected and
// diagonal-derivative specializations.
enum class ADKind { diag, reflected, diag_deriv };
cplx a_d_general(cplx alpha, cplx gamma, const EulerProductConfig& cfg);
cplx a_d_family(cplx r, ADKind which, const EulerProductConfig& cfg);

// Quadratic-twist (tau) family factor B_Delta(alpha; gamma) and its
// derivative along alpha on the diagonal.
cplx b_delta(cplx alpha, cplx gamma, const EulerProductConfig& cfg, const TauTable& tau);
cplx b_delta_diag_deriv(cplx r, const EulerProductConfig& cfg, const TauTable& tau);

// Symmetric-square L-function of Delta evaluated at 1 + s_offset
// (Euler-product mode; Re(1+s_offset) > 1/2), plus d/ds at the same point.
struct Sym2Result {
  cplx value;
  cplx deriv;
};
Sym2Result sym2_L(cplx s_offset, const EulerProductConfig& cfg, const TauTable& tau);
cplx sym2_L_value(cplx s_offset, const EulerProductConfig& cfg, const TauTable& tau);

// Dirichlet-series route zeta(2s)^{-1} sum tau*(n^2)/n^s restricted to
// cutoff-smooth n equals the truncated Euler product exactly; the plain
// partial sum is also exposed for the (slowly converging) full series.
cplx sym2_dirichlet_partial(cplx s_at, int64_t n_terms, const TauTable& tau);

// Pair-correlation factors A(eta) (product) and B(eta) (prime sum).
enum class PairKind { A, B };
cplx pair_AB(cplx eta, PairKind which, const EulerProductConfig& cfg);

// a(k) = prod_p (1-1/p)^{k^2} sum_m binom(m+k-1, m)^2 p^{-m}.
double a_k_arithmetic(int k, const EulerProductConfig& cfg);

}  // namespace lfr::arith
