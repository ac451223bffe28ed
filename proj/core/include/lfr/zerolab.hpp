#pragma once

// Zeta-zero acquisition (compute or ingest), a human-auditable text cache,
// admissible test functions, and the empirical side of the statistics:
// pair sums and discrete moments over zeros.

#include <filesystem>
#include <vector>

#include "lfr/errors.hpp"
#include "lfr/specfun.hpp"
#include "lfr/types.hpp"

namespace lfr::zerolab {

enum class ZeroSource { computed, imported };

// Ascending positive ordinates up to a certified height T.
class ZeroSet {
public:
  static ZeroSet make(std::vector<double> ordinates, double T, ZeroSource source,
                      double refinement_tol);

  const std::vector<double>& ordinates() const { return ordinates_; }
  double height() const { return height_; }
  ZeroSource source() const { return source_; }
  double refinement_tol() const { return refinement_tol_; }
  size_t size() const { return ordinates_.size(); }

  // The sub-set of ordinates <= T (certified height clamped accordingly).
  ZeroSet prefix(double T) const;

private:
  std::vector<double> ordinates_;
  double height_ = 0.0;
  ZeroSource source_ = ZeroSource::computed;
  double refinement_tol_ = 1e-9;
};

// Plain text, one decimal ordinate per line, '#' comments allowed, ascending.
ZeroSet import_zeros(const std::filesystem::path& path);

// Cached zero computation: returns a cached set if a file of sufficient
// height exists under cache_dir/zeros/, else computes through find_zeros and
// persists (single writer via a lock file).  T <= 10^4.
ZeroSet ensure_zeros(double T, const std::filesystem::path& cache_dir,
                     const specfun::ZeroSearchOptions& opts = {});

// --- test functions -------------------------------------------------------------

enum class TestFunctionKind { gaussian, fejer, rational };

// Even, real-on-the-real-line test function, holomorphic in |Im z| < 2 with
// f(x) = O(1/(1+x^2)); construction rejects anything else.
class TestFunction {
public:
  static TestFunction gaussian(double scale = 1.0);  // exp(-(scale x)^2)
  static TestFunction fejer();                       // (sin pi x / pi x)^2
  // num(x)/den(x) with rational coefficients given low-degree first; poles
  // must avoid the strip and deg den >= deg num + 2.
  static TestFunction rational(std::vector<double> num, std::vector<double> den);

  double operator()(double x) const;
  cplx operator()(cplx z) const;

  TestFunctionKind kind() const { return kind_; }
  double strip_halfwidth() const { return 2.0; }
  // f(c x): the scaled statistics feed g(t log X / 2 pi) through this.
  TestFunction with_argument_scale(double c) const;
  double argument_scale() const { return arg_scale_; }
  // radius beyond which |f| stays below eps
  double decay_radius(double eps = 1e-15) const;

private:
  TestFunctionKind kind_ = TestFunctionKind::gaussian;
  std::vector<double> num_, den_;
  double scale_ = 1.0;
  double arg_scale_ = 1.0;
};

TestFunction make_test_function(TestFunctionKind kind, const std::vector<double>& params);

// --- empirical statistics ----------------------------------------------------------

// sum over all ordered pairs (including the diagonal) of f(gamma - gamma').
double empirical_pair_sum(const ZeroSet& zeros, const TestFunction& f);

enum class DiscreteObservable { zprime_sq, zprime_4, shifted };

// sum over zeros of |zeta'(rho)|^2, |zeta'(rho)|^4, or |zeta(rho+a)|^2.
double empirical_discrete_moment(const ZeroSet& zeros, DiscreteObservable obs,
                                 cplx shift = cplx(0), const ZetaEvalPlan& plan = {});

}  // namespace lfr::zerolab
