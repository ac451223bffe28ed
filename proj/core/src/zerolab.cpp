#include "lfr/zerolab.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lfr::zerolab {

namespace fs = std::filesystem;

// --- ZeroSet ------------------------------------------------------------------

ZeroSet ZeroSet::make(std::vector<double> ordinates, double T, ZeroSource source,
                      double refinement_tol) {
  ZeroSet z;
  for (size_t i = 0; i < ordinates.size(); ++i) {
    if (!(ordinates[i] > 0.0))
      throw_data("zero set: ordinate #" + std::to_string(i + 1) + " is not positive");
    if (i > 0 && !(ordinates[i] > ordinates[i - 1]))
      throw_data("zero set: not strictly ascending at index " + std::to_string(i + 1));
    if (ordinates[i] > T + 1e-9)
      throw_data("zero set: ordinate above the certified height");
  }
  z.ordinates_ = std::move(ordinates);
  z.height_ = T;
  z.source_ = source;
  z.refinement_tol_ = refinement_tol;
  return z;
}

ZeroSet ZeroSet::prefix(double T) const {
  auto it = std::upper_bound(ordinates_.begin(), ordinates_.end(), T);
  return make({ordinates_.begin(), it}, std::min(T, height_), source_, refinement_tol_);
}

// --- import -------------------------------------------------------------------

namespace {

std::vector<double> parse_zero_lines(std::istream& in, const std::string& name) {
  std::vector<double> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = line.find_last_not_of(" \t\r");
    std::string tok = line.substr(b, e - b + 1);
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
      throw_data(name + ": parse error at line " + std::to_string(lineno));
    if (!(v > 0.0))
      throw_data(name + ": non-positive ordinate at line " + std::to_string(lineno));
    if (!out.empty() && !(v > out.back()))
      throw_data(name + ": not ascending at line " + std::to_string(lineno));
    out.push_back(v);
  }
  return out;
}

}  // namespace

ZeroSet import_zeros(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw_data("import_zeros: cannot open " + path.string());
  auto ords = parse_zero_lines(in, path.filename().string());
  if (ords.empty()) throw_data("import_zeros: empty zero file " + path.string());
  double T = ords.back();
  return ZeroSet::make(std::move(ords), T, ZeroSource::imported, 1e-6);
}

// --- cache ---------------------------------------------------------------------

namespace {

std::string format_T(double T) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", T);
  return buf;
}

void write_cache(const fs::path& file, const std::vector<double>& ords, double T,
                 double refine_tol) {
  fs::path lock = file;
  lock += ".lock";
  std::ofstream lk(lock);
  if (!lk) throw_data("zero cache: cannot create lock file " + lock.string());
  {
    std::ofstream out(file);
    if (!out) throw_data("zero cache: cannot open " + file.string() + " for writing");
    out << "# zero cache v1\n";
    out << "# T=" << format_T(T) << "\n";
    out << "# count=" << ords.size() << "\n";
    out << "# refine_tol=" << refine_tol << "\n";
    char buf[64];
    for (double g : ords) {
      std::snprintf(buf, sizeof buf, "%.9f\n", g);
      out << buf;
    }
    if (!out) throw_data("zero cache: write failed for " + file.string());
  }
  fs::remove(lock);
}

}  // namespace

ZeroSet ensure_zeros(double T, const fs::path& cache_dir,
                     const specfun::ZeroSearchOptions& opts) {
  if (!(T > 0.0) || T > 1e4)
    throw_constraint("ensure_zeros: T must be in (0, 10^4]");
  fs::path dir = cache_dir / "zeros";
  std::error_code ec;
  fs::create_directories(dir, ec);
  // any cached file with height >= T will do; prefer the smallest
  double best = 0.0;
  fs::path best_file;
  if (fs::exists(dir)) {
    for (const auto& entry : fs::directory_iterator(dir)) {
      std::string name = entry.path().filename().string();
      if (name.rfind("T=", 0) != 0 || entry.path().extension() != ".txt") continue;
      double ht = std::strtod(name.c_str() + 2, nullptr);
      if (ht >= T && (best == 0.0 || ht < best)) {
        best = ht;
        best_file = entry.path();
      }
    }
  }
  if (best > 0.0) {
    std::ifstream in(best_file);
    if (!in) throw_data("zero cache: cannot open " + best_file.string());
    std::vector<double> ords;
    try {
      ords = parse_zero_lines(in, best_file.filename().string());
    } catch (const error& e) {
      throw_data(std::string("zero cache corrupt: ") + e.what());
    }
    if (ords.empty()) throw_data("zero cache corrupt: empty file " + best_file.string());
    auto full = ZeroSet::make(std::move(ords), best, ZeroSource::computed, opts.refine_tol);
    return full.prefix(T);
  }
  auto ords = specfun::find_zeros(1.0, T, opts);
  write_cache(dir / ("T=" + format_T(T) + ".txt"), ords, T, opts.refine_tol);
  return ZeroSet::make(std::move(ords), T, ZeroSource::computed, opts.refine_tol);
}

// --- test functions ---------------------------------------------------------------

namespace {

// Durand-Kerner; enough to certify pole locations of low-degree denominators.
std::vector<cplx> poly_roots(const std::vector<double>& coeffs) {
  int deg = (int)coeffs.size() - 1;
  while (deg > 0 && coeffs[deg] == 0.0) --deg;
  if (deg < 1) return {};
  std::vector<cplx> c(deg + 1);
  for (int i = 0; i <= deg; ++i) c[i] = coeffs[i] / coeffs[deg];
  std::vector<cplx> r(deg);
  for (int i = 0; i < deg; ++i) r[i] = std::pow(cplx(0.4, 0.9), i + 1);
  auto eval = [&](cplx z) {
    cplx acc(0);
    for (int i = deg; i >= 0; --i) acc = acc * z + c[i];
    return acc;
  };
  for (int it = 0; it < 200; ++it) {
    double moved = 0.0;
    for (int i = 0; i < deg; ++i) {
      cplx den(1.0);
      for (int j = 0; j < deg; ++j)
        if (j != i) den *= (r[i] - r[j]);
      cplx step = eval(r[i]) / den;
      r[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-13) break;
  }
  return r;
}

double eval_real_poly(const std::vector<double>& c, double x) {
  double acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

cplx eval_real_poly(const std::vector<double>& c, cplx x) {
  cplx acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void require_even(const std::vector<double>& c, const char* what) {
  for (size_t i = 1; i < c.size(); i += 2)
    if (c[i] != 0.0)
      throw_constraint(std::string("test function: ") + what +
                       " has odd terms, the function must be even");
}

}  // namespace

TestFunction TestFunction::gaussian(double scale) {
  if (!(scale > 0.0))
    throw_constraint("test function: gaussian scale must be positive (decay)");
  TestFunction f;
  f.kind_ = TestFunctionKind::gaussian;
  f.scale_ = scale;
  return f;
}

TestFunction TestFunction::fejer() {
  TestFunction f;
  f.kind_ = TestFunctionKind::fejer;
  return f;
}

TestFunction TestFunction::rational(std::vector<double> num, std::vector<double> den) {
  if (num.empty() || den.empty()) throw_constraint("test function: empty polynomial");
  require_even(num, "numerator");
  require_even(den, "denominator");
  int dn = (int)num.size() - 1, dd = (int)den.size() - 1;
  while (dn > 0 && num[dn] == 0.0) --dn;
  while (dd > 0 && den[dd] == 0.0) --dd;
  if (dd < dn + 2)
    throw_constraint("test function: need deg(den) >= deg(num)+2 for 1/(1+x^2) decay");
  for (cplx root : poly_roots(den))
    if (std::abs(root.imag()) < 2.0)
      throw_constraint("test function: denominator pole inside the strip |Im z| < 2");
  TestFunction f;
  f.kind_ = TestFunctionKind::rational;
  f.num_ = std::move(num);
  f.den_ = std::move(den);
  return f;
}

TestFunction make_test_function(TestFunctionKind kind, const std::vector<double>& params) {
  switch (kind) {
    case TestFunctionKind::gaussian:
      return TestFunction::gaussian(params.empty() ? 1.0 : params[0]);
    case TestFunctionKind::fejer:
      return TestFunction::fejer();
    case TestFunctionKind::rational: {
      // params: n = numerator length, numerator coefficients, denominator coefficients
      if (params.size() < 2) throw_constraint("test function: rational needs coefficients");
      size_t n = (size_t)params[0];
      if (n < 1 || params.size() < 1 + n + 1)
        throw_constraint("test function: rational parameter list too short");
      std::vector<double> num(params.begin() + 1, params.begin() + 1 + n);
      std::vector<double> den(params.begin() + 1 + n, params.end());
      return TestFunction::rational(std::move(num), std::move(den));
    }
  }
  throw_constraint("test function: unknown kind");
}

double TestFunction::operator()(double x) const {
  x *= arg_scale_;
  switch (kind_) {
    case TestFunctionKind::gaussian: {
      double u = scale_ * x;
      return std::exp(-u * u);
    }
    case TestFunctionKind::fejer: {
      if (x == 0.0) return 1.0;
      double u = pi * x;
      double s = std::sin(u) / u;
      return s * s;
    }
    case TestFunctionKind::rational:
      return eval_real_poly(num_, x) / eval_real_poly(den_, x);
  }
  return 0.0;
}

cplx TestFunction::operator()(cplx z) const {
  if (std::abs(z.imag() * arg_scale_) >= strip_halfwidth())
    throw_constraint("test function: argument outside the strip");
  z *= arg_scale_;
  switch (kind_) {
    case TestFunctionKind::gaussian: {
      cplx u = scale_ * z;
      return std::exp(-u * u);
    }
    case TestFunctionKind::fejer: {
      if (std::abs(z) < 1e-18) return cplx(1.0);
      cplx u = pi * z;
      cplx s = std::sin(u) / u;
      return s * s;
    }
    case TestFunctionKind::rational:
      return eval_real_poly(num_, z) / eval_real_poly(den_, z);
  }
  return cplx(0.0);
}

TestFunction TestFunction::with_argument_scale(double c) const {
  if (!(c > 0.0)) throw_constraint("test function: argument scale must be positive");
  TestFunction f = *this;
  f.arg_scale_ = arg_scale_ * c;
  return f;
}

double TestFunction::decay_radius(double eps) const {
  double r = 1.0;
  for (int it = 0; it < 80 && std::abs((*this)(r)) > eps; ++it) r *= 1.3;
  return r;
}

// --- empirical statistics -------------------------------------------------------------

double empirical_pair_sum(const ZeroSet& zeros, const TestFunction& f) {
  const auto& g = zeros.ordinates();
  if (g.empty()) throw_data("empirical_pair_sum: empty zero set");
  const size_t n = g.size();
  double diag = (double)n * f(0.0);
  double off = 0.0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) off += f(g[i] - g[j]);
  return diag + 2.0 * off;  // f even
}

double empirical_discrete_moment(const ZeroSet& zeros, DiscreteObservable obs, cplx shift,
                                 const ZetaEvalPlan& plan) {
  if (zeros.refinement_tol() > 1e-6)
    throw_numeric("empirical_discrete_moment: zero refinement too coarse for |zeta'| "
                  "accuracy");
  double acc = 0.0;
  for (double g : zeros.ordinates()) {
    cplx rho(0.5, g);
    switch (obs) {
      case DiscreteObservable::zprime_sq: {
        double a = std::abs(specfun::zeta_derivative(rho, 1, plan));
        acc += a * a;
        break;
      }
      case DiscreteObservable::zprime_4: {
        double a = std::abs(specfun::zeta_derivative(rho, 1, plan));
        acc += a * a * a * a;
        break;
      }
      case DiscreteObservable::shifted: {
        cplx at = rho + shift;
        if (std::abs(at - cplx(1.0)) < 1e-12)
          throw_numeric("empirical_discrete_moment: rho + a hits the pole");
        double a = std::abs(specfun::zeta(at, plan));
        acc += a * a;
        break;
      }
    }
  }
  return acc;
}

}  // namespace lfr::zerolab
