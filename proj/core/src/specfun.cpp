#include "lfr/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>

namespace lfr::specfun {

namespace {

// B_2, B_4, ..., B_16
constexpr std::array<double, 8> kBernoulli = {
    1.0 / 6.0,      -1.0 / 30.0,    1.0 / 42.0,  -1.0 / 30.0,
    5.0 / 66.0,     -691.0 / 2730.0, 7.0 / 6.0,  -3617.0 / 510.0};

template <class T>
std::complex<T> cpow_nT(long n, std::complex<T> ms) {
  // n^{ms} for positive integer n
  return std::exp(ms * std::log(T(n)));
}

// Euler-Maclaurin zeta, templated so an extended-precision (long double)
// path sits behind the same interface.
template <class T>
std::complex<T> zeta_em(std::complex<T> s, const ZetaEvalPlan& plan) {
  const T one = T(1);
  if (std::abs(s - std::complex<T>(one)) < T(1e-15))
    throw_numeric("zeta: pole at s=1");
  long N = std::lround(std::max<double>(plan.base_terms,
                                        plan.t_factor * std::abs((double)s.imag())));
  N = std::max<long>(N, 12);
  std::complex<T> sum(0);
  for (long n = 1; n < N; ++n) sum += std::exp(-s * std::log(T(n)));
  const std::complex<T> Npow = std::exp(-s * std::log(T(N)));  // N^{-s}
  sum += Npow * T(N) / (s - one);                               // N^{1-s}/(s-1)
  sum += Npow / T(2);
  // Bernoulli corrections: B_{2r}/(2r)! * s(s+1)...(s+2r-2) * N^{-s-2r+1}
  std::complex<T> poch = s;  // rising factorial accumulator
  T fact = 2;                // (2r)!
  int R = std::clamp(plan.bernoulli_order / 2, 1, (int)kBernoulli.size());
  std::complex<T> last(0);
  for (int r = 1; r <= R; ++r) {
    std::complex<T> term =
        T(kBernoulli[r - 1]) / fact * poch * Npow * std::exp((one - T(2 * r)) * std::log(T(N)));
    sum += term;
    last = term;
    poch *= (s + T(2 * r - 1)) * (s + T(2 * r));
    fact *= (2 * r + 1) * (2 * r + 2);
  }
  if (std::abs(last) > 1e-6 * (one + std::abs(sum)))
    throw_numeric("zeta: Euler-Maclaurin tail not converged at this precision");
  return sum;
}

const ZetaEvalPlan kDefaultPlan{};

}  // namespace

cplx zeta(cplx s, const ZetaEvalPlan& plan) {
  if (plan.precision_bits > 53) {
    std::complex<long double> sl((long double)s.real(), (long double)s.imag());
    auto z = zeta_em<long double>(sl, plan);
    return cplx((double)z.real(), (double)z.imag());
  }
  return zeta_em<double>(s, plan);
}

cplx zeta_derivative(cplx s, int m, const ZetaEvalPlan& plan) {
  if (m == 0) return zeta(s, plan);
  double dist = std::abs(s - cplx(1.0));
  if (dist < 1e-12) throw_numeric("zeta_derivative: pole at s=1");
  double r = std::min(plan.derivative_radius, dist / 2.0);
  int n = plan.circle_nodes;
  cplx acc(0);
  for (int j = 0; j < n; ++j) {
    double phi = two_pi * j / n;
    cplx e(std::cos(phi), std::sin(phi));
    cplx em(std::cos(m * phi), -std::sin(m * phi));
    acc += zeta(s + r * e, plan) * em;
  }
  double mfact = 1;
  for (int j = 2; j <= m; ++j) mfact *= j;
  return acc * mfact / (double)n / std::pow(r, m);
}

cplx zeta_family(cplx s, int order, const ZetaEvalPlan& plan) {
  if (order < 0 || order > 2) throw_constraint("zeta_family: order must be 0, 1 or 2");
  return order == 0 ? zeta(s, plan) : zeta_derivative(s, order, plan);
}

cplx zeta_logderiv(cplx s, const ZetaEvalPlan& plan) {
  cplx z = zeta(s, plan);
  if (std::abs(z) < 1e-10)
    throw_numeric("zeta_logderiv: zeta(s) vanishes within tolerance");
  return zeta_derivative(s, 1, plan) / z;
}

// --- Stieltjes constants ---------------------------------------------------

namespace {

std::array<double, 9> stieltjes_cache{};
std::once_flag stieltjes_once;

void compute_stieltjes() {
  // gamma_n = (-1)^n n! / (2 pi) * int (zeta(1+w) - 1/w) e^{-i n phi} dphi / r^n,
  // w = r e^{i phi}.  Trapezoid on the circle is spectrally accurate.
  const double r = 0.5;
  const int nodes = 256;
  ZetaEvalPlan plan;
  plan.base_terms = 48;
  std::vector<cplx> vals(nodes);
  for (int j = 0; j < nodes; ++j) {
    double phi = two_pi * j / nodes;
    cplx w = r * cplx(std::cos(phi), std::sin(phi));
    vals[j] = zeta(cplx(1.0) + w) - 1.0 / w;
  }
  double fact = 1;
  for (int n = 0; n < (int)stieltjes_cache.size(); ++n) {
    if (n > 0) fact *= n;
    cplx acc(0);
    for (int j = 0; j < nodes; ++j) {
      double phi = two_pi * j / nodes;
      acc += vals[j] * cplx(std::cos(n * phi), -std::sin(n * phi));
    }
    acc /= (double)nodes * std::pow(r, n);
    stieltjes_cache[n] = ((n % 2) ? -1.0 : 1.0) * fact * acc.real();
  }
}

double stieltjes_n(int n) {
  std::call_once(stieltjes_once, compute_stieltjes);
  return stieltjes_cache[n];
}

// u(w) = w * zeta(1+w) = 1 + g0 w - g1 w^2 + g2/2 w^3 - ..., with enough
// terms for |w| <= 0.06 at ~1e-12.
void zeta_series_u(cplx w, cplx* u, cplx* up, cplx* upp) {
  std::call_once(stieltjes_once, compute_stieltjes);
  // coefficients c_k of u(w) = sum c_k w^k: c_0 = 1, c_{k+1} = (-1)^k g_k / k!
  std::array<double, 10> c{};
  c[0] = 1.0;
  double fact = 1;
  for (int k = 0; k + 1 < (int)c.size(); ++k) {
    if (k > 0) fact *= k;
    c[k + 1] = ((k % 2) ? -1.0 : 1.0) * stieltjes_cache[k] / fact;
  }
  cplx s0(0), s1(0), s2(0), wp(1.0);
  for (int k = 0; k < (int)c.size(); ++k) {
    s0 += c[k] * wp;
    if (k >= 1) s1 += double(k) * c[k] * (wp / w);
    if (k >= 2) s2 += double(k) * double(k - 1) * c[k] * (wp / (w * w));
    wp *= w;
  }
  if (u) *u = s0;
  if (up) *up = s1;
  if (upp) *upp = s2;
}

constexpr double kSeriesRadius = 0.05;

}  // namespace

double stieltjes(int n) {
  if (n < 0 || n > 4) throw_constraint("stieltjes: n must be in 0..4");
  return stieltjes_n(n);
}

cplx zeta_1p(cplx w, const ZetaEvalPlan& plan) {
  if (std::abs(w) >= kSeriesRadius) return zeta(cplx(1.0) + w, plan);
  if (std::abs(w) == 0.0) throw_numeric("zeta_1p: pole at w=0");
  cplx u;
  zeta_series_u(w, &u, nullptr, nullptr);
  return u / w;
}

cplx zeta_recip_1p(cplx w, const ZetaEvalPlan& plan) {
  if (std::abs(w) >= kSeriesRadius) return 1.0 / zeta(cplx(1.0) + w, plan);
  cplx u;
  zeta_series_u(w, &u, nullptr, nullptr);
  return w / u;
}

cplx zeta_d2_over_zeta_1p(cplx w, const ZetaEvalPlan& plan) {
  if (std::abs(w) >= kSeriesRadius) {
    cplx z = zeta(cplx(1.0) + w, plan);
    return zeta_derivative(cplx(1.0) + w, 2, plan) / z;
  }
  if (std::abs(w) == 0.0) throw_numeric("zeta_d2_over_zeta_1p: pole at w=0");
  cplx u, up, upp;
  zeta_series_u(w, &u, &up, &upp);
  // zeta(1+w) = u/w; second derivative = u''/w - 2u'/w^2 + 2u/w^3
  return (upp * w * w - 2.0 * up * w + 2.0 * u) / (u * w * w);
}

cplx zeta_logderiv_1p(cplx w, const ZetaEvalPlan& plan) {
  if (std::abs(w) >= kSeriesRadius) return zeta_logderiv(cplx(1.0) + w, plan);
  if (std::abs(w) == 0.0) throw_numeric("zeta_logderiv_1p: pole at w=0");
  cplx u, up;
  zeta_series_u(w, &u, &up, nullptr);
  return -1.0 / w + up / u;
}

cplx zeta_logderiv_prime_1p(cplx w, const ZetaEvalPlan& plan) {
  if (std::abs(w) >= kSeriesRadius) {
    cplx z = zeta(cplx(1.0) + w, plan);
    cplx z1 = zeta_derivative(cplx(1.0) + w, 1, plan);
    cplx z2 = zeta_derivative(cplx(1.0) + w, 2, plan);
    return (z2 * z - z1 * z1) / (z * z);
  }
  if (std::abs(w) == 0.0) throw_numeric("zeta_logderiv_prime_1p: pole at w=0");
  cplx u, up, upp;
  zeta_series_u(w, &u, &up, &upp);
  return 1.0 / (w * w) + (upp * u - up * up) / (u * u);
}

cplx zeta_sym_product(cplx w, const ZetaEvalPlan& plan) {
  if (std::abs(w) >= kSeriesRadius)
    return zeta(cplx(1.0) + w, plan) * zeta(cplx(1.0) - w, plan);
  if (std::abs(w) == 0.0) throw_numeric("zeta_sym_product: pole at w=0");
  cplx up, um;
  zeta_series_u(w, &up, nullptr, nullptr);
  zeta_series_u(-w, &um, nullptr, nullptr);
  return -up * um / (w * w);
}

// --- gamma family ------------------------------------------------------------

cplx log_gamma(cplx z) {
  if (z.real() <= 0.0 && std::abs(z.imag()) < 1e-14 &&
      std::abs(z.real() - std::round(z.real())) < 1e-14)
    throw_numeric("log_gamma: pole at nonpositive integer");
  // shift until |z| is comfortably in the Stirling region
  cplx shift(0);
  while (std::abs(z) < 12.0) {
    shift -= std::log(z);
    z += 1.0;
  }
  cplx lz = std::log(z);
  cplx res = (z - 0.5) * lz - z + 0.5 * std::log(two_pi);
  cplx zinv = 1.0 / z, zpow = zinv;
  for (int k = 1; k <= 7; ++k) {
    res += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * zpow;
    zpow *= zinv * zinv;
  }
  return res + shift;
}

cplx digamma(cplx z) {
  if (z.real() <= 0.0 && std::abs(z.imag()) < 1e-14 &&
      std::abs(z.real() - std::round(z.real())) < 1e-14)
    throw_numeric("digamma: pole at nonpositive integer");
  cplx shift(0);
  while (std::abs(z) < 12.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  cplx res = std::log(z) - 0.5 / z;
  cplx z2inv = 1.0 / (z * z), zpow = z2inv;
  for (int k = 1; k <= 7; ++k) {
    res -= kBernoulli[k - 1] / (2.0 * k) * zpow;
    zpow *= z2inv;
  }
  return res + shift;
}

cplx gamma_family(cplx s, GammaKind kind) {
  return kind == GammaKind::log_gamma ? log_gamma(s) : digamma(s);
}

// --- chi ---------------------------------------------------------------------

namespace {

cplx log_sin(cplx z) {
  // for large |Im z| pull out the dominant exponential so nothing overflows:
  // sin z ~ (i/2) e^{-iz} for Im z -> +inf, (-i/2) e^{iz} for Im z -> -inf
  double y = z.imag();
  const cplx i(0.0, 1.0);
  if (y > 18.0) return -i * z + std::log(cplx(0.0, 0.5)) + std::log(1.0 - std::exp(2.0 * i * z));
  if (y < -18.0) return i * z + std::log(cplx(0.0, -0.5)) + std::log(1.0 - std::exp(-2.0 * i * z));
  return std::log(std::sin(z));
}

cplx cot_stable(cplx z) {
  double y = z.imag();
  const cplx i(0.0, 1.0);
  if (y > 18.0) {
    cplx e = std::exp(2.0 * i * z);  // tiny
    return i * (e + 1.0) / (e - 1.0);
  }
  if (y < -18.0) {
    cplx e = std::exp(-2.0 * i * z);  // tiny
    return -i * (1.0 + e) / (1.0 - e);
  }
  return std::cos(z) / std::sin(z);
}

}  // namespace

cplx log_chi(cplx s) {
  return s * std::log(2.0) + (s - 1.0) * std::log(pi) + log_sin(pi * s / 2.0) +
         log_gamma(1.0 - s);
}

cplx chi_factor(cplx s, bool log_deriv) {
  if (!log_deriv) {
    // poles of Gamma(1-s) at s = 1, 2, 3, ...
    if (std::abs(s.imag()) < 1e-14 && s.real() >= 0.999 &&
        std::abs(s.real() - std::round(s.real())) < 1e-12)
      throw_numeric("chi_factor: Gamma(1-s) pole");
    return std::exp(log_chi(s));
  }
  return std::log(two_pi) + (pi / 2.0) * cot_stable(pi * s / 2.0) - digamma(1.0 - s);
}

// --- theta / Z ---------------------------------------------------------------

double riemann_siegel_theta(double t) {
  if (t <= 0.0) throw_constraint("riemann_siegel_theta: t must be positive");
  return log_gamma(cplx(0.25, t / 2.0)).imag() - t / 2.0 * std::log(pi);
}

double hardy_Z(double t, const ZetaEvalPlan& plan) {
  if (t <= 0.0) throw_constraint("hardy_Z: t must be positive");
  double th = riemann_siegel_theta(t);
  cplx rotated = std::exp(cplx(0.0, th)) * zeta(cplx(0.5, t), plan);
  return rotated.real();
}

namespace {

double rs_psi(double p) {
  double c = std::cos(two_pi * p);
  auto raw = [](double q) {
    return std::cos(two_pi * (q * q - q - 1.0 / 16.0)) / std::cos(two_pi * q);
  };
  if (std::abs(c) > 1e-3) return raw(p);
  // removable zero of the denominator at p = 1/4, 3/4
  return 0.5 * (raw(p - 2e-3) + raw(p + 2e-3));
}

}  // namespace

double hardy_Z_fast(double t) {
  if (t < 40.0) return hardy_Z(t);
  double a = std::sqrt(t / two_pi);
  long nu = (long)a;
  double p = a - nu;
  double th = riemann_siegel_theta(t);
  double sum = 0.0;
  for (long n = 1; n <= nu; ++n)
    sum += std::cos(th - t * std::log((double)n)) / std::sqrt((double)n);
  sum *= 2.0;
  double corr = ((nu - 1) % 2 == 0 ? 1.0 : -1.0) * rs_psi(p) / std::sqrt(a);
  return sum + corr;
}

// --- argument principle count -------------------------------------------------

namespace {

// continuous arg change of zeta along the horizontal segment from 2+iT to
// 1/2+iT, adaptive in the step so each increment stays well below pi
double arg_change_horizontal(double T, const ZetaEvalPlan& plan) {
  int m = 32;
  for (int attempt = 0; attempt < 8; ++attempt, m *= 2) {
    double total = 0.0;
    bool ok = true;
    // quadratic spacing, denser toward sigma = 1/2
    cplx prev = zeta(cplx(2.0, T), plan);
    for (int j = 1; j <= m; ++j) {
      double u = (double)j / m;
      double sigma = 2.0 - 1.5 * (2.0 * u - u * u);  // 2 -> 1/2, denser at the end
      cplx w = zeta(cplx(sigma, T), plan);
      if (std::abs(w) == 0.0) { ok = false; break; }
      double inc = std::arg(w / prev);
      if (std::abs(inc) > 1.5) { ok = false; break; }
      total += inc;
      prev = w;
    }
    if (ok) return total;
  }
  throw_numeric("zero_count: argument tracking failed; zero too close to the endpoint?");
}

}  // namespace

long long zero_count(double T, const ZetaEvalPlan& plan) {
  if (T < 5.0) return 0;
  double t = T;
  // keep the endpoint away from a zero of Z
  for (int k = 0; k < 12 && std::abs(hardy_Z_fast(t)) < 1e-4; ++k) t += 1e-4;
  double th = riemann_siegel_theta(t);
  cplx z2 = zeta(cplx(2.0, t), plan);
  double S = (std::arg(z2) + arg_change_horizontal(t, plan)) / pi;
  double raw = th / pi + 1.0 + S;
  long long N = std::llround(raw);
  if (std::abs(raw - (double)N) > 0.2)
    throw_numeric("zero_count: Backlund count did not land on an integer");
  return N;
}

// --- zero search -----------------------------------------------------------

namespace {

double zfun(double t, const ZetaEvalPlan& plan) {
  return t >= 40.0 ? hardy_Z_fast(t) : hardy_Z(t, plan);
}

double refine_zero(double lo, double hi, double flo, const ZeroSearchOptions& opts) {
  // bisect on the fast evaluator down to a width safely above its error,
  // then re-bracket with the accurate one (the fast zero can sit ~1e-3 off)
  for (int it = 0; it < 80 && hi - lo > 4e-3; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = hardy_Z_fast(mid);
    if ((fm < 0) == (flo < 0)) { lo = mid; flo = fm; } else hi = mid;
  }
  double fa = hardy_Z(lo, opts.plan), fb = hardy_Z(hi, opts.plan);
  for (int guard = 0; (fa < 0) == (fb < 0) && guard < 10; ++guard) {
    double w = hi - lo;
    lo -= w;
    hi += w;
    fa = hardy_Z(lo, opts.plan);
    fb = hardy_Z(hi, opts.plan);
  }
  if ((fa < 0) == (fb < 0))
    throw_numeric("find_zeros: lost a sign change while re-bracketing");
  for (int it = 0; it < 80 && hi - lo > opts.refine_tol; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = hardy_Z(mid, opts.plan);
    if ((fm < 0) == (fa < 0)) { lo = mid; fa = fm; } else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> find_zeros(double t0, double t1, const ZeroSearchOptions& opts) {
  if (!(0.0 < t0 && t0 < t1)) throw_constraint("find_zeros: need 0 < t0 < t1");
  long long expected = zero_count(t1, opts.plan) - zero_count(t0, opts.plan);
  for (int attempt = 0; attempt <= opts.max_halvings; ++attempt) {
    double frac = opts.step_fraction / (double)(1 << attempt);
    std::vector<double> zeros;
    double t = t0;
    double ft = zfun(t, opts.plan);
    while (t < t1) {
      double gap = two_pi / std::max(0.5, std::log(t / two_pi));
      double tn = std::min(t + frac * gap, t1);
      double fn = zfun(tn, opts.plan);
      if ((ft < 0) != (fn < 0)) zeros.push_back(refine_zero(t, tn, ft, opts));
      t = tn;
      ft = fn;
    }
    if ((long long)zeros.size() == expected) return zeros;
  }
  throw_numeric("find_zeros: count mismatch against the argument principle; "
                "reduce step or raise precision");
}

// --- Barnes G -----------------------------------------------------------------

bigint barnes_g_int(int n) {
  if (n < 1) throw_constraint("barnes_g_int: n must be >= 1");
  bigint g = 1, fact = 1;  // fact = Gamma(k) = (k-1)!
  for (int k = 1; k < n; ++k) {
    g *= fact;
    fact *= k;
  }
  return g;
}

// --- Bessel kernel ------------------------------------------------------------

namespace {

double bessel_series(double nu, double x) {
  double lg = std::lgamma(nu + 1.0);
  double term = std::exp(nu * std::log(x / 2.0) - lg);
  double sum = term;
  double q = x * x / 4.0;
  for (int m = 1; m < 200; ++m) {
    term *= -q / (m * (nu + m));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double bessel_j_half_integer(int k, double x) {
  // J_{k+1/2}(x), k >= -1
  if (x < 0.0) throw_constraint("bessel: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (x < 0.5 * (k + 1.0) || k > 3) return bessel_series(k + 0.5, x);
  double c = std::sqrt(2.0 / (pi * x));
  double jm = c * std::cos(x);  // J_{-1/2}
  double j0 = c * std::sin(x);  // J_{+1/2}
  if (k == -1) return jm;
  double nu = 0.5;
  for (int j = 0; j < k; ++j) {
    double jn = (2.0 * nu / x) * j0 - jm;
    jm = j0;
    j0 = jn;
    nu += 1.0;
  }
  return j0;
}

double bessel_F(int k, double X) {
  if (k < 1) throw_constraint("bessel_F: k must be >= 1");
  if (X < 0.0) throw_constraint("bessel_F: argument must be >= 0");
  double x = X / 2.0;
  if (x == 0.0) return 0.0;
  double jp = bessel_j_half_integer(k, x);      // J_{k+1/2}
  double jm = bessel_j_half_integer(k - 1, x);  // J_{k-1/2}
  return pi / 2.0 * (x * jp * jp + x * jm * jm - 2.0 * k * jp * jm);
}

// --- prime zeta ----------------------------------------------------------------

namespace {

constexpr std::array<int, 60> kMoebius = {
    // mu(1..60)
    1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0, -1, 1, 1, 0, -1, 0, -1, 0,
    1, 1, -1, 0, 0, 1, 0, 0, -1, -1, -1, 0, 1, 1, 1, 0, -1, 1, 1, 0,
    -1, -1, -1, 0, 0, 1, -1, 0, 0, 0, 1, 0, -1, 0, 1, 0, 1, 1, -1, 0};

}  // namespace

cplx prime_zeta(cplx s, const ZetaEvalPlan& plan) {
  if (s.real() <= 1.0) throw_constraint("prime_zeta: need Re s > 1");
  cplx acc(0);
  for (int k = 1; k <= (int)kMoebius.size(); ++k) {
    if (kMoebius[k - 1] == 0) continue;
    cplx term = std::log(zeta((double)k * s, plan)) * (double)kMoebius[k - 1] / (double)k;
    acc += term;
    if (std::abs(term) < 1e-18 && k > 4) break;
  }
  return acc;
}

cplx prime_zeta_d1(cplx s, const ZetaEvalPlan& plan) {
  cplx acc(0);
  for (int k = 1; k <= (int)kMoebius.size(); ++k) {
    if (kMoebius[k - 1] == 0) continue;
    cplx term = zeta_logderiv((double)k * s, plan) * (double)kMoebius[k - 1];
    acc += term;
    if (std::abs(term) < 1e-18 && k > 4) break;
  }
  return acc;
}

cplx prime_zeta_d2(cplx s, const ZetaEvalPlan& plan) {
  cplx acc(0);
  for (int k = 1; k <= (int)kMoebius.size(); ++k) {
    if (kMoebius[k - 1] == 0) continue;
    cplx ks = (double)k * s;
    cplx z = zeta(ks, plan);
    cplx z1 = zeta_derivative(ks, 1, plan);
    cplx z2 = zeta_derivative(ks, 2, plan);
    cplx term = (z2 * z - z1 * z1) / (z * z) * (double)(k * kMoebius[k - 1]);
    acc += term;
    if (std::abs(term) < 1e-18 && k > 4) break;
  }
  return acc;
}

}  // namespace lfr::specfun
