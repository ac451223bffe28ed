#include "lfr/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <mutex>

#include "lfr/specfun.hpp"

namespace lfr::arith {

// --- primes ----------------------------------------------------------------

namespace {
std::vector<int64_t> g_primes;
std::mutex g_primes_mu;
}  // namespace

std::span<const int64_t> primes_up_to(int64_t n) {
  std::lock_guard lk(g_primes_mu);
  if (g_primes.empty() || g_primes.back() < n) {
    int64_t limit = std::max<int64_t>(n, 1000);
    std::vector<bool> comp(limit + 1, false);
    g_primes.clear();
    for (int64_t i = 2; i <= limit; ++i) {
      if (!comp[i]) {
        g_primes.push_back(i);
        for (int64_t j = i * i; j <= limit; j += i) comp[j] = true;
      }
    }
  }
  auto it = std::upper_bound(g_primes.begin(), g_primes.end(), n);
  return {g_primes.data(), (size_t)(it - g_primes.begin())};
}

// --- tau ------------------------------------------------------------------

TauTable TauTable::build(int64_t n_max) {
  if (n_max < 1) throw_constraint("tau_table: n_max must be >= 1");
  if (n_max > 1000000)
    throw error(errc::numeric,
                "tau_table: n_max above 10^6 would overflow the 128-bit coefficients");
  TauTable t;
  t.n_max_ = n_max;
  const size_t N = (size_t)n_max;  // coefficients of q^0 .. q^{N-1}
  // sparse eta^3: sum_k (-1)^k (2k+1) q^{k(k+1)/2}
  std::vector<std::pair<int64_t, int64_t>> sparse;
  for (int64_t k = 0;; ++k) {
    int64_t tri = k * (k + 1) / 2;
    if (tri >= (int64_t)N) break;
    sparse.emplace_back(tri, (k % 2 ? -1 : 1) * (2 * k + 1));
  }
  std::vector<int128> acc(N, 0), next(N, 0);
  for (auto [tri, c] : sparse) acc[tri] = c;
  for (int pass = 1; pass < 8; ++pass) {
    std::fill(next.begin(), next.end(), (int128)0);
    for (auto [tri, c] : sparse) {
      const int128 cc = c;
      for (size_t i = 0; i + tri < N; ++i) next[i + tri] += cc * acc[i];
    }
    acc.swap(next);
  }
  t.tau_ = std::move(acc);  // tau(n) = coefficient of q^{n-1}
  t.star_.resize(N);
  for (size_t i = 0; i < N; ++i) {
    double n = (double)(i + 1);
    t.star_[i] = (double)t.tau_[i] / std::pow(n, 5.5);
  }
  return t;
}

bigint TauTable::value(int64_t n) const {
  if (n < 1 || n > n_max_) throw_constraint("tau_table: n out of range");
  int128 v = tau_[n - 1];
  bool neg = v < 0;
  unsigned __int128 u = neg ? (unsigned __int128)(-v) : (unsigned __int128)v;
  bigint b = (uint64_t)(u >> 64);
  b <<= 64;
  b += (uint64_t)u;
  return neg ? -b : b;
}

double TauTable::star(int64_t n) const {
  if (n < 1 || n > n_max_) throw_constraint("tau_table: n out of range");
  return star_[n - 1];
}

double TauTable::star_p2(int64_t p) const {
  double tp = star(p);
  return tp * tp - 1.0;
}

namespace {
constexpr char kTauMagic[8] = {'L', 'F', 'R', 'T', 'A', 'U', '1', '\n'};
}

void TauTable::save(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw_data("tau cache: cannot open " + file.string() + " for writing");
  out.write(kTauMagic, 8);
  uint64_t n = (uint64_t)n_max_;
  out.write(reinterpret_cast<const char*>(&n), 8);
  for (int128 v : tau_) {
    unsigned __int128 u = (unsigned __int128)v;  // two's complement
    uint64_t lo = (uint64_t)u, hi = (uint64_t)(u >> 64);
    out.write(reinterpret_cast<const char*>(&lo), 8);
    out.write(reinterpret_cast<const char*>(&hi), 8);
  }
  if (!out) throw_data("tau cache: write failed");
}

TauTable TauTable::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw_data("tau cache: cannot open " + file.string());
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kTauMagic, 8) != 0)
    throw_data("tau cache: bad magic in " + file.string());
  uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&n), 8);
  if (!in || n == 0 || n > 1000000) throw_data("tau cache: corrupt header");
  TauTable t;
  t.n_max_ = (int64_t)n;
  t.tau_.resize(n);
  for (uint64_t i = 0; i < n; ++i) {
    uint64_t lo = 0, hi = 0;
    in.read(reinterpret_cast<char*>(&lo), 8);
    in.read(reinterpret_cast<char*>(&hi), 8);
    t.tau_[i] = (int128)(((unsigned __int128)hi << 64) | lo);
  }
  if (!in) throw_data("tau cache: truncated file");
  if (t.tau_[0] != 1) throw_data("tau cache: corrupt data (tau(1) != 1)");
  t.star_.resize(n);
  for (uint64_t i = 0; i < n; ++i)
    t.star_[i] = (double)t.tau_[i] / std::pow((double)(i + 1), 5.5);
  return t;
}

// --- coefficient tables -------------------------------------------------------

CoefficientTable CoefficientTable::build(CoeffKind kind, int64_t n_max, int k,
                                         const TauTable* tau) {
  if (n_max < 1) throw_constraint("coefficient_table: n_max must be >= 1");
  CoefficientTable t;
  t.kind_ = kind;
  t.k_ = k;
  t.n_max_ = n_max;
  // smallest prime factor sieve
  std::vector<int32_t> spf(n_max + 1, 0);
  for (int64_t i = 2; i <= n_max; ++i) {
    if (spf[i] == 0)
      for (int64_t j = i; j <= n_max; j += i)
        if (spf[j] == 0) spf[j] = (int32_t)i;
  }
  std::vector<long long> mu(n_max + 1, 0);
  mu[1] = 1;
  for (int64_t n = 2; n <= n_max; ++n) {
    int64_t p = spf[n], m = n / p;
    mu[n] = (m % p == 0) ? 0 : -mu[m];
  }
  switch (kind) {
    case CoeffKind::moebius:
      t.ivalues_ = std::move(mu);
      break;
    case CoeffKind::moebius_k: {
      if (k < 1) throw_constraint("coefficient_table: k must be >= 1");
      std::vector<long long> acc = mu;
      for (int j = 2; j <= k; ++j) {
        std::vector<long long> next(n_max + 1, 0);
        for (int64_t d = 1; d <= n_max; ++d) {
          if (acc[d] == 0) continue;
          for (int64_t m = d; m <= n_max; m += d) next[m] += acc[d] * mu[m / d];
        }
        acc.swap(next);
      }
      t.ivalues_ = std::move(acc);
      break;
    }
    case CoeffKind::moebius_delta: {
      if (!tau || tau->n_max() < n_max)
        throw_data("coefficient_table: moebius_delta needs a tau table covering n_max");
      std::vector<double> v(n_max + 1, 0.0);
      v[1] = 1.0;
      for (int64_t n = 2; n <= n_max; ++n) {
        int64_t p = spf[n], m = n, e = 0;
        while (m % p == 0) { m /= p; ++e; }
        double local = e == 1 ? -tau->star(p) : (e == 2 ? 1.0 : 0.0);
        v[n] = local == 0.0 ? 0.0 : local * v[m];
      }
      t.dvalues_ = std::move(v);
      break;
    }
  }
  return t;
}

long long CoefficientTable::ivalue(int64_t n) const {
  if (kind_ == CoeffKind::moebius_delta)
    throw_constraint("coefficient_table: moebius_delta values are real, use dvalue");
  if (n < 1 || n > n_max_) throw_constraint("coefficient_table: n out of range");
  return ivalues_[n];
}

double CoefficientTable::dvalue(int64_t n) const {
  if (n < 1 || n > n_max_) throw_constraint("coefficient_table: n out of range");
  if (kind_ == CoeffKind::moebius_delta) return dvalues_[n];
  return (double)ivalues_[n];
}

// --- Euler product engine --------------------------------------------------------

namespace {

// Sum over primes > cutoff of log^w p * p^{-e}, via prime zeta derivatives
// minus the partial sum.
cplx prime_tail(cplx e, int log_weight, int64_t cutoff) {
  if (e.real() <= 1.0) throw_numeric("euler_product: tail exponent has Re <= 1 (divergent)");
  cplx full;
  switch (log_weight) {
    case 0: full = specfun::prime_zeta(e); break;
    case 1: full = -specfun::prime_zeta_d1(e); break;
    case 2: full = specfun::prime_zeta_d2(e); break;
    default: throw_constraint("euler_product: tail log weight must be 0, 1, or 2");
  }
  cplx partial(0);
  for (int64_t p : primes_up_to(cutoff)) {
    double lp = std::log((double)p);
    cplx t = std::exp(-e * lp);
    if (log_weight == 1) t *= lp;
    if (log_weight == 2) t *= lp * lp;
    partial += t;
  }
  return full - partial;
}

struct LogSumResult {
  cplx logsum;
  double last_block_abs;
  long long count;
};

LogSumResult accumulate_log(const std::function<cplx(int64_t)>& factor, int64_t cutoff) {
  LogSumResult r{cplx(0), 0.0, 0};
  auto primes = primes_up_to(cutoff);
  int64_t block_lo = cutoff / 2;
  double block = 0.0;
  for (int64_t p : primes) {
    cplx f = factor(p);
    if (!(std::abs(f) > 0.0)) throw_numeric("euler_product: factor vanished at p=" + std::to_string(p));
    cplx lf = std::log(f);
    r.logsum += lf;
    if (p > block_lo) block += std::abs(lf);
    ++r.count;
  }
  r.last_block_abs = block;
  return r;
}

}  // namespace

EulerProductResult euler_product_tailed(const std::function<cplx(int64_t)>& factor,
                                        const EulerProductConfig& cfg,
                                        std::span<const TailTerm> tails) {
  if (cfg.prime_cutoff < 1000) throw_constraint("euler_product: prime cutoff must be >= 1000");
  auto ls = accumulate_log(factor, cfg.prime_cutoff);
  cplx tail(0);
  int applied = 0;
  for (const auto& t : tails) {
    if (applied >= cfg.tail_order) break;
    if (std::abs(t.coeff) == 0.0) continue;
    tail += t.coeff * prime_tail(t.exponent, t.log_weight, cfg.prime_cutoff);
    ++applied;
  }
  return {std::exp(ls.logsum + tail), tail, ls.last_block_abs, ls.count};
}

EulerProductResult euler_product(const std::function<cplx(int64_t)>& factor,
                                 const EulerProductConfig& cfg) {
  if (cfg.prime_cutoff < 1000) throw_constraint("euler_product: prime cutoff must be >= 1000");
  auto primes = primes_up_to(cfg.prime_cutoff);
  // estimate log factor ~ c * p^{-sigma} from two probe blocks
  auto probe = [&](size_t idx) {
    double s = 0.0;
    int m = 0;
    for (size_t j = idx; j < std::min(idx + 8, primes.size()); ++j, ++m)
      s += std::abs(std::log(factor(primes[j])));
    return s / std::max(m, 1);
  };
  size_t i1 = primes.size() * 3 / 4, i2 = primes.size() - 8;
  double m1 = probe(i1), m2 = probe(i2);
  cplx tail(0);
  double p1 = (double)primes[i1], p2 = (double)primes[i2];
  if (m2 > 1e-18 && m1 > m2) {
    double sigma = std::log(m1 / m2) / std::log(p2 / p1);
    if (sigma <= 1.0 + 1e-6)
      throw_numeric("euler_product: factor decays like p^-" + std::to_string(sigma) +
                    ", product diverges or converges too slowly");
    // estimate the (signed, possibly complex) coefficient at the far end
    cplx c = std::log(factor(primes[i2])) * std::pow(p2, sigma);
    if (cfg.tail_order > 0) tail = c * prime_tail(cplx(sigma), 0, cfg.prime_cutoff);
  }
  auto ls = accumulate_log(factor, cfg.prime_cutoff);
  return {std::exp(ls.logsum + tail), tail, ls.last_block_abs, ls.count};
}

cplx prime_sum_tailed(const std::function<cplx(int64_t)>& term, const EulerProductConfig& cfg,
                      std::span<const TailTerm> tails) {
  if (cfg.prime_cutoff < 1000) throw_constraint("prime_sum: prime cutoff must be >= 1000");
  cplx acc(0);
  for (int64_t p : primes_up_to(cfg.prime_cutoff)) acc += term(p);
  int applied = 0;
  for (const auto& t : tails) {
    if (applied >= cfg.tail_order) break;
    acc += t.coeff * prime_tail(t.exponent, t.log_weight, cfg.prime_cutoff);
    ++applied;
  }
  return acc;
}

// --- named factors ------------------------------------------------------------------

void require_shift_box(std::initializer_list<cplx> shifts) {
  for (cplx s : shifts)
    if (std::abs(s.real()) >= shift_box_halfwidth)
      throw_constraint("shift out of range: |Re| must be < 1/4 to keep the Euler "
                       "products convergent");
}

cplx a_zeta(cplx alpha, cplx beta, cplx gamma, cplx delta, const EulerProductConfig& cfg) {
  require_shift_box({alpha, beta, gamma, delta});
  auto factor = [=](int64_t p) {
    double lp = std::log((double)p);
    cplx u = std::exp(-(1.0 + beta + gamma) * lp);
    cplx v = std::exp(-(1.0 + alpha + delta) * lp);
    cplx w = std::exp(-(1.0 + gamma + delta) * lp);
    return (1.0 - w) * (1.0 - u - v + w) / ((1.0 - u) * (1.0 - v));
  };
  // log f = (u-w)(w-v) + O(p^-3)
  TailTerm tails[] = {
      {cplx(1), 2.0 + beta + 2.0 * gamma + delta, 0},
      {cplx(-1), 2.0 + alpha + beta + gamma + delta, 0},
      {cplx(-1), 2.0 + 2.0 * gamma + 2.0 * delta, 0},
      {cplx(1), 2.0 + alpha + gamma + 2.0 * delta, 0},
  };
  return euler_product_tailed(factor, cfg, tails).value;
}

cplx a_d_general(cplx alpha, cplx gamma, const EulerProductConfig& cfg) {
  require_shift_box({alpha, gamma});
  auto factor = [=](int64_t p) {
    double lp = std::log((double)p);
    cplx v = std::exp(-(1.0 + alpha + gamma) * lp);
    cplx m = std::exp(-(1.0 + 2.0 * alpha) * lp);
    cplx n = std::exp(-(alpha + gamma) * lp);
    return (1.0 - (m + n) / (double)(p + 1)) / (1.0 - v);
  };
  TailTerm tails[] = {
      {cplx(1), 2.0 + alpha + gamma, 0},
      {cplx(-1), 2.0 + 2.0 * alpha, 0},
  };
  return euler_product_tailed(factor, cfg, tails).value;
}

cplx a_d_family(cplx r, ADKind which, const EulerProductConfig& cfg) {
  require_shift_box({r});
  switch (which) {
    case ADKind::diag:
      return a_d_general(r, r, cfg);
    case ADKind::reflected:
      return a_d_general(-r, r, cfg);
    case ADKind::diag_deriv: {
      // the explicit prime sum converges faster than differentiating the product
      auto term = [=](int64_t p) {
        double lp = std::log((double)p);
        return lp / ((double)(p + 1) * (std::exp((1.0 + 2.0 * r) * lp) - 1.0));
      };
      // log p (p^{-2-2r} - p^{-3-2r} + p^{-3-4r}) + ...
      TailTerm tails[] = {
          {cplx(1), 2.0 + 2.0 * r, 1},
          {cplx(-1), 3.0 + 2.0 * r, 1},
          {cplx(1), 3.0 + 4.0 * r, 1},
      };
      return prime_sum_tailed(term, cfg, tails);
    }
  }
  throw_constraint("a_d_family: bad kind");
}

namespace {

// Even/odd tau*-power generating sums at x:
//   E(x) = sum tau*(p^{2m}) x^{2m},  O(x) = sum tau*(p^{2m+1}) x^{2m+1}
// from G(y) = 1/(1 - tau* y + y^2).
void tau_power_sums(double tstar, cplx x, cplx* even, cplx* odd) {
  cplx gp = 1.0 / (1.0 - tstar * x + x * x);
  cplx gm = 1.0 / (1.0 + tstar * x + x * x);
  *even = 0.5 * (gp + gm);
  *odd = 0.5 * (gp - gm);
}

}  // namespace

cplx b_delta(cplx alpha, cplx gamma, const EulerProductConfig& cfg, const TauTable& tau) {
  require_shift_box({alpha, gamma});
  if (tau.n_max() < cfg.prime_cutoff)
    throw_data("b_delta: tau table does not cover the prime cutoff");
  auto factor = [&, alpha, gamma](int64_t p) {
    double lp = std::log((double)p);
    double ts = tau.star(p), t2 = tau.star_p2(p);
    cplx x = std::exp(-0.5 * (1.0 + 2.0 * alpha) * lp);  // x^2 = p^{-(1+2a)}
    cplx x2 = x * x;
    cplx u = std::exp(-(1.0 + alpha + gamma) * lp);
    cplx y = std::exp(-(1.0 + 2.0 * gamma) * lp);
    cplx E, O;
    tau_power_sums(ts, x, &E, &O);
    cplx bracket = 1.0 + (double)p / (double)(p + 1) *
                             ((E - 1.0) - ts * u * (O / x) + y * E);
    cplx num = (1.0 - t2 * x2 + t2 * x2 * x2 - x2 * x2 * x2) * (1.0 - y);
    cplx den = (1.0 - t2 * u + t2 * u * u - u * u * u) * (1.0 - u);
    return bracket * num / den;
  };
  // tau-weighted leading term has mean ~0; no constant-coefficient tail applies
  return euler_product_tailed(factor, cfg, {}).value;
}

cplx b_delta_diag_deriv(cplx r, const EulerProductConfig& cfg, const TauTable& tau) {
  // d/dalpha B(alpha; r) at alpha = r, by a small Cauchy circle
  const double rad = 0.02;
  const int n = 16;
  cplx acc(0);
  for (int j = 0; j < n; ++j) {
    double phi = two_pi * j / n;
    cplx e(std::cos(phi), std::sin(phi));
    acc += b_delta(r + rad * e, r, cfg, tau) * cplx(std::cos(phi), -std::sin(phi));
  }
  return acc / (double)n / rad;
}

namespace {

cplx sym2_factor(int64_t p, cplx s, const TauTable& tau) {
  double lp = std::log((double)p);
  cplx x = std::exp(-s * lp);
  double t2 = tau.star_p2(p);
  return 1.0 / (1.0 - t2 * x + t2 * x * x - x * x * x);
}

}  // namespace

cplx sym2_L_value(cplx s_offset, const EulerProductConfig& cfg, const TauTable& tau) {
  cplx at = 1.0 + s_offset;
  if (at.real() <= 0.5) throw_constraint("sym2_L: need Re(1+s) > 1/2 for the product mode");
  if (tau.n_max() < cfg.prime_cutoff)
    throw_data("sym2_L: tau table does not cover the prime cutoff");
  auto factor = [&, at](int64_t p) { return sym2_factor(p, at, tau); };
  return euler_product_tailed(factor, cfg, {}).value;
}

Sym2Result sym2_L(cplx s_offset, const EulerProductConfig& cfg, const TauTable& tau) {
  Sym2Result r;
  r.value = sym2_L_value(s_offset, cfg, tau);
  // derivative by Cauchy circle, radius kept inside Re > 1/2
  double rad = std::min(0.2, 0.5 * ((1.0 + s_offset.real()) - 0.5));
  const int n = 16;
  cplx acc(0);
  for (int j = 0; j < n; ++j) {
    double phi = two_pi * j / n;
    cplx e(std::cos(phi), std::sin(phi));
    acc += sym2_L_value(s_offset + rad * e, cfg, tau) * cplx(std::cos(phi), -std::sin(phi));
  }
  r.deriv = acc / (double)n / rad;
  return r;
}

cplx sym2_dirichlet_partial(cplx s_at, int64_t n_terms, const TauTable& tau) {
  // zeta(2s)^{-1} sum_{n<=N} tau*(n^2)/n^s; tau*(n^2) multiplicatively from
  // tau*(p^{2e}) obtained by the Hecke recurrence.
  if (n_terms < 1) throw_constraint("sym2_dirichlet_partial: need at least one term");
  std::vector<double> tsq((size_t)n_terms + 1, 0.0);
  tsq[1] = 1.0;
  // smallest prime factor sieve for multiplicative fill
  std::vector<int32_t> spf((size_t)n_terms + 1, 0);
  for (int64_t i = 2; i <= n_terms; ++i)
    if (spf[i] == 0)
      for (int64_t j = i; j <= n_terms; j += i)
        if (spf[j] == 0) spf[j] = (int32_t)i;
  for (int64_t n = 2; n <= n_terms; ++n) {
    int64_t p = spf[n], m = n, e = 0;
    while (m % p == 0) { m /= p; ++e; }
    // tau*(p^k) by recurrence tau*(p^{k+1}) = tau*(p) tau*(p^k) - tau*(p^{k-1})
    double t0 = 1.0, t1 = tau.star(p);
    for (int j = 2; j <= 2 * e; ++j) {
      double t2 = tau.star(p) * t1 - t0;
      t0 = t1;
      t1 = t2;
    }
    tsq[n] = (e == 0 ? 1.0 : t1) * tsq[m];
  }
  cplx sum(0);
  for (int64_t n = 1; n <= n_terms; ++n)
    sum += tsq[n] * std::exp(-s_at * std::log((double)n));
  return sum / specfun::zeta(2.0 * s_at);
}

cplx pair_AB(cplx eta, PairKind which, const EulerProductConfig& cfg) {
  if (which == PairKind::A) {
    if (eta.real() <= -0.25) throw_constraint("pair_A: need Re eta > -1/4");
    auto factor = [=](int64_t p) {
      double lp = std::log((double)p);
      cplx u = std::exp(-(1.0 + eta) * lp);
      double a = 1.0 / (double)p;
      return (1.0 - u) * (1.0 - 2.0 * a + u) / ((1.0 - a) * (1.0 - a));
    };
    // log f = -(u - 1/p)^2 (1 + 2/p) + O(p^-4)
    TailTerm tails[] = {
        {cplx(-1), 2.0 + 2.0 * eta, 0}, {cplx(2), 2.0 + eta, 0},  {cplx(-1), cplx(2.0), 0},
        {cplx(-2), 3.0 + 2.0 * eta, 0}, {cplx(4), 3.0 + eta, 0},  {cplx(-2), cplx(3.0), 0},
    };
    EulerProductConfig c = cfg;
    c.tail_order = std::min(cfg.tail_order * 3, 6);
    return euler_product_tailed(factor, c, tails).value;
  }
  if (eta.real() <= -0.5) throw_constraint("pair_B: need Re eta > -1/2");
  auto term = [=](int64_t p) {
    double lp = std::log((double)p);
    cplx d = std::exp((1.0 + eta) * lp) - 1.0;
    cplx q = lp / d;
    return q * q;
  };
  // log^2 p (p^{-2-2eta} + 2 p^{-3-3eta} + 3 p^{-4-4eta}) + ...
  TailTerm tails[] = {
      {cplx(1), 2.0 + 2.0 * eta, 2},
      {cplx(2), 3.0 + 3.0 * eta, 2},
      {cplx(3), 4.0 + 4.0 * eta, 2},
  };
  return prime_sum_tailed(term, cfg, tails);
}

double a_k_arithmetic(int k, const EulerProductConfig& cfg) {
  if (k < 1) throw_constraint("a_k: k must be >= 1");
  auto factor = [=](int64_t p) {
    double x = 1.0 / (double)p;
    // sum_m binom(m+k-1, m)^2 x^m
    double c = 1.0, sum = 1.0;
    for (int m = 0; m < 400; ++m) {
      c *= (double)(m + k) / (double)(m + 1);
      double term = c * c * std::pow(x, m + 1);
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return cplx(std::pow(1.0 - x, (double)k * k) * sum);
  };
  // log f = c2/p^2 + c3/p^3 + O(p^-4), from the series expansion of the factor
  double g1 = (double)k * k;
  double g2 = std::pow((double)k * (k + 1) / 2.0, 2);
  double g3 = std::pow((double)k * (k + 1) * (k + 2) / 6.0, 2);
  double kk = (double)k * k;
  double c2 = g2 - g1 * g1 / 2.0 - kk / 2.0;
  double c3 = g3 - g1 * g2 + g1 * g1 * g1 / 3.0 - kk / 3.0;
  TailTerm tails[] = {
      {cplx(c2), cplx(2.0), 0},
      {cplx(c3), cplx(3.0), 0},
  };
  EulerProductConfig c = cfg;
  c.tail_order = std::min(cfg.tail_order, 2);
  return euler_product_tailed(factor, c, tails).value.real();
}

}  // namespace lfr::arith
