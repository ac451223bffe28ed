#include "lfr/arith.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "lfr/specfun.hpp"
#include "oracles.hpp"

using namespace lfr;
using namespace lfr::arith;

namespace {
const EulerProductConfig kCfg{100000, 3, 1e-10};

const TauTable& tau100k() {
  static TauTable t = TauTable::build(100000);
  return t;
}
}  // namespace

TEST_CASE("tau against the literal product expansion") {
  auto oracle = oracles::tau_small();
  const auto& t = tau100k();
  for (int n = 1; n <= 25; ++n) CHECK(t.value(n) == oracle[n - 1]);
  CHECK(t.value(2) == -24);
  CHECK(t.value(3) == 252);
  CHECK(t.value(6) == t.value(2) * t.value(3));
}

TEST_CASE("tau multiplicativity on random coprime pairs") {
  const auto& t = tau100k();
  std::mt19937 rng(5);
  std::uniform_int_distribution<int64_t> pick(2, 300);
  int done = 0;
  while (done < 50) {
    int64_t m = pick(rng), n = pick(rng);
    if (std::gcd(m, n) != 1 || m * n > t.n_max()) continue;
    CHECK(t.value(m * n) == t.value(m) * t.value(n));
    ++done;
  }
}

TEST_CASE("Deligne bound for all tabulated primes") {
  const auto& t = tau100k();
  for (int64_t p : primes_up_to(t.n_max())) CHECK(std::abs(t.star(p)) <= 2.0);
}

TEST_CASE("tau cache round trip and corruption detection") {
  namespace fs = std::filesystem;
  auto t = TauTable::build(128);
  fs::path file = fs::temp_directory_path() / "lfr_tau_cache_test.bin";
  t.save(file);
  auto back = TauTable::load(file);
  CHECK(back.n_max() == 128);
  for (int n = 1; n <= 128; ++n) CHECK(back.value(n) == t.value(n));
  {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(0);
    f.put('X');
  }
  CHECK_THROWS_AS(TauTable::load(file), error);
  fs::remove(file);
}

TEST_CASE("coefficient tables") {
  auto mu = CoefficientTable::build(CoeffKind::moebius, 1000);
  CHECK(mu.ivalue(6) == 1);
  CHECK(mu.ivalue(4) == 0);
  CHECK(mu.ivalue(30) == -1);
  auto mu2 = CoefficientTable::build(CoeffKind::moebius_k, 1000, 2);
  auto mu2_oracle = [&](int64_t n) {
    long long acc = 0;
    for (int64_t d = 1; d <= n; ++d)
      if (n % d == 0) acc += mu.ivalue(d) * mu.ivalue(n / d);
    return acc;
  };
  CHECK(mu2.ivalue(4) == 1);
  for (int64_t n = 1; n <= 60; ++n) CHECK(mu2.ivalue(n) == mu2_oracle(n));
  auto mud = CoefficientTable::build(CoeffKind::moebius_delta, 1000, 1, &tau100k());
  CHECK(mud.dvalue(8) == 0.0);  // p^3
  CHECK(mud.dvalue(4) == 1.0);  // p^2
  CHECK(mud.dvalue(2) == doctest::Approx(-tau100k().star(2)));
  CHECK_THROWS_AS(CoefficientTable::build(CoeffKind::moebius_delta, 1000), error);
}

TEST_CASE("moebius_k partial sums approximate 1/zeta(s)^k") {
  const int64_t N = 20000;
  for (int k = 1; k <= 3; ++k) {
    auto t = CoefficientTable::build(CoeffKind::moebius_k, N, k);
    double acc = 0.0;
    for (int64_t n = 1; n <= N; ++n) acc += (double)t.ivalue(n) / ((double)n * n);
    double target = std::pow(6.0 / (pi * pi), k);
    CHECK(std::abs(acc - target) < 40.0 / (double)N);
  }
}

TEST_CASE("euler product engine basics") {
  EulerProductConfig cfg{100000, 1, 1e-6};
  auto one = euler_product([](int64_t) { return cplx(1.0); }, cfg);
  CHECK(std::abs(one.value - 1.0) < 1e-14);
  auto basel =
      euler_product([](int64_t p) { return cplx(1.0 / (1.0 - 1.0 / ((double)p * p))); }, cfg);
  CHECK(std::abs(basel.value.real() - pi * pi / 6.0) < cfg.abs_tol);
  EulerProductConfig cfg2 = cfg;
  cfg2.prime_cutoff = 200000;
  auto basel2 =
      euler_product([](int64_t p) { return cplx(1.0 / (1.0 - 1.0 / ((double)p * p))); }, cfg2);
  CHECK(std::abs(basel.value - basel2.value) < cfg.abs_tol);
  CHECK_THROWS_AS(
      euler_product([](int64_t p) { return cplx(1.0 / (1.0 - 1.0 / (double)p)); }, cfg),
      error);
}

TEST_CASE("a_zeta diagonal collapse and symmetry") {
  CHECK(std::abs(a_zeta(0.01, cplx(0.0, 0.02), 0.01, cplx(0.0, 0.02), kCfg) - 1.0) < 1e-10);
  CHECK(std::abs(a_zeta(0, 0, 0, 0, kCfg) - 1.0) < 1e-13);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-0.08, 0.08);
  for (int i = 0; i < 5; ++i) {
    cplx a(u(rng), u(rng)), b(u(rng), u(rng)), g(u(rng), u(rng)), d(u(rng), u(rng));
    cplx v1 = a_zeta(a, b, g, d, kCfg);
    cplx v2 = a_zeta(b, a, d, g, kCfg);
    CHECK(std::abs(v1 - v2) < 1e-12 * (1.0 + std::abs(v1)));
    cplx diag = a_zeta(a, b, a, b, kCfg);
    CHECK(std::abs(diag - 1.0) < 1e-9);
  }
  CHECK_THROWS_AS(a_zeta(0.3, 0, 0, 0, kCfg), error);
}

TEST_CASE("quadratic-family factor A_D") {
  cplx r(0.05, 0.1);
  CHECK(std::abs(a_d_family(r, ADKind::diag, kCfg) - 1.0) < 1e-10);
  CHECK(std::abs(a_d_family(cplx(0.0), ADKind::reflected, kCfg) - 1.0) < 1e-10);
  for (cplx rr : {cplx(0.06, 0.0), cplx(0.04, 0.09)}) {
    double h = 1e-4;
    cplx fd = (a_d_general(rr + h, rr, kCfg) - a_d_general(rr - h, rr, kCfg)) / (2.0 * h);
    cplx sum = a_d_family(rr, ADKind::diag_deriv, kCfg);
    CHECK(std::abs(fd - sum) < 1e-6);
  }
}

TEST_CASE("tau-family factor B_Delta") {
  const auto& tau = tau100k();
  CHECK(std::abs(b_delta(0.03, 0.03, kCfg, tau) - 1.0) < 1e-9);
  CHECK(std::abs(b_delta(0.0, 0.0, kCfg, tau) - 1.0) < 1e-9);
  // Hecke identity behind the diagonal collapse, as exact integers at p=2:
  // tau(p^{2m+1}) tau(p) = tau(p^{2m+2}) + p^11 tau(p^{2m})
  for (int m = 0; m <= 5; ++m) {
    auto t2 = [&](int e) { return tau100k().value((int64_t)1 << e); };
    bigint p11 = 1;
    for (int j = 0; j < 11; ++j) p11 *= 2;
    CHECK(t2(2 * m + 1) * t2(1) == t2(2 * m + 2) + p11 * t2(2 * m));
  }
}

TEST_CASE("symmetric-square L-function") {
  const auto& tau = tau100k();
  cplx at1 = sym2_L_value(cplx(0.0), kCfg, tau);
  CHECK(at1.real() > 0.0);
  CHECK(std::abs(at1.imag()) < 1e-12);
  // per-prime factor equals the expanded cubic at p=2, s=1.5
  {
    double t2 = tau.star_p2(2);
    double x = std::pow(2.0, -1.5);
    double cubic = 1.0 / (1.0 - t2 * x + t2 * x * x - x * x * x);
    double ts = tau.star(2);
    double via_roots = 1.0 / ((1.0 - (ts * ts - 2.0) * x + x * x) * (1.0 - x));
    CHECK(cubic == doctest::Approx(via_roots).epsilon(1e-14));
  }
  // product mode vs the Dirichlet-series route: restricted to cutoff-smooth n
  // the identity is exact per prime, so the comparison is limited by the
  // non-smooth tail of the plain partial sum; desk-scale cutoffs support
  // ~1e-3 here
  cplx pm = sym2_L_value(cplx(0.5), kCfg, tau);
  cplx ds = sym2_dirichlet_partial(cplx(1.5), 200000, tau);
  CHECK(std::abs(pm - ds) < 2e-3);
  auto s = sym2_L(cplx(0.5), kCfg, tau);
  double h = 1e-4;
  cplx fd = (sym2_L_value(cplx(0.5 + h), kCfg, tau) - sym2_L_value(cplx(0.5 - h), kCfg, tau)) /
            (2.0 * h);
  CHECK(std::abs(s.deriv - fd) < 1e-6 * std::abs(fd));
}

TEST_CASE("pair-correlation factors A and B") {
  CHECK(std::abs(pair_AB(cplx(0.0), PairKind::A, kCfg) - 1.0) < 1e-12);
  double h = 1e-4;
  cplx fd = (pair_AB(cplx(h), PairKind::A, kCfg) - pair_AB(cplx(-h), PairKind::A, kCfg)) /
            (2.0 * h);
  CHECK(std::abs(fd) < 1e-6);  // A'(0) = 0
  EulerProductConfig big = kCfg;
  big.prime_cutoff = 200000;
  cplx b1 = pair_AB(cplx(0.0), PairKind::B, kCfg);
  cplx b2 = pair_AB(cplx(0.0), PairKind::B, big);
  CHECK(std::abs(b1 - b2) < 1e-8);
  CHECK(b1.real() > 1.0);
}

TEST_CASE("arithmetic constant a(k)") {
  CHECK(a_k_arithmetic(1, kCfg) == doctest::Approx(1.0).epsilon(1e-9));
  double a2 = a_k_arithmetic(2, kCfg);
  CHECK(a2 * pi * pi / 6.0 == doctest::Approx(1.0).epsilon(1e-8));
  EulerProductConfig big = kCfg;
  big.prime_cutoff = 200000;
  CHECK(std::abs(a_k_arithmetic(2, big) * pi * pi / 6.0 - 1.0) < 1e-8);
  CHECK(a_k_arithmetic(3, kCfg) > 0.0);
}

TEST_CASE("diagonal factors stay at one across random admissible shifts") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  const auto& tau = tau100k();
  for (int i = 0; i < 10; ++i) {
    cplx a(u(rng), u(rng)), b(u(rng), u(rng));
    CHECK(std::abs(a_zeta(a, b, a, b, kCfg) - 1.0) < 1e-9);
    cplx r(u(rng), u(rng));
    CHECK(std::abs(a_d_general(r, r, kCfg) - 1.0) < 1e-9);
    CHECK(std::abs(b_delta(r, r, kCfg, tau) - 1.0) < 1e-9);
  }
}
