#pragma once

// Independent oracles used by the test suites.  Everything here is computed
// by a route that does not share code with the library path it checks:
// Euler-Maclaurin-accelerated Dirichlet series, brute-force convolutions,
// and small direct q-expansions.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracles {

// zeta(s) for real s > 1 via the series with tail
// sum_{n>=N} n^{-s} = N^{1-s}/(s-1) + N^{-s}/2 + s N^{-s-1}/12 - ...
inline double zeta_real(double s, long N = 200000) {
  double sum = 0.0;
  for (long n = 1; n < N; ++n) sum += std::pow((double)n, -s);
  double Ns = std::pow((double)N, -s);
  sum += Ns * N / (s - 1.0) + Ns / 2.0 + s * Ns / N / 12.0 -
         s * (s + 1) * (s + 2) * Ns / (N * (double)N * N) / 720.0;
  return sum;
}

// zeta'(s) for real s > 1 via the termwise-differentiated series,
// f(x) = -log(x) x^{-s}, with Euler-Maclaurin tail through f'''.
inline double zeta_prime_real(double s, long N = 200000) {
  double sum = 0.0;
  for (long n = 2; n < N; ++n) sum -= std::log((double)n) * std::pow((double)n, -s);
  double lnN = std::log((double)N), Ns = std::pow((double)N, -s);
  // int_N^inf log x x^{-s} dx = N^{1-s} (lnN/(s-1) + 1/(s-1)^2)
  double integral = -Ns * N * (lnN / (s - 1.0) + 1.0 / ((s - 1.0) * (s - 1.0)));
  double fN = -lnN * Ns;
  double fp = Ns / N * (s * lnN - 1.0);  // f'(N)
  sum += integral + fN / 2.0 - fp / 12.0;
  return sum;
}

// Euler's constant: sum_{k<=N} 1/k - log N with corrections.
inline double euler_gamma_limit(long N = 100000) {
  double sum = 0.0;
  for (long k = 1; k <= N; ++k) sum += 1.0 / k;
  double n = (double)N;
  return sum - std::log(n) - 1.0 / (2 * n) + 1.0 / (12 * n * n) - 1.0 / (120 * n * n * n * n);
}

// First Stieltjes constant gamma_1 = lim sum log k / k - log^2 N / 2,
// with Euler-Maclaurin corrections for f(x) = log x / x.
inline double stieltjes1_limit(long N = 100000) {
  double sum = 0.0;
  for (long k = 2; k <= N; ++k) sum += std::log((double)k) / k;
  double n = (double)N, ln = std::log(n);
  double fN = ln / n;
  double fp = (1.0 - ln) / (n * n);
  double fppp = (11.0 - 6.0 * ln) / (n * n * n * n);
  return sum - ln * ln / 2.0 - fN / 2.0 + fp / 12.0 - fppp / 720.0;
}

// tau(n) for n <= 25 from the literal product q prod_{n<=24} (1-q^n)^24.
inline std::vector<long long> tau_small() {
  const int N = 25;  // coefficients of q^0..q^{N-1} of prod (1-q^n)^24
  std::vector<long long> acc(N, 0);
  acc[0] = 1;
  for (int n = 1; n < N; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      // multiply by (1 - q^n)
      for (int i = N - 1; i >= n; --i) acc[i] -= acc[i - n];
    }
  }
  return acc;  // tau(m) = acc[m-1]
}

// first zeros of zeta on the critical line (classical values)
inline const std::vector<double>& first_zeros() {
  static const std::vector<double> z = {
      14.134725141734694, 21.022039638771555, 25.010857580145688, 30.424876125859513,
      32.935061587739190, 37.586178158825671, 40.918719012147495, 43.327073280914999,
      48.005150881167159, 49.773832477672302};
  return z;
}

}  // namespace oracles
