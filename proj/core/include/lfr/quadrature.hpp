#pragma once

#include <functional>

#include "lfr/types.hpp"

namespace lfr::quad {

struct Options {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  int max_panels = 4000;
};

// Adaptive Gauss-Kronrod 7-15 on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts = {});

// Non-adaptive composite GK15 with n equal panels.
double integrate_fixed(const std::function<double(double)>& f, double a, double b, int panels);

// int_0^T log^k(t/2pi) dt with the integrand frozen at its t = 2*pi*e value
// on [0, 2*pi*e]; the stub keeps log powers from being sampled where the
// asymptotic formulas they come from stop meaning anything.
double log_power_integral(int k, double T);

// Same integral without the stub (exact antiderivative from 0).
double log_power_integral_exact(int k, double T);

}  // namespace lfr::quad
