#include "lfr/predict.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "lfr/mollify.hpp"
#include "lfr/quadrature.hpp"
#include "lfr/specfun.hpp"

namespace lfr::predict {

namespace sf = specfun;

namespace {

cplx gamma_ratio(cplx a, cplx b) { return std::exp(sf::log_gamma(a) - sf::log_gamma(b)); }

// Gauss-Kronrod 15 nodes on [0,1] for the fixed-grid integrals where every
// term class is accumulated separately on the same nodes.
struct FixedGrid {
  std::vector<double> x, w;
  FixedGrid(double a, double b, double panel_width) {
    static const double xs[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                                 0.741531185599394, 0.586087235467691, 0.405845151377397,
                                 0.207784955007898, 0.0};
    static const double ws[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                                 0.140653259715525, 0.169004726639267, 0.190350578064785,
                                 0.204432940075298, 0.209482141084728};
    int panels = std::max(1, (int)std::ceil((b - a) / panel_width));
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      double c = a + (p + 0.5) * h;
      for (int j = 0; j < 8; ++j) {
        double dx = 0.5 * h * xs[j];
        if (j == 7) {
          x.push_back(c);
          w.push_back(ws[j] * 0.5 * h);
        } else {
          x.push_back(c - dx);
          w.push_back(ws[j] * 0.5 * h);
          x.push_back(c + dx);
          w.push_back(ws[j] * 0.5 * h);
        }
      }
    }
  }
};

// Barycentric Chebyshev-Lobatto interpolation of a smooth function on [0,R];
// used for the slowly varying prime factors so the oscillatory quadrature
// nodes do not each pay for a full Euler product.
class SmoothInterp {
public:
  SmoothInterp() = default;
  SmoothInterp(double R, int n, const std::function<cplx(double)>& f) : R_(R) {
    n = std::max(n, 4);
    x_.resize(n);
    v_.resize(n);
    wt_.resize(n);
    for (int j = 0; j < n; ++j) {
      x_[j] = R_ * 0.5 * (1.0 - std::cos(pi * j / (n - 1)));
      v_[j] = f(x_[j]);
      wt_[j] = (j % 2 ? -1.0 : 1.0);
      if (j == 0 || j == n - 1) wt_[j] *= 0.5;
    }
  }
  cplx operator()(double t) const {
    cplx num(0);
    double den = 0;
    for (size_t j = 0; j < x_.size(); ++j) {
      double d = t - x_[j];
      if (std::abs(d) < 1e-14) return v_[j];
      double q = wt_[j] / d;
      num += q * v_[j];
      den += q;
    }
    return num / den;
  }

private:
  double R_ = 1.0;
  std::vector<double> x_;
  std::vector<cplx> v_;
  std::vector<double> wt_;
};

}  // namespace

// --- discriminant family ---------------------------------------------------------------

DiscriminantFamily DiscriminantFamily::build(double X) {
  if (X < 8.0) throw_constraint("discriminant family: X too small");
  DiscriminantFamily fam;
  fam.X = X;
  int64_t n = (int64_t)X;
  std::vector<bool> not_sqfree(n + 1, false);
  for (int64_t p = 2; p * p <= n; ++p)
    for (int64_t q = p * p; q <= n; q += p * p) not_sqfree[q] = true;
  for (int64_t d = 5; d <= n; ++d) {
    if (d % 4 == 1 && !not_sqfree[d]) fam.d.push_back(d);
    if (d % 4 == 0) {
      int64_t m = d / 4;
      if (!not_sqfree[m] && (m % 4 == 2 || m % 4 == 3)) fam.d.push_back(d);
    }
  }
  return fam;
}

// --- unitary ratios ---------------------------------------------------------------------

namespace {

cplx ratio_unitary_integrand_raw(const UnitaryShifts& s, double t, const Context& ctx) {
  cplx ab = s.alpha + s.beta, gd = s.gamma + s.delta;
  cplx main_term = sf::zeta_1p(ab, ctx.plan) * sf::zeta_1p(gd, ctx.plan) *
                   sf::zeta_recip_1p(s.alpha + s.delta, ctx.plan) *
                   sf::zeta_recip_1p(s.beta + s.gamma, ctx.plan) *
                   arith::a_zeta(s.alpha, s.beta, s.gamma, s.delta, ctx.euler);
  cplx swapped = std::exp(-ab * std::log(t / two_pi)) * sf::zeta_1p(-ab, ctx.plan) *
                 sf::zeta_1p(gd, ctx.plan) *
                 sf::zeta_recip_1p(s.delta - s.beta, ctx.plan) *
                 sf::zeta_recip_1p(s.gamma - s.alpha, ctx.plan) *
                 arith::a_zeta(-s.beta, -s.alpha, s.gamma, s.delta, ctx.euler);
  return main_term + swapped;
}

}  // namespace

cplx ratio_unitary_integrand(const UnitaryShifts& s, double t, const Context& ctx) {
  arith::require_shift_box({s.alpha, s.beta, s.gamma, s.delta});
  if (t <= 0.0) throw_constraint("ratio_unitary: t must be positive");
  cplx ab = s.alpha + s.beta, gd = s.gamma + s.delta;
  if (std::abs(gd) < 1e-10)
    throw error(errc::numeric,
                "ratio_unitary: gamma+delta = 0 is a non-removable singularity");
  if (std::abs(ab) < 1e-7) {
    // removable: the two terms' poles in alpha+beta cancel; average out the
    // simple pole with a symmetric perturbation of beta
    const cplx h(1.5e-5, 0.0);
    UnitaryShifts sp = s, sm = s;
    sp.beta += h;
    sm.beta -= h;
    return 0.5 * (ratio_unitary_integrand_raw(sp, t, ctx) +
                  ratio_unitary_integrand_raw(sm, t, ctx));
  }
  return ratio_unitary_integrand_raw(s, t, ctx);
}

PredictionReport ratio_unitary_integrated(const UnitaryShifts& s, double T, const Context& ctx) {
  arith::require_shift_box({s.alpha, s.beta, s.gamma, s.delta});
  if (T <= two_pi) throw_constraint("ratio_unitary: T too small");
  cplx ab = s.alpha + s.beta, gd = s.gamma + s.delta;
  if (std::abs(ab) < 1e-10 || std::abs(gd) < 1e-10)
    throw error(errc::numeric, "ratio_unitary integrated: degenerate shift sums");
  cplx main_term = sf::zeta_1p(ab, ctx.plan) * sf::zeta_1p(gd, ctx.plan) *
                   sf::zeta_recip_1p(s.alpha + s.delta, ctx.plan) *
                   sf::zeta_recip_1p(s.beta + s.gamma, ctx.plan) *
                   arith::a_zeta(s.alpha, s.beta, s.gamma, s.delta, ctx.euler);
  cplx swap_const = sf::zeta_1p(-ab, ctx.plan) * sf::zeta_1p(gd, ctx.plan) *
                    sf::zeta_recip_1p(s.delta - s.beta, ctx.plan) *
                    sf::zeta_recip_1p(s.gamma - s.alpha, ctx.plan) *
                    arith::a_zeta(-s.beta, -s.alpha, s.gamma, s.delta, ctx.euler);
  // int_0^T (t/2pi)^{-ab} dt = T (T/2pi)^{-ab} / (1-ab)
  cplx osc_int = T * std::exp(-ab * std::log(T / two_pi)) / (1.0 - ab);
  PredictionReport rep;
  rep.statistic = "ratio-unitary";
  rep.add_input("T", format_g17(T));
  rep.add_term("main", (T * main_term).real());
  rep.add_term("swapped", (swap_const * osc_int).real());
  rep.note = "imaginary part " + format_g17((T * main_term + swap_const * osc_int).imag());
  return rep;
}

cplx ratio_logderiv_unitary(cplx alpha, cplx beta, double t, const Context& ctx) {
  if (alpha.real() <= 0.0 || beta.real() <= 0.0)
    throw_constraint("ratio_logderiv_unitary: need Re alpha, Re beta > 0");
  arith::require_shift_box({alpha, beta});
  if (t <= two_pi) throw_constraint("ratio_logderiv_unitary: t too small");
  cplx w = alpha + beta;
  return sf::zeta_logderiv_prime_1p(w, ctx.plan) +
         std::exp(-w * std::log(t / two_pi)) * sf::zeta_sym_product(w, ctx.plan) *
             arith::pair_AB(w, arith::PairKind::A, ctx.euler) -
         arith::pair_AB(w, arith::PairKind::B, ctx.euler);
}

// --- symplectic / orthogonal ------------------------------------------------------------

cplx ratio_symplectic(cplx alpha, cplx gamma, double d, const Context& ctx) {
  arith::require_shift_box({alpha, gamma});
  if (d <= 0) throw_constraint("ratio_symplectic: d must be positive");
  cplx first = sf::zeta_1p(2.0 * alpha, ctx.plan) *
               sf::zeta_recip_1p(alpha + gamma, ctx.plan) *
               arith::a_d_general(alpha, gamma, ctx.euler);
  cplx second = std::exp(-alpha * std::log(d / pi)) *
                gamma_ratio(0.25 - alpha / 2.0, 0.25 + alpha / 2.0) *
                sf::zeta_1p(-2.0 * alpha, ctx.plan) *
                sf::zeta_recip_1p(gamma - alpha, ctx.plan) *
                arith::a_d_general(-alpha, gamma, ctx.euler);
  return first + second;
}

cplx ratio_logderiv_symplectic(cplx r, double d, const Context& ctx) {
  arith::require_shift_box({r});
  if (d <= 0) throw_constraint("ratio_logderiv_symplectic: d must be positive");
  return sf::zeta_logderiv_1p(2.0 * r, ctx.plan) +
         arith::a_d_family(r, arith::ADKind::diag_deriv, ctx.euler) -
         std::exp(-r * std::log(d / pi)) *
             gamma_ratio(0.25 - r / 2.0, 0.25 + r / 2.0) * sf::zeta_1p(-2.0 * r, ctx.plan) *
             arith::a_d_family(r, arith::ADKind::reflected, ctx.euler);
}

cplx ratio_orthogonal(cplx alpha, cplx gamma, double d, const Context& ctx) {
  arith::require_shift_box({alpha, gamma});
  if (d <= 0) throw_constraint("ratio_orthogonal: d must be positive");
  const auto& tau = ctx.require_tau();
  cplx first = sf::zeta_1p(2.0 * gamma, ctx.plan) *
               sf::zeta_recip_1p(alpha + gamma, ctx.plan) *
               arith::sym2_L_value(2.0 * alpha, ctx.euler, tau) /
               arith::sym2_L_value(alpha + gamma, ctx.euler, tau) *
               arith::b_delta(alpha, gamma, ctx.euler, tau);
  cplx second = std::exp(-2.0 * alpha * std::log(d / two_pi)) *
                gamma_ratio(6.0 - alpha, 6.0 + alpha) * sf::zeta_1p(2.0 * gamma, ctx.plan) *
                sf::zeta_recip_1p(gamma - alpha, ctx.plan) *
                arith::sym2_L_value(-2.0 * alpha, ctx.euler, tau) /
                arith::sym2_L_value(gamma - alpha, ctx.euler, tau) *
                arith::b_delta(-alpha, gamma, ctx.euler, tau);
  return first + second;
}

cplx ratio_logderiv_orthogonal(cplx r, double d, const Context& ctx) {
  arith::require_shift_box({r});
  if (d <= 0) throw_constraint("ratio_logderiv_orthogonal: d must be positive");
  const auto& tau = ctx.require_tau();
  auto sym = arith::sym2_L(2.0 * r, ctx.euler, tau);
  cplx main_term = -sf::zeta_logderiv_1p(2.0 * r, ctx.plan) + sym.deriv / sym.value +
                   arith::b_delta_diag_deriv(r, ctx.euler, tau);
  cplx osc = std::exp(-2.0 * r * std::log(d / two_pi)) * gamma_ratio(6.0 - r, 6.0 + r) *
             sf::zeta_1p(2.0 * r, ctx.plan) *
             arith::sym2_L_value(-2.0 * r, ctx.euler, tau) /
             arith::sym2_L_value(cplx(0.0), ctx.euler, tau) *
             arith::b_delta(-r, r, ctx.euler, tau);
  return main_term - osc;
}

cplx ratio_two_over_two(Family family, cplx alpha, cplx beta, cplx gamma, cplx delta,
                        double X) {
  if (X < 10.0) throw_constraint("ratio_two_over_two: X too small");
  auto guard = [](cplx den, const char* what) {
    if (std::abs(den) < 1e-13)
      throw error(errc::numeric, std::string("ratio_two_over_two: vanishing denominator (") +
                                     what + "); evaluate at perturbed shifts");
    return den;
  };
  double lX = std::log(X);
  if (family == Family::symplectic) {
    auto piece = [&](cplx a, cplx b) {
      return (a + gamma) * (a + delta) * (b + gamma) * (b + delta) /
             (4.0 * alpha * beta * guard(a + b, "a+b") * (gamma + delta));
    };
    guard(alpha, "alpha");
    guard(beta, "beta");
    guard(gamma + delta, "gamma+delta");
    return piece(alpha, beta) - std::exp(-alpha * lX) * piece(-alpha, beta) -
           std::exp(-beta * lX) * piece(alpha, -beta) -
           std::exp(-(alpha + beta) * lX) * piece(-alpha, -beta);
  }
  auto piece = [&](cplx a, cplx b) {
    return (a + gamma) * (a + delta) * (b + gamma) * (b + delta) /
           (guard(a + b, "a+b") * (2.0 * gamma) * (gamma + delta) * (2.0 * delta));
  };
  guard(gamma, "gamma");
  guard(delta, "delta");
  guard(gamma + delta, "gamma+delta");
  return piece(alpha, beta) + std::exp(-2.0 * alpha * lX) * piece(-alpha, beta) +
         std::exp(-2.0 * beta * lX) * piece(alpha, -beta) -
         std::exp(-2.0 * (alpha + beta) * lX) * piece(-alpha, -beta);
}

// --- one-level density --------------------------------------------------------------------

namespace {

struct OneLevelPieces {
  double density;      // mean of log(d/pi) resp. 2 log(d/2pi)
  double gamma_term;   // digamma weight
  double logderiv;     // zeta'/zeta and symmetric-square log-derivative
  double arith;        // diagonal derivative of the arithmetic factor
  double oscillatory;  // swapped functional-equation term
};

struct OneLevelEvaluator {
  Family family;
  const Context* ctx;
  DiscriminantFamily fam;
  std::vector<double> theta;  // per-d oscillation frequencies
  double mean_logd = 0.0;
  double sym2_at_1 = 1.0;
  SmoothInterp arith_diag, arith_refl, sym2_plus_ld, sym2_minus;

  OneLevelEvaluator(Family family_, double X, const Context& c, double R, int grid)
      : family(family_), ctx(&c), fam(DiscriminantFamily::build(X)) {
    theta.reserve(fam.size());
    double acc = 0.0;
    for (int64_t dv : fam.d) {
      double ld = family == Family::symplectic ? std::log((double)dv / pi)
                                               : std::log((double)dv / two_pi);
      theta.push_back(family == Family::symplectic ? ld : 2.0 * ld);
      acc += family == Family::symplectic ? ld : 2.0 * ld;
    }
    mean_logd = acc / (double)fam.size();
    const cplx i(0.0, 1.0);
    if (family == Family::symplectic) {
      arith_diag = SmoothInterp(R, grid, [&](double t) {
        return arith::a_d_family(i * t, arith::ADKind::diag_deriv, c.euler);
      });
      arith_refl = SmoothInterp(R, grid, [&](double t) {
        return arith::a_d_family(i * t, arith::ADKind::reflected, c.euler);
      });
    } else {
      const auto& tau = c.require_tau();
      sym2_at_1 = arith::sym2_L_value(cplx(0.0), c.euler, tau).real();
      arith_diag = SmoothInterp(R, grid, [&](double t) {
        return arith::b_delta_diag_deriv(i * t, c.euler, tau);
      });
      arith_refl = SmoothInterp(R, grid, [&](double t) {
        return arith::b_delta(-i * t, i * t, c.euler, tau);
      });
      sym2_plus_ld = SmoothInterp(R, grid, [&](double t) {
        auto s = arith::sym2_L(2.0 * i * t, c.euler, tau);
        return s.deriv / s.value;
      });
      sym2_minus = SmoothInterp(R, grid, [&](double t) {
        return arith::sym2_L_value(-2.0 * i * t, c.euler, tau);
      });
    }
  }

  // normalized (per-discriminant) oscillation sum
  cplx W(double t) const {
    double re = 0.0, im = 0.0;
    for (double th : theta) {
      re += std::cos(th * t);
      im -= std::sin(th * t);
    }
    return cplx(re, im) / (double)theta.size();
  }

  // Re of the per-discriminant bracket at height t
  OneLevelPieces pieces(double t) const {
    const cplx i(0.0, 1.0);
    OneLevelPieces p{};
    p.density = mean_logd;
    if (family == Family::symplectic) {
      p.gamma_term = sf::digamma(cplx(0.25, t / 2.0)).real();
      p.logderiv = 2.0 * sf::zeta_logderiv_1p(2.0 * i * t, ctx->plan).real();
      p.arith = 2.0 * arith_diag(std::abs(t)).real();
      cplx C = gamma_ratio(cplx(0.25, -t / 2.0), cplx(0.25, t / 2.0)) *
               sf::zeta_1p(-2.0 * i * t, ctx->plan) * arith_refl(std::abs(t));
      p.oscillatory = -2.0 * (C * W(t)).real();
    } else {
      p.gamma_term = 2.0 * sf::digamma(cplx(6.0, t)).real();
      p.logderiv = 2.0 * (-sf::zeta_logderiv_1p(2.0 * i * t, ctx->plan) +
                          sym2_plus_ld(std::abs(t)))
                             .real();
      p.arith = 2.0 * arith_diag(std::abs(t)).real();
      cplx C = gamma_ratio(cplx(6.0, -t), cplx(6.0, t)) * sf::zeta_1p(2.0 * i * t, ctx->plan) *
               sym2_minus(std::abs(t)) / sym2_at_1 * arith_refl(std::abs(t));
      p.oscillatory = -2.0 * (C * W(t)).real();
    }
    return p;
  }
};

}  // namespace

PredictionReport one_level_density(Family family, const zerolab::TestFunction& f, double X,
                                   const Context& ctx, const OneLevelOptions& opts) {
  if (X < 100.0) throw_constraint("one_level_density: X must be >= 100");
  double R = std::min(f.decay_radius(1e-13), 60.0);
  OneLevelEvaluator ev(family, X, ctx, R, opts.smooth_grid);
  FixedGrid grid(0.0, R, opts.panel_width);
  double s_density = 0, s_gamma = 0, s_logd = 0, s_arith = 0, s_osc = 0;
  for (size_t j = 0; j < grid.x.size(); ++j) {
    double t = std::max(grid.x[j], opts.t_floor);
    double wf = grid.w[j] * f(grid.x[j]);
    auto p = ev.pieces(t);
    s_density += wf * p.density;
    s_gamma += wf * p.gamma_term;
    s_logd += wf * p.logderiv;
    s_arith += wf * p.arith;
    s_osc += wf * p.oscillatory;
  }
  double scale = (double)ev.fam.size() / pi;  // X* * (1/2pi) * 2 (even integrand)
  PredictionReport rep;
  rep.statistic = family == Family::symplectic ? "one-level-symplectic" : "one-level-orthogonal";
  rep.add_input("X", format_g17(X));
  rep.add_input("X_star", std::to_string(ev.fam.size()));
  rep.add_term("density", scale * s_density);
  rep.add_term("gamma_factor", scale * s_gamma);
  rep.add_term("zeta_logderiv", scale * s_logd);
  rep.add_term("arithmetic", scale * s_arith);
  rep.add_term("oscillatory", scale * s_osc);
  return rep;
}

double one_level_scaled(Family family, const zerolab::TestFunction& g, double X,
                        const Context& ctx, const OneLevelOptions& opts) {
  double c = std::log(X) / two_pi;
  auto f = g.with_argument_scale(c);
  auto rep = one_level_density(family, f, X, ctx, opts);
  double xstar = DiscriminantFamily::build(X).size();
  return rep.total / xstar;
}

// --- pair correlation -----------------------------------------------------------------------

namespace {

struct PairCorrInner {
  std::vector<double> r, wf;  // nodes and f-weighted quadrature weights
  std::vector<cplx> u, v;     // u = (zeta'/zeta)'(1+ir) - B(ir); v = zeta(1+ir)zeta(1-ir)A(ir)
  std::vector<double> u_logderiv, u_primesum;  // Re parts, for the term breakdown
  double f_mass;                               // int_{-T}^{T} f
  double w0;                                   // lim_{r->0} Re(u+v)
};

PairCorrInner build_inner(const zerolab::TestFunction& f, double T, const Context& ctx,
                          const PairCorrelationOptions& opts) {
  PairCorrInner in;
  const cplx i(0.0, 1.0);
  double R = std::min(T, f.decay_radius(1e-15));
  FixedGrid grid(opts.r_floor, R, opts.panel_width);
  in.r = grid.x;
  in.wf.resize(grid.x.size());
  in.u.resize(grid.x.size());
  in.v.resize(grid.x.size());
  in.u_logderiv.resize(grid.x.size());
  in.u_primesum.resize(grid.x.size());
  for (size_t j = 0; j < grid.x.size(); ++j) {
    double r = grid.x[j];
    in.wf[j] = grid.w[j] * f(r);
    cplx ld = sf::zeta_logderiv_prime_1p(i * r, ctx.plan);
    cplx B = arith::pair_AB(i * r, arith::PairKind::B, ctx.euler);
    in.u[j] = ld - B;
    in.u_logderiv[j] = ld.real();
    in.u_primesum[j] = B.real();
    in.v[j] = opts.include_oscillatory
                  ? sf::zeta_sym_product(i * r, ctx.plan) *
                        arith::pair_AB(i * r, arith::PairKind::A, ctx.euler)
                  : cplx(0.0);
  }
  in.f_mass = 2.0 * quad::integrate([&](double x) { return f(x); }, 0.0, R,
                                    {1e-12, 1e-12, 2000});
  auto w_at = [&](double r) {
    return (sf::zeta_logderiv_prime_1p(i * r, ctx.plan) +
            sf::zeta_sym_product(i * r, ctx.plan) *
                arith::pair_AB(i * r, arith::PairKind::A, ctx.euler) -
            arith::pair_AB(i * r, arith::PairKind::B, ctx.euler))
        .real();
  };
  double r0 = opts.r_floor;
  in.w0 = (4.0 * w_at(r0) - w_at(2.0 * r0)) / 3.0;  // even-function Richardson
  return in;
}

// int_0^T (t/2pi)^{-ir} dt with the integrand frozen below 2 pi e
cplx osc_time_integral(double r, double T) {
  const double stub_end = two_pi * std::exp(1.0);
  const cplx i(0.0, 1.0);
  cplx e_pow = std::exp(-i * r);  // (t/2pi)^{-ir} at t = 2 pi e
  if (T <= stub_end) return T * e_pow;
  cplx one_m = 1.0 - i * r;
  double X = T / two_pi;
  cplx upper = std::exp(one_m * std::log(X));
  cplx lower = std::exp(one_m * 1.0);
  return stub_end * e_pow + two_pi * (upper - lower) / one_m;
}

}  // namespace

PredictionReport pair_correlation_prediction(const zerolab::TestFunction& f, double T,
                                             const Context& ctx,
                                             const PairCorrelationOptions& opts) {
  if (T < 50.0) throw_constraint("pair_correlation: T must be >= 50");
  PairCorrInner in = build_inner(f, T, ctx, opts);
  const double f0 = f(0.0);
  const double r0 = opts.r_floor;
  const double inv4pi2 = 1.0 / (4.0 * pi * pi);

  double I1 = quad::log_power_integral(1, T);
  double I2 = quad::log_power_integral(2, T);

  double term_density = (f0 / two_pi) * I1;
  // the PV window [0, r0] carries f(0) (w0 - L^2/2): fold its L^2 piece into
  // the log^2 mass and its constant piece into a window term
  double term_log2 = inv4pi2 * (in.f_mass - 2.0 * r0 * f0) * I2;
  double term_window = inv4pi2 * 4.0 * r0 * f0 * in.w0 * T;
  double s_ld = 0.0, s_B = 0.0;
  cplx s_osc(0.0);
  for (size_t j = 0; j < in.r.size(); ++j) {
    s_ld += in.wf[j] * in.u_logderiv[j];
    s_B += in.wf[j] * in.u_primesum[j];
    s_osc += in.wf[j] * in.v[j] * osc_time_integral(in.r[j], T);
  }
  double term_logderiv = inv4pi2 * 4.0 * T * s_ld;
  double term_primesum = -inv4pi2 * 4.0 * T * s_B;
  double term_osc = inv4pi2 * 4.0 * s_osc.real();

  PredictionReport rep;
  rep.statistic = "pair-correlation";
  rep.add_input("T", format_g17(T));
  rep.add_term("density", term_density);
  rep.add_term("log_squared", term_log2);
  rep.add_term("zeta_logderiv", term_logderiv);
  rep.add_term("prime_sum", term_primesum);
  rep.add_term("oscillatory", term_osc);
  rep.add_term("pv_window", term_window);
  rep.fluctuation_budget = std::sqrt(T) * std::pow(std::log(T), 2) / two_pi;
  return rep;
}

double pair_correlation_scaled(const zerolab::TestFunction& g, double T, const Context& ctx,
                               const PairCorrelationOptions& opts) {
  double L = std::log(T / two_pi);
  auto f = g.with_argument_scale(L / two_pi);
  auto rep = pair_correlation_prediction(f, T, ctx, opts);
  return rep.total * two_pi / (T * L);
}

// --- discrete moments --------------------------------------------------------------------------

std::array<double, 5> moment2_zetaprime_coeffs() {
  double g0 = sf::stieltjes(0), g1 = sf::stieltjes(1), g2 = sf::stieltjes(2),
         g3 = sf::stieltjes(3);
  // ascending in log(t/2pi)
  return {g0 * g0 * g0 * g0 / pi + 6.0 * g0 * g0 * g1 / pi + 7.0 * g1 * g1 / pi +
              4.0 * g0 * g2 / pi + 5.0 * g3 / (3.0 * pi),
          -(g0 * g0 * g0 / pi + 5.0 * g0 * g1 / pi + g2 / (2.0 * pi)),
          g0 * g0 / (2.0 * pi) - g1 / pi,
          g0 / (3.0 * pi),
          1.0 / (24.0 * pi)};
}

PredictionReport moment2_zetaprime(double T) {
  if (T < 0.0) throw_constraint("moment2_zetaprime: T must be >= 0");
  auto c = moment2_zetaprime_coeffs();
  PredictionReport rep;
  rep.statistic = "moment2-zetaprime";
  rep.add_input("T", format_g17(T));
  static const char* labels[5] = {"log0", "log1", "log2", "log3", "log4"};
  for (int k = 4; k >= 0; --k)
    rep.add_term(labels[k], c[k] * quad::log_power_integral(k, T));
  rep.fluctuation_budget = std::sqrt(std::max(T, 1.0)) * std::pow(std::log(2.0 + T), 3);
  return rep;
}

std::array<double, 4> zeta_derivatives_at_2(const Context& ctx) {
  static std::array<double, 4> cached;
  static std::once_flag once;
  std::call_once(once, [&] {
    for (int m = 1; m <= 4; ++m)
      cached[m - 1] = sf::zeta_derivative(cplx(2.0), m, ctx.plan).real();
  });
  return cached;
}

std::array<double, 3> moment4_zetaprime_leading_coeffs(const Context& ctx) {
  double z2 = pi * pi / 6.0;
  auto d = zeta_derivatives_at_2(ctx);
  double zp = d[0], zpp = d[1];
  double g0 = sf::stieltjes(0), g1 = sf::stieltjes(1);
  double a9 = 1.0 / (8640.0 * z2);
  double a8 = -(-2.0 * g0 * z2 + zp) / (480.0 * z2 * z2);
  double a7 = (7.0 * g0 * g0 * z2 * z2 - 2.0 * g1 * z2 * z2 - 8.0 * g0 * z2 * zp +
               4.0 * zp * zp - 2.0 * z2 * zpp) /
              (120.0 * z2 * z2 * z2);
  return {a9, a8, a7};
}

PredictionReport moment4_zetaprime(double T, const Context& ctx) {
  if (T < 0.0) throw_constraint("moment4_zetaprime: T must be >= 0");
  auto a = moment4_zetaprime_leading_coeffs(ctx);
  PredictionReport rep;
  rep.statistic = "moment4-zetaprime";
  rep.add_input("T", format_g17(T));
  rep.add_term("log9", a[0] / two_pi * quad::log_power_integral(9, T));
  rep.add_term("log8", a[1] / two_pi * quad::log_power_integral(8, T));
  rep.add_term("log7", a[2] / two_pi * quad::log_power_integral(7, T));
  rep.error_budget = quad::log_power_integral(6, T) / two_pi;
  rep.note = "coefficients of log^6 .. log^0 are not determined by the known "
             "expansion; error_budget is the log^6 mass with unit coefficient";
  return rep;
}

PredictionReport moment2_shifted(double T, cplx a, const Context& ctx) {
  if (std::abs(a) == 0.0)
    throw error(errc::numeric, "moment2_shifted: a = 0 degenerates (zeros annihilate)");
  if (std::abs(a.real()) >= 1.0) throw_constraint("moment2_shifted: need |Re a| < 1");
  double g0 = sf::stieltjes(0);
  cplx ldp = sf::zeta_logderiv_1p(a, ctx.plan), ldm = sf::zeta_logderiv_1p(-a, ctx.plan);
  cplx d2p = sf::zeta_d2_over_zeta_1p(a, ctx.plan), d2m = sf::zeta_d2_over_zeta_1p(-a, ctx.plan);
  cplx zz = ldm + ldp;
  cplx cs = d2m + d2p - ldm * ldm - ldp * ldp;
  double I2 = quad::log_power_integral(2, T);
  double I1 = quad::log_power_integral(1, T);
  cplx zp = sf::zeta_1p(a, ctx.plan), zm = sf::zeta_1p(-a, ctx.plan);
  // int_0^T (t/2pi)^{+-a} dt, exact from 0
  cplx Jp = T * std::exp(a * std::log(T / two_pi)) / (1.0 + a);
  cplx Jm = T * std::exp(-a * std::log(T / two_pi)) / (1.0 - a);
  PredictionReport rep;
  rep.statistic = "moment2-shifted";
  rep.add_input("T", format_g17(T));
  rep.add_input("a", format_g17(a.real()) + "+" + format_g17(a.imag()) + "i");
  rep.add_term("main_log2", I2 / two_pi);
  rep.add_term("main_log1", ((2.0 * g0 + zz) * I1).real() / two_pi);
  rep.add_term("main_const", ((2.0 * g0 * zz + cs) * T).real() / two_pi);
  rep.add_term("oscillatory", (-(zp * zp * Jp + zm * zm * Jm)).real() / two_pi);
  return rep;
}

double ScaledShiftedMoment::value(double T) const {
  double L = std::log(T / two_pi);
  return T / two_pi * (c2 * L * L + c1 * L + c0);
}

ScaledShiftedMoment moment2_shifted_scaled(double alpha) {
  double g0 = sf::stieltjes(0), g1 = sf::stieltjes(1);
  ScaledShiftedMoment m{};
  if (alpha == 0.0) {
    m.c2 = 0.0;
    m.c1 = 4.0 * g0 - 2.0 + (1.0 - 2.0 * g0) * 2.0;  // sin(2 pi a)/(pi a) -> 2
    m.c0 = 4.0 * g0 - 2.0 - 2.0 * g0 * g0 - 4.0 * g1 + 2.0 * g0 * g0 - 4.0 * g0 + 2.0;
    return m;
  }
  double spa = std::sin(pi * alpha) / (pi * alpha);
  double s2a = std::sin(2.0 * pi * alpha) / (pi * alpha);
  double c2a = std::cos(2.0 * pi * alpha);
  m.c2 = 1.0 - spa * spa;
  m.c1 = s2a - 2.0 * g0 * s2a + 4.0 * g0 - 2.0;
  m.c0 = 4.0 * g0 * c2a - 2.0 * c2a - 2.0 * g0 * g0 * c2a - 4.0 * g1 * c2a + 2.0 * g0 * g0 -
         4.0 * g0 + 2.0;
  return m;
}

double hko_leading_coefficient(int k, const Context& ctx) {
  if (k < 1 || k > 3) throw_constraint("hko_leading: k must be in {1, 2, 3}");
  using boost::multiprecision::cpp_rational;
  auto g_top = sf::barnes_g_int(k + 2);
  auto g_bot = sf::barnes_g_int(2 * k + 3);
  cpp_rational barnes = cpp_rational(g_top * g_top) / cpp_rational(g_bot);
  return barnes.convert_to<double>() * arith::a_k_arithmetic(k, ctx.euler) / two_pi;
}

double hko_leading(int k, double T, const Context& ctx) {
  if (T <= 1.0) throw_constraint("hko_leading: T must be > 1");
  int e = k * (k + 2) + 1;
  return hko_leading_coefficient(k, ctx) * T * std::pow(std::log(T), e);
}

std::array<double, 5> fourth_moment_zeta_coeffs(const Context& ctx) {
  auto d = zeta_derivatives_at_2(ctx);
  double zp = d[0], zpp = d[1], zppp = d[2], zpppp = d[3];
  double g0 = sf::stieltjes(0), g1 = sf::stieltjes(1), g2 = sf::stieltjes(2),
         g3 = sf::stieltjes(3);
  double p2 = pi * pi, p4 = p2 * p2, p6 = p4 * p2, p8 = p6 * p2, p10 = p8 * p2;
  double c4 = 1.0 / (2.0 * p2);
  double c3 = 8.0 / p4 * (g0 * p2 - 3.0 * zp);
  double c2 = 6.0 / p6 *
              (-48.0 * g0 * zp * p2 - 12.0 * zpp * p2 + 7.0 * g0 * g0 * p4 +
               144.0 * zp * zp - 2.0 * g1 * p4);
  double c1 = 12.0 / p8 *
              (6.0 * g0 * g0 * g0 * p6 - 84.0 * g0 * g0 * zp * p4 + 24.0 * g1 * zp * p4 -
               1728.0 * zp * zp * zp + 576.0 * g0 * zp * zp * p2 + 288.0 * zp * zpp * p2 -
               8.0 * zppp * p4 - 10.0 * g1 * g0 * p6 - g2 * p6 - 48.0 * g0 * zpp * p4);
  double c0 = 4.0 / p10 *
              (-12.0 * zpppp * p6 + 36.0 * g2 * zp * p6 + 9.0 * std::pow(g0, 4) * p8 +
               21.0 * g1 * g1 * p8 + 432.0 * zpp * zpp * p4 + 3456.0 * g0 * zp * zpp * p4 +
               3024.0 * g0 * g0 * zp * zp * p4 - 36.0 * g0 * g0 * g1 * p8 -
               252.0 * g0 * g0 * zpp * p6 + 3.0 * g0 * g2 * p8 + 72.0 * g1 * zpp * p6 +
               360.0 * g1 * g0 * zp * p6 - 216.0 * std::pow(g0, 3) * zp * p6 -
               864.0 * g1 * zp * zp * p4 + 5.0 * g3 * p8 + 576.0 * zp * zppp * p4 -
               20736.0 * g0 * std::pow(zp, 3) * p2 - 15552.0 * zpp * zp * zp * p2 -
               96.0 * g0 * zppp * p6 + 62208.0 * std::pow(zp, 4));
  return {c0, c1, c2, c3, c4};
}

PredictionReport fourth_moment_zeta(double T, const Context& ctx) {
  if (T <= 0.0) throw_constraint("fourth_moment_zeta: T must be positive");
  auto c = fourth_moment_zeta_coeffs(ctx);
  PredictionReport rep;
  rep.statistic = "fourth-moment-zeta";
  rep.add_input("T", format_g17(T));
  static const char* labels[5] = {"log0", "log1", "log2", "log3", "log4"};
  for (int k = 4; k >= 0; --k)
    rep.add_term(labels[k], c[k] * quad::log_power_integral(k, T) / T);
  rep.note = "total is the averaged moment (1/T) int_0^T; multiply by T for the raw "
             "integral";
  return rep;
}

double iv_determinant(int k, double theta, const std::vector<double>& u) {
  return mollify::iv_determinant(k, theta, u);
}

}  // namespace lfr::predict
