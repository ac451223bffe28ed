#include "lfr/mollify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>

#include "lfr/arith.hpp"
#include "lfr/quadrature.hpp"
#include "lfr/specfun.hpp"

namespace lfr::mollify {

// --- Polynomial ----------------------------------------------------------------

void Polynomial::canonicalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  if ((int)c_.size() - 1 > kMaxDegree)
    throw_constraint("polynomial: degree above the cap of 64");
}

Polynomial::Polynomial(std::vector<rat> coeffs) : c_(std::move(coeffs)) { canonicalize(); }

Polynomial Polynomial::monomial(int degree, const rat& coeff) {
  if (degree < 0) throw_constraint("polynomial: negative degree");
  std::vector<rat> c(degree + 1, rat(0));
  c[degree] = coeff;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<rat> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * (int)i;
  return Polynomial(std::move(d));
}

Polynomial Polynomial::derivative(int order) const {
  Polynomial p = *this;
  for (int j = 0; j < order; ++j) p = p.derivative();
  return p;
}

Polynomial Polynomial::antiderivative() const {
  std::vector<rat> d(c_.size() + 1, rat(0));
  for (size_t i = 0; i < c_.size(); ++i) d[i + 1] = c_[i] / rat((int)i + 1);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<rat> d(std::max(c_.size(), o.c_.size()), rat(0));
  for (size_t i = 0; i < c_.size(); ++i) d[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) d[i] += o.c_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<rat> d(std::max(c_.size(), o.c_.size()), rat(0));
  for (size_t i = 0; i < c_.size(); ++i) d[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) d[i] -= o.c_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<rat> d(c_.size() + o.c_.size() - 1, rat(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) d[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::scaled(const rat& c) const {
  std::vector<rat> d = c_;
  for (auto& x : d) x *= c;
  return Polynomial(std::move(d));
}

rat Polynomial::operator()(const rat& x) const {
  rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::operator()(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->convert_to<double>();
  return acc;
}

rat Polynomial::integrate01() const {
  rat acc(0);
  for (size_t i = 0; i < c_.size(); ++i) acc += c_[i] / rat((int)i + 1);
  return acc;
}

Polynomial Polynomial::compose_linear(const rat& a, const rat& b) const {
  // P(a x + b) by Horner in the outer variable
  Polynomial res;
  Polynomial lin({b, a});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    res = res * lin + Polynomial({*it});
  return res;
}

bool Polynomial::is_even() const {
  for (size_t i = 1; i < c_.size(); i += 2)
    if (c_[i] != 0) return false;
  return true;
}

int Polynomial::vanishing_order() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return (int)i;
  return (int)c_.size();
}

rat ThetaExpansion::eval(const rat& theta) const {
  rat acc(0), p(1);
  for (const rat& c : inv_theta_coeffs) {
    acc += c / p;
    p *= theta;
  }
  return acc;
}

double ThetaExpansion::eval_double(double theta) const {
  double acc = 0, p = 1;
  for (const rat& c : inv_theta_coeffs) {
    acc += c.convert_to<double>() / p;
    p *= theta;
  }
  return acc;
}

// --- shared helpers ---------------------------------------------------------------

namespace {

rat ii(const Polynomial& a, const Polynomial& b) { return (a * b).integrate01(); }

void require_theta_pos(const rat& theta) {
  if (theta <= 0) throw_constraint("mollifier: theta must be positive");
}

}  // namespace

// --- unitary ------------------------------------------------------------------------

rat unitary_mollified(const Polynomial& P1, const Polynomial& P2, const Polynomial& Q1,
                      const Polynomial& Q2, const rat& theta) {
  require_theta_pos(theta);
  if (P1(rat(0)) != 0 || P2(rat(0)) != 0)
    throw_constraint("unitary mollifier: P1, P2 must vanish at 0");
  Polynomial p1 = P1.derivative(), p2 = P2.derivative();
  Polynomial q1 = Q1.derivative(), q2 = Q2.derivative();
  rat cross = ii(p1, p2) * ii(Q1, Q2) + theta * ii(p1, P2) * ii(Q1, q2) +
              theta * ii(P1, p2) * ii(q1, Q2) + theta * theta * ii(P1, P2) * ii(q1, q2);
  return P1(rat(1)) * P2(rat(1)) * Q1(rat(0)) * Q2(rat(0)) + cross / theta;
}

// --- symplectic ------------------------------------------------------------------------

rat symplectic_mollified(const Polynomial& P1, const Polynomial& P2, const Polynomial& Q1,
                         const Polynomial& Q2, const rat& theta) {
  require_theta_pos(theta);
  if (!Q1.is_even() || !Q2.is_even())
    throw_constraint("symplectic mollifier: Q1, Q2 must be even polynomials");
  if (P1.vanishing_order() < 2 || P2.vanishing_order() < 2)
    throw_constraint("symplectic mollifier: P must vanish to order 2 at 0");
  Polynomial p1 = P1.derivative(2), p2 = P2.derivative(2);
  Polynomial tq1 = Q1.antiderivative(), tq2 = Q2.antiderivative();
  Polynomial q1 = Q1.derivative(), q2 = Q2.derivative();
  rat it = theta;
  // (1/theta P'' Qt - 4 theta P Q')(...) separates in r and u
  rat quad = ii(p1, p2) * ii(tq1, tq2) / (it * it) - 4 * ii(p1, P2) * ii(tq1, q2) -
             4 * ii(P1, p2) * ii(q1, tq2) + 16 * it * it * ii(P1, P2) * ii(q1, q2);
  rat bnd1 = P1.derivative()(rat(1)) * tq1(rat(1)) / it + 2 * P1(rat(1)) * Q1(rat(1));
  rat bnd2 = P2.derivative()(rat(1)) * tq2(rat(1)) / it + 2 * P2(rat(1)) * Q2(rat(1));
  return quad / (8 * it) + bnd1 * bnd2 / 4;
}

rat symplectic_sixterm_at_zero(const Polynomial& P1, const Polynomial& P2, const rat& theta) {
  require_theta_pos(theta);
  Polynomial d1 = P1.derivative(), d2 = P2.derivative();
  Polynomial s1 = P1.derivative(2), s2 = P2.derivative(2);
  rat t = theta;
  rat acc = ii(s1, s2) / (2 * t * t * t) / 3;
  acc += (ii(s1, d2) + ii(d1, s2)) / (t * t);
  acc += 2 * (ii(s1, P2) + ii(P1, s2)) / t;
  acc += 4 * ii(d1, d2) / t;
  acc += 4 * (ii(d1, P2) + ii(P1, d2));
  return acc;
}

// --- orthogonal -----------------------------------------------------------------------

rat orthogonal_mollified_kmv(const Polynomial& P, const Polynomial& Q, const rat& theta) {
  require_theta_pos(theta);
  if (!Q.is_even()) throw_constraint("orthogonal mollifier: Q must be even");
  if (P(rat(0)) != 0) throw_constraint("orthogonal mollifier: P must vanish at 0");
  rat t = theta;
  rat bnd = Q(rat(1)) * P.derivative()(rat(1)) + t * Q.derivative()(rat(1)) * P(rat(1));
  Polynomial pp = P.derivative(2), qq = Q.derivative(2);
  rat dbl = ii(pp, pp) * ii(Q, Q) - 2 * t * t * ii(pp, P) * ii(Q, qq) +
            t * t * t * t * ii(P, P) * ii(qq, qq);
  return (bnd * bnd + dbl / t) / (t * t);
}

rat orthogonal_mollified(const Polynomial& P1, const Polynomial& P2, const Polynomial& Q1,
                         const Polynomial& Q2, const rat& theta, OrthogonalVariant variant) {
  if (variant == OrthogonalVariant::kmv) return orthogonal_mollified_kmv(P1, Q1, theta);
  require_theta_pos(theta);
  if (!Q1.is_even() || !Q2.is_even())
    throw_constraint("orthogonal mollifier: Q1, Q2 must be even polynomials");
  if (P1(rat(0)) != 0 || P2(rat(0)) != 0)
    throw_constraint("orthogonal mollifier: P1, P2 must vanish at 0");
  rat t = theta;
  Polynomial d1 = P1.derivative(), d2 = P2.derivative();
  Polynomial tp1 = P1.antiderivative(), tp2 = P2.antiderivative();
  Polynomial qq1 = Q1.derivative(2), qq2 = Q2.derivative(2);
  rat quad = ii(d1, d2) * ii(Q1, Q2) - t * t * ii(d1, tp2) * ii(Q1, qq2) -
             t * t * ii(tp1, d2) * ii(qq1, Q2) + t * t * t * t * ii(tp1, tp2) * ii(qq1, qq2);
  rat bnd1 = P1(rat(1)) * Q1(rat(1)) + t * tp1(rat(1)) * Q1.derivative()(rat(1));
  rat bnd2 = P2(rat(1)) * Q2(rat(1)) + t * tp2(rat(1)) * Q2.derivative()(rat(1));
  rat third = t * (Q1.derivative()(rat(0)) * Q2(rat(0)) * ii(tp1, d2) +
                   Q1(rat(0)) * Q2.derivative()(rat(0)) * ii(d1, tp2));
  return quad / t + bnd1 * bnd2 + third;
}

// --- fourth moment, diagonal mollifier ---------------------------------------------------

ThetaExpansion fourth_mollified_diag(const Polynomial& Q, const Polynomial& P) {
  if (Q.vanishing_order() < 4 || P.vanishing_order() < 4)
    throw_constraint("fourth-moment mollifier: P and Q must vanish to order 4 at 0");
  Polynomial w({rat(1, 6)});
  w = w * Polynomial({1, -1}) * Polynomial({1, -1}) * Polynomial({1, -1});  // (1-x)^3/6
  auto J = [&](const Polynomial& a, const Polynomial& b) { return (w * a * b).integrate01(); };
  Polynomial P1 = P.derivative(), P2 = P.derivative(2), P3 = P.derivative(3),
             P4 = P.derivative(4);
  Polynomial Q1 = Q.derivative(), Q2 = Q.derivative(2), Q3 = Q.derivative(3),
             Q4 = Q.derivative(4);
  ThetaExpansion e;
  e.inv_theta_coeffs = {
      P(rat(1)) * Q(rat(1)),
      2 * (J(Q4, P1) + J(Q1, P4)) + 8 * (J(Q3, P2) + J(Q2, P3)),
      2 * (J(Q4, P2) + J(Q2, P4)) + 4 * J(Q3, P3),
      rat(2, 3) * (J(Q4, P3) + J(Q3, P4)),
      rat(1, 12) * J(Q4, P4),
  };
  return e;
}

// --- multivariate polynomials over 5 symbols ----------------------------------------------
//
// Variable 0 is the symbol T = 1/theta of the determinant kernel; variables
// 1..4 are either the kernel offsets s_j or the integration variables eta_j.

namespace {

using Key = std::array<uint8_t, 5>;

struct MPoly {
  std::map<Key, rat> m;

  void add(const Key& k, const rat& c) {
    if (c == 0) return;
    auto [it, fresh] = m.emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) m.erase(it);
    }
  }
  static MPoly constant(const rat& c) {
    MPoly p;
    p.add(Key{0, 0, 0, 0, 0}, c);
    return p;
  }
  MPoly operator+(const MPoly& o) const {
    MPoly r = *this;
    for (auto& [k, c] : o.m) r.add(k, c);
    return r;
  }
  MPoly operator-(const MPoly& o) const {
    MPoly r = *this;
    for (auto& [k, c] : o.m) r.add(k, -c);
    return r;
  }
  MPoly operator*(const MPoly& o) const {
    MPoly r;
    for (auto& [ka, ca] : m)
      for (auto& [kb, cb] : o.m) {
        Key k;
        for (int i = 0; i < 5; ++i) k[i] = (uint8_t)(ka[i] + kb[i]);
        r.add(k, ca * cb);
      }
    return r;
  }
  MPoly scaled(const rat& c) const {
    MPoly r;
    for (auto& [k, v] : m) r.add(k, v * c);
    return r;
  }
  MPoly antiderivative(int v) const {
    MPoly r;
    for (auto& [k, c] : m) {
      Key nk = k;
      nk[v] = (uint8_t)(k[v] + 1);
      r.add(nk, c / rat(k[v] + 1));
    }
    return r;
  }
  // substitute var v := b0 + b1 * var w   (w = -1 for a pure constant)
  MPoly subst_affine(int v, const rat& b0, const rat& b1, int w) const {
    MPoly r;
    for (auto& [k, c] : m) {
      int e = k[v];
      Key base = k;
      base[v] = 0;
      // (b0 + b1 x_w)^e
      rat binom = 1;
      for (int j = 0; j <= e; ++j) {
        // binom = C(e, j), term b0^{e-j} (b1 x_w)^j
        rat coef = c * binom;
        rat p0 = 1;
        for (int q = 0; q < e - j; ++q) p0 *= b0;
        rat p1 = 1;
        for (int q = 0; q < j; ++q) p1 *= b1;
        coef *= p0 * p1;
        if (coef != 0) {
          Key nk = base;
          if (j > 0) {
            if (w < 0) throw_numeric("mpoly: nonconstant power of a constant bound");
            nk[w] = (uint8_t)(nk[w] + j);
          }
          r.add(nk, coef);
        }
        binom = binom * (e - j) / (j + 1);
      }
    }
    return r;
  }
  // integrate var v from an affine lower bound to an affine upper bound
  MPoly integrate(int v, const rat& lo0, const rat& lo1, int lo_w, const rat& up0,
                  const rat& up1, int up_w) const {
    MPoly F = antiderivative(v);
    return F.subst_affine(v, up0, up1, up_w) - F.subst_affine(v, lo0, lo1, lo_w);
  }
  rat constant_value() const {
    if (m.empty()) return 0;
    if (m.size() != 1 || m.begin()->first != Key{0, 0, 0, 0, 0})
      throw_numeric("mpoly: expected a constant after full integration");
    return m.begin()->second;
  }
};

// Determinant kernel entry exponent/sign shared by symbolic, exact and
// numeric evaluation: row j, column i (1-based), for index k.
struct IvEntrySpec {
  int exponent;  // < 0 means the entry is zero
  int sign;      // applied to the whole entry
  int arg;       // which u_j feeds the entry (1-based)
};

IvEntrySpec iv_entry(int k, int j, int i) {
  if (i <= k) return {2 * k + 1 - i - j, +1, i};
  int ip = i - k;
  int e = 2 * k + 1 - ip - j;
  return {e, (e >= 0 && e % 2 == 1) ? -1 : +1, i};
}

MPoly iv_symbolic_k2() {
  // 4x4 determinant, entries ((T/2 + s_i)^e / e!) with the sign pattern of
  // iv_entry; Leibniz over the 24 permutations.
  const int k = 2, n = 4;
  std::array<std::array<MPoly, 4>, 4> E;
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= n; ++i) {
      auto spec = iv_entry(k, j, i);
      MPoly cell;
      if (spec.exponent >= 0) {
        MPoly base;
        base.add(Key{1, 0, 0, 0, 0}, rat(1, 2));  // T/2
        Key sk{0, 0, 0, 0, 0};
        sk[spec.arg] = 1;
        base.add(sk, 1);
        MPoly pw = MPoly::constant(1);
        rat fact = 1;
        for (int q = 1; q <= spec.exponent; ++q) {
          pw = pw * base;
          fact *= q;
        }
        cell = pw.scaled(rat(spec.sign) / fact);
      }
      E[j - 1][i - 1] = std::move(cell);
    }
  MPoly det;
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    int inv = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        if (perm[a] > perm[b]) ++inv;
    MPoly prod = MPoly::constant(inv % 2 ? rat(-1) : rat(1));
    for (int row = 0; row < 4; ++row) prod = prod * E[row][perm[row]];
    det = det + prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

// mixed partial d^{a1}..d^{a4} I_v at s = 0, as coefficients of T^m
std::vector<rat> iv_partial_at_zero(const MPoly& iv, const std::array<int, 4>& a) {
  std::vector<rat> out;
  rat fact = 1;
  for (int j = 0; j < 4; ++j)
    for (int q = 2; q <= a[j]; ++q) fact *= q;
  for (auto& [k, c] : iv.m) {
    bool match = true;
    for (int j = 0; j < 4; ++j)
      if (k[j + 1] != a[j]) { match = false; break; }
    if (!match) continue;
    if ((size_t)k[0] >= out.size()) out.resize(k[0] + 1, rat(0));
    out[k[0]] += c * fact;
  }
  return out;
}

// univariate polynomial composed with (eta_a + eta_b)/2
MPoly compose_half_sum(const Polynomial& P, int va, int vb) {
  MPoly arg;
  Key ka{0, 0, 0, 0, 0}, kb{0, 0, 0, 0, 0};
  ka[va] = 1;
  kb[vb] = 1;
  arg.add(ka, rat(1, 2));
  arg.add(kb, rat(1, 2));
  MPoly res;
  // Horner
  const auto& c = P.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) res = res * arg + MPoly::constant(*it);
  return res;
}

// integral over R = {eta in [-1,1]^4 : eta1+eta2, eta3+eta4, eta1+eta3,
// eta2+eta4 >= 0}, split into the two cells eta2 <= eta3 and eta3 < eta2
// where every bound is a single affine function.
rat integrate_over_R(const MPoly& f) {
  const rat zero = 0, one = 1, none = -1;
  // cell A: eta2 <= eta3; eta1, eta4 in [-eta2, 1]; eta3 in [eta2, 1]; eta2 in [-1, 1]
  MPoly a = f.integrate(1, zero, none, 2, one, zero, -1);
  a = a.integrate(4, zero, none, 2, one, zero, -1);
  a = a.integrate(3, zero, one, 2, one, zero, -1);
  a = a.integrate(2, none, zero, -1, one, zero, -1);
  // cell B: eta3 < eta2; eta1, eta4 in [-eta3, 1]; eta2 in [eta3, 1]; eta3 in [-1, 1]
  MPoly b = f.integrate(1, zero, none, 3, one, zero, -1);
  b = b.integrate(4, zero, none, 3, one, zero, -1);
  b = b.integrate(2, zero, one, 3, one, zero, -1);
  b = b.integrate(3, none, zero, -1, one, zero, -1);
  return a.constant_value() + b.constant_value();
}

}  // namespace

rat r_region_volume() { return integrate_over_R(MPoly::constant(1)); }

double r_region_volume_mc(int64_t samples, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int64_t hits = 0;
  for (int64_t i = 0; i < samples; ++i) {
    double e1 = u(rng), e2 = u(rng), e3 = u(rng), e4 = u(rng);
    if (e1 + e2 >= 0 && e3 + e4 >= 0 && e1 + e3 >= 0 && e2 + e4 >= 0) ++hits;
  }
  return 16.0 * (double)hits / (double)samples;
}

ThetaExpansion fourth_mollified_split(const Polynomial& P1, const Polynomial& P2,
                                      const Polynomial& Q1, const Polynomial& Q2) {
  for (const Polynomial* p : {&P1, &P2, &Q1, &Q2})
    if (p->vanishing_order() < 2)
      throw_constraint("split fourth-moment mollifier: all four polynomials must vanish "
                       "to order 2 at 0");
  static const MPoly iv = iv_symbolic_k2();

  // cache of R-integrals keyed by derivative orders (cP1, cP2, cQ1, cQ2)
  std::map<std::array<int, 4>, rat> rint;
  auto r_integral = [&](const std::array<int, 4>& c) -> const rat& {
    auto it = rint.find(c);
    if (it != rint.end()) return it->second;
    MPoly f = compose_half_sum(P1.derivative(c[0]), 1, 2) *
              compose_half_sum(P2.derivative(c[1]), 3, 4) *
              compose_half_sum(Q1.derivative(c[2]), 1, 3) *
              compose_half_sum(Q2.derivative(c[3]), 2, 4);
    return rint.emplace(c, integrate_over_R(f)).first->second;
  };

  // accumulate T-polynomial weights over the 256 ways the eight derivatives
  // split between the polynomial factors and the kernel
  std::map<std::array<int, 4>, std::vector<rat>> weights;
  for (int e = 0; e < 16; ++e)
    for (int f = 0; f < 16; ++f) {
      auto bit = [](int m, int j) { return (m >> j) & 1; };
      std::array<int, 4> a{};
      for (int j = 0; j < 4; ++j) a[j] = bit(e, j) + bit(f, j);
      // derivative orders: u1,u2 -> Q1; u3,u4 -> P1; U1,U2 -> Q2; U3,U4 -> P2
      std::array<int, 4> c{};
      c[0] = 2 - bit(e, 2) - bit(e, 3);  // P1
      c[1] = 2 - bit(f, 2) - bit(f, 3);  // P2
      c[2] = 2 - bit(e, 0) - bit(e, 1);  // Q1
      c[3] = 2 - bit(f, 0) - bit(f, 1);  // Q2
      std::vector<rat> part = iv_partial_at_zero(iv, a);
      if (part.empty()) continue;
      auto& w = weights[c];
      if (w.size() < part.size()) w.resize(part.size(), rat(0));
      for (size_t m = 0; m < part.size(); ++m) w[m] += part[m];
    }

  std::vector<rat> tpoly;  // coefficients of T^m, T = 1/theta
  for (auto& [c, w] : weights) {
    bool all_zero = std::all_of(w.begin(), w.end(), [](const rat& x) { return x == 0; });
    if (all_zero) continue;
    const rat& R = r_integral(c);
    if (R == 0) continue;
    if (tpoly.size() < w.size()) tpoly.resize(w.size(), rat(0));
    for (size_t m = 0; m < w.size(); ++m) tpoly[m] += R * w[m];
  }
  ThetaExpansion out;
  out.inv_theta_coeffs.resize(tpoly.size());
  for (size_t m = 0; m < tpoly.size(); ++m) out.inv_theta_coeffs[m] = tpoly[m] / 16;
  return out;
}

// --- mixed third-power moment ---------------------------------------------------------

rat i3_mixed(const Polynomial& P1, const Polynomial& P2, const rat& theta1, const rat& theta2) {
  if (!(theta1 >= theta2 && theta2 > 0))
    throw_constraint("i3: need theta1 >= theta2 > 0");
  if (P1.vanishing_order() < 2 || P2.vanishing_order() < 2)
    throw_constraint("i3: P1, P2 must vanish with their first derivatives at 0");
  rat q = theta2 / theta1;
  // evaluate P1-derivatives along eta -> 1 + (1-eta) theta2/theta1
  Polynomial c1 = P1.derivative().compose_linear(-q, 1 + q);
  Polynomial c2 = P1.derivative(2).compose_linear(-q, 1 + q);
  Polynomial wt({1, -1});  // (1 - eta)
  Polynomial p2d1 = P2.derivative(), p2d2 = P2.derivative(2);
  rat t1 = theta1;
  rat integral = ((c1 * p2d2 * wt).integrate01()) / t1 +
                 2 * theta2 / (t1 * t1) * ((c2 * p2d1 * wt).integrate01()) +
                 ((c2 * p2d2 * wt).integrate01()) / (2 * t1 * t1);
  return P1(rat(1)) * P2(rat(1)) + integral;
}

// --- non-vanishing ratios ----------------------------------------------------------------

rat nonvanishing_ratio(const Polynomial& P, const rat& theta, int k) {
  require_theta_pos(theta);
  if (k < 0) throw_constraint("nonvanishing: k must be >= 0");
  if (P(rat(0)) != 0) throw_constraint("nonvanishing: P must vanish at 0");
  rat p1 = P(rat(1));
  if (p1 == 0) throw_constraint("nonvanishing: P(1) must be nonzero");
  Polynomial d = P.derivative();
  rat den = p1 * p1 + ii(d, d) / (theta * rat(2 * k + 1));
  if (k > 0) den += 4 * theta * rat(k * k, 2 * k - 1) * ii(P, P);
  return p1 * p1 / den;
}

rat nonvanishing_ratio_two_piece(const Polynomial& P, const rat& theta, const rat& a) {
  require_theta_pos(theta);
  if (P(rat(0)) != 0) throw_constraint("nonvanishing: P must vanish at 0");
  rat p1 = P(rat(1));
  Polynomial d = P.derivative();
  rat base = p1 * p1 + ii(d, d) / theta;
  rat num = (1 + a) * (1 + a) * p1 * p1;
  rat den = (1 + a * a) * base + 2 * a * p1 * p1;
  if (den == 0) throw_constraint("nonvanishing: degenerate two-piece denominator");
  return num / den;
}

PolyOptimum optimize_nonvanishing_poly(const rat& theta, int k, int degree_cap) {
  require_theta_pos(theta);
  if (k < 0) throw_constraint("optimizer: k must be >= 0");
  if (degree_cap < 1 || degree_cap > kMaxDegree)
    throw_constraint("optimizer: degree cap must be in 1..64");
  const int D = degree_cap;
  rat A = rat(1) / (theta * rat(2 * k + 1));
  rat B = k > 0 ? 4 * theta * rat(k * k, 2 * k - 1) : rat(0);
  // M[i][j] = A ij/(i+j-1) + B/(i+j+1), coefficients of x^1..x^D
  std::vector<std::vector<rat>> M(D, std::vector<rat>(D + 1, rat(0)));
  for (int i = 1; i <= D; ++i)
    for (int j = 1; j <= D; ++j)
      M[i - 1][j - 1] = A * rat(i * j, i + j - 1) + B / rat(i + j + 1);
  for (int i = 0; i < D; ++i) M[i][D] = 1;  // solve M x = ones
  // rational Gaussian elimination with pivoting
  for (int col = 0; col < D; ++col) {
    int piv = -1;
    for (int r = col; r < D; ++r)
      if (M[r][col] != 0) { piv = r; break; }
    if (piv < 0) throw_numeric("optimizer: singular denominator form");
    std::swap(M[col], M[piv]);
    for (int r = 0; r < D; ++r) {
      if (r == col || M[r][col] == 0) continue;
      rat f = M[r][col] / M[col][col];
      for (int c2 = col; c2 <= D; ++c2) M[r][c2] -= f * M[col][c2];
    }
  }
  std::vector<rat> x(D);
  rat sum = 0;
  for (int i = 0; i < D; ++i) {
    x[i] = M[i][D] / M[i][i];
    sum += x[i];
  }
  if (sum == 0) throw_numeric("optimizer: singular constraint normalization");
  rat lambda = 1 / sum;  // minimized form value
  std::vector<rat> coeffs(D + 1, rat(0));
  for (int i = 0; i < D; ++i) coeffs[i + 1] = lambda * x[i];
  PolyOptimum out;
  out.P = Polynomial(std::move(coeffs));
  out.min_form = lambda;
  out.ratio = 1 / (1 + lambda);
  return out;
}

SinhOptimum optimize_nonvanishing_sinh(double theta, int k, int taylor_terms) {
  if (theta <= 0) throw_constraint("optimizer: theta must be positive");
  if (k < 1) throw_constraint("optimizer: sinh mode needs k >= 1");
  SinhOptimum out;
  out.lambda = 2.0 * theta * k * std::sqrt((2.0 * k + 1) / (2.0 * k - 1));
  double A = 1.0 / (theta * (2 * k + 1));
  double form = A * out.lambda / std::tanh(out.lambda);
  out.ratio = 1.0 / (1.0 + form);
  // truncated series of sinh(lambda x)/sinh(lambda)
  std::vector<rat> c(2 * taylor_terms, rat(0));
  double sh = std::sinh(out.lambda);
  double num = out.lambda;
  double fact = 1.0;
  for (int j = 0; j < taylor_terms; ++j) {
    int deg = 2 * j + 1;
    if (j > 0) {
      num *= out.lambda * out.lambda;
      fact *= (2.0 * j) * (2.0 * j + 1);
    }
    if (deg < (int)c.size()) c[deg] = rat(num / fact / sh);
  }
  out.taylor = Polynomial(std::move(c));
  return out;
}

// --- empirical cross-check ------------------------------------------------------------------

double empirical_mollified_moment(const Polynomial& P1, const Polynomial& P2,
                                  const Polynomial& Q1, const Polynomial& Q2, double theta,
                                  double T) {
  if (!(T > 0.0) || T > 5000.0)
    throw_constraint("empirical mollified moment: T must be in (0, 5000]");
  if (theta <= 0.0) throw_constraint("empirical mollified moment: theta must be positive");
  double y = std::pow(T, theta);
  if (y > 1e6)
    throw error(errc::constraint,
                "empirical mollified moment: mollifier length T^theta exceeds 10^6");
  int64_t ny = (int64_t)std::floor(y * (1.0 + 1e-14));
  auto mu = arith::CoefficientTable::build(arith::CoeffKind::moebius, std::max<int64_t>(ny, 1));
  double ly = std::log(y);
  struct Term {
    double logn, c1, c2;
  };
  std::vector<Term> terms;
  for (int64_t n = 1; n <= ny; ++n) {
    long long m = mu.ivalue(n);
    if (m == 0) continue;
    double arg = (n == 1) ? 1.0 : std::log(y / (double)n) / ly;
    terms.push_back({std::log((double)n), m * P1(arg), m * P2(arg)});
  }
  const bool const_q = Q1.degree() <= 0 && Q2.degree() <= 0;
  const double q_const = Q1(0.0) * Q2(0.0);
  const double L = std::log(T);
  ZetaEvalPlan plan;

  auto mollifier_pair = [&](double t, cplx* m1, cplx* m2c) {
    cplx a(0), b(0);
    for (const auto& tm : terms) {
      cplx np = std::exp(cplx(-0.5 * tm.logn, -t * tm.logn));  // n^{-s}
      a += tm.c1 * np;
      b += tm.c2 * np;
    }
    *m1 = a;
    *m2c = std::conj(b);
  };

  auto integrand = [&](double t) -> double {
    cplx m1, m2c;
    mollifier_pair(t, &m1, &m2c);
    if (const_q) {
      double z = specfun::hardy_Z_fast(t);
      return q_const * z * z * (m1 * m2c).real();
    }
    // Q(-1/log T d/da) zeta(s+a)|_0 = sum q_m (-1/log T)^m zeta^{(m)}(s)
    cplx s(0.5, t);
    cplx A1(0), A2(0);
    for (int m = 0; m <= std::max(Q1.degree(), Q2.degree()); ++m) {
      cplx zm = specfun::zeta_derivative(s, m, plan);
      double scale = std::pow(-1.0 / L, m);
      if (m <= Q1.degree()) A1 += Q1.coeff(m).convert_to<double>() * scale * zm;
      if (m <= Q2.degree()) A2 += Q2.coeff(m).convert_to<double>() * scale * std::conj(zm);
    }
    return (A1 * A2 * m1 * m2c).real();
  };

  int panels = (int)std::ceil(T / 0.5);
  double integral = quad::integrate_fixed(integrand, 0.0, T, panels);
  return integral / T;
}

// --- determinant kernel, numeric and exact ----------------------------------------------------

double iv_determinant(int k, double theta, const std::vector<double>& u) {
  if (k < 1) throw_constraint("iv_determinant: k must be >= 1");
  if (theta <= 0) throw_constraint("iv_determinant: theta must be positive");
  if ((int)u.size() != 2 * k) throw_constraint("iv_determinant: u must have 2k entries");
  int n = 2 * k;
  std::vector<double> a(n * n, 0.0);
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= n; ++i) {
      auto spec = iv_entry(k, j, i);
      if (spec.exponent < 0) continue;
      double fact = 1;
      for (int q = 2; q <= spec.exponent; ++q) fact *= q;
      a[(j - 1) * n + (i - 1)] =
          spec.sign * std::pow(1.0 / (2.0 * theta) + u[spec.arg - 1], spec.exponent) / fact;
    }
  // LU with partial pivoting
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (a[piv * n + c] == 0.0) return 0.0;
    if (piv != c) {
      for (int q = 0; q < n; ++q) std::swap(a[piv * n + q], a[c * n + q]);
      det = -det;
    }
    det *= a[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      double f = a[r * n + c] / a[c * n + c];
      for (int q = c; q < n; ++q) a[r * n + q] -= f * a[c * n + q];
    }
  }
  return det;
}

rat iv_determinant_exact(int k, const rat& theta, const std::vector<rat>& u) {
  if (k < 1) throw_constraint("iv_determinant: k must be >= 1");
  if (theta <= 0) throw_constraint("iv_determinant: theta must be positive");
  if ((int)u.size() != 2 * k) throw_constraint("iv_determinant: u must have 2k entries");
  int n = 2 * k;
  std::vector<std::vector<rat>> a(n, std::vector<rat>(n, rat(0)));
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= n; ++i) {
      auto spec = iv_entry(k, j, i);
      if (spec.exponent < 0) continue;
      rat base = rat(1) / (2 * theta) + u[spec.arg - 1];
      rat pw = 1, fact = 1;
      for (int q = 1; q <= spec.exponent; ++q) {
        pw *= base;
        fact *= q;
      }
      a[j - 1][i - 1] = rat(spec.sign) * pw / fact;
    }
  rat det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a[r][c] != 0) { piv = r; break; }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      rat f = a[r][c] / a[c][c];
      for (int q = c; q < n; ++q) a[r][q] -= f * a[c][q];
    }
  }
  return det;
}

}  // namespace lfr::mollify
