#pragma once

#include <string>
#include <variant>
#include <vector>

#include "polydyn/polycore.hpp"

namespace polydyn {

// phi(z) = alpha*z + c0 + sum_{j>=1} alpha_j z^{-j}, truncated after alpha_M.
template <class R>
struct BottcherSeries {
  Poly<R> base;
  R alpha;
  R c0;                // alpha * a_1 / (d A)
  std::vector<R> tail;  // tail[j-1] = alpha_j

  int order() const { return static_cast<int>(tail.size()); }
  const R& alpha_j(int j) const {
    if (j < 1 || j > order())
      throw TruncationError("alpha_" + std::to_string(j) + " is beyond truncation order " + std::to_string(order()));
    return tail[j - 1];
  }
  // coefficient of u^i in phi(z)/z, u = 1/z
  R f(int i) const {
    if (i == 0) return alpha;
    if (i == 1) return c0;
    return alpha_j(i - 1);
  }
};

// phi^k = hat + sum_j tail[j-1] z^{-j}
template <class R>
struct HatPoly {
  int k;
  Poly<R> hat;
  std::vector<R> tail;
};

namespace detail {

template <class R>
R ring_int(long n) {
  return R(n);
}

// Series of (phi/z)^k up to u^n via the power recurrence; f_0 must be invertible.
template <class R>
std::vector<R> series_power(const std::vector<R>& f, int k, int n) {
  std::vector<R> g(n + 1, R(0));
  R f0inv = f[0].inverse();
  R p(1);
  for (int i = 0; i < k; ++i) p = p * f[0];
  g[0] = p;
  for (int m = 1; m <= n; ++m) {
    R acc(0);
    for (int i = 1; i <= m && i < static_cast<int>(f.size()); ++i) {
      long w = static_cast<long>(k + 1) * i - m;
      if (w == 0 || f[i].is_zero()) continue;
      acc = acc + ring_int<R>(w) * f[i] * g[m - i];
    }
    g[m] = acc * f0inv * R(Rational(1, m));
  }
  return g;
}

template <class R>
std::vector<R> series_mul(const std::vector<R>& a, const std::vector<R>& b, int n) {
  std::vector<R> r(n + 1, R(0));
  for (int i = 0; i <= n && i < static_cast<int>(a.size()); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= n && j < static_cast<int>(b.size()); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  }
  return r;
}

template <class R>
void check_leading(const R&) {}

inline void check_leading(const ParamPoly& a) {
  if (!a.is_constant()) throw DomainError("leading coefficient must be constant in t; normalize the family first");
}

}  // namespace detail

// Solve phi o P = phi^d coefficient by coefficient for alpha_1..alpha_M.
template <class R>
BottcherSeries<R> bottcher_series(const Poly<R>& p, const R& alpha, int M) {
  using detail::ring_int;
  if (M < 0) throw DomainError("truncation order must be non-negative");
  if (p.is_zero() || p.deg() < 2) throw DomainError("Bottcher series needs degree >= 2");
  const int d = p.deg();
  const R A = p.leading();
  detail::check_leading(A);
  {
    R chk(1);
    for (int i = 0; i < d - 1; ++i) chk = chk * alpha;
    if (!(chk == A)) throw DomainError("alpha^(d-1) must equal the leading coefficient");
  }
  auto a = [&](int i) { return p.coeff(d - i); };  // a_0 = A
  const R dA = ring_int<R>(d) * A;
  const R dAinv = dA.inverse();
  const R Ainv = A.inverse();

  BottcherSeries<R> s{p, alpha, alpha * a(1) * dAinv, {}};
  std::vector<R> f{alpha, s.c0};
  std::vector<R> g = detail::series_power(f, d, 1);

  // V = 1 / (1 + sum_i (a_i/A) u^i), and its powers, for the phi(P)^{-j} terms.
  const int vlen = std::max(0, M - 2 * d + 1);
  std::vector<R> V(vlen + 1, R(0));
  V[0] = R(1);
  for (int n = 1; n <= vlen; ++n) {
    R acc(0);
    for (int i = 1; i <= std::min(n, d); ++i) acc = acc + a(i) * Ainv * V[n - i];
    V[n] = -acc;
  }
  const int jmax = std::max(0, (M - d + 1) / d);
  std::vector<std::vector<R>> Vpow(jmax + 1);
  std::vector<R> Apow(jmax + 1, R(1));
  if (jmax >= 1) {
    Vpow[1] = V;
    for (int j = 2; j <= jmax; ++j) Vpow[j] = detail::series_mul(Vpow[j - 1], V, vlen);
    for (int j = 1; j <= jmax; ++j) Apow[j] = Apow[j - 1] * Ainv;
  }

  const R alpha_inv = alpha.inverse();
  for (int step = 1; step <= M; ++step) {
    const int n = step + 1;
    R rest(0);
    for (int i = 1; i <= step; ++i) {
      long w = static_cast<long>(d + 1) * i - n;
      if (w == 0 || f[i].is_zero()) continue;
      rest = rest + ring_int<R>(w) * f[i] * g[n - i];
    }
    rest = rest * alpha_inv * R(Rational(1, n));
    // coefficient of z^{d-1-step} in phi(P(z))
    R h(0);
    if (step + 1 <= d) h = alpha * a(step + 1);
    if (step == d - 1) h = h + s.c0;
    const int l = step - d + 1;
    for (int j = 1; d * j <= l; ++j) {
      h = h + s.tail[j - 1] * Apow[j] * Vpow[j][l - d * j];
    }
    R aj = (h - rest) * dAinv;
    s.tail.push_back(aj);
    f.push_back(aj);
    g.push_back(rest + dA * aj);
  }
  return s;
}

// Needs alpha_1..alpha_{k+M-1}.
template <class R>
HatPoly<R> bottcher_power(const BottcherSeries<R>& s, int k, int M) {
  if (k < 1) throw DomainError("power k must be at least 1");
  if (M < 0) throw DomainError("truncation order must be non-negative");
  if (s.order() < k + M - 1)
    throw TruncationError("series order " + std::to_string(s.order()) + " is too small for power " +
                          std::to_string(k) + " with tail " + std::to_string(M));
  std::vector<R> f;
  for (int i = 0; i <= k + M; ++i) f.push_back(s.f(i));
  auto g = detail::series_power(f, k, k + M);
  std::vector<R> hat(k + 1, R(0));
  for (int i = 0; i <= k; ++i) hat[k - i] = g[i];
  HatPoly<R> h{k, Poly<R>(std::move(hat)), {}};
  for (int j = 1; j <= M; ++j) h.tail.push_back(g[k + j]);
  return h;
}

template <class R>
HatPoly<R> bottcher_power(const Poly<R>& p, const R& alpha, int k, int M) {
  return bottcher_power(bottcher_series(p, alpha, std::max(0, k + M - 1)), k, M);
}

template <class R>
bool verify_hat_functoriality(const Poly<R>& p, const HatPoly<R>& hk, const HatPoly<R>& hkd) {
  if (hkd.k != hk.k * p.deg()) return false;
  return hk.hat.compose(p) == hkd.hat;
}

template <class R>
bool verify_hat_functoriality(const Poly<R>& p, const R& alpha, int k) {
  auto s = bottcher_series(p, alpha, k * p.deg() - 1);
  return verify_hat_functoriality(p, bottcher_power(s, k, 0), bottcher_power(s, k * p.deg(), 0));
}

// Ring-dispatching entry points: alpha is chosen as the generator of the extension
// when the leading coefficient has no (d-1)-th root in the ring.
using AnyBottcher = std::variant<BottcherSeries<Rational>, BottcherSeries<AlgExt>, BottcherSeries<ParamPoly>>;
using AnyHat = std::variant<HatPoly<Rational>, HatPoly<AlgExt>, HatPoly<ParamPoly>>;

AnyBottcher bottcher_series(const AnyPoly& p, int M);
AnyHat bottcher_power(const AnyPoly& p, int k, int M);
bool verify_hat_functoriality(const AnyPoly& p, int k);

// alpha for a ParamPoly family: a rational (d-1)-th root of the constant leading term.
ParamPoly param_alpha(const TPoly& p);

}  // namespace polydyn
