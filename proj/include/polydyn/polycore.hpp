#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polydyn/poly.hpp"

namespace polydyn {

using AnyPoly = std::variant<QPoly, EPoly, TPoly>;

AnyPoly parse_poly(std::string_view text);
std::string to_text(const AnyPoly& p);
AnyPoly compose(const AnyPoly& p, const AnyPoly& q);
std::string ring_name(const AnyPoly& p);

// P_{c,a}(z) = z^d/d + sum_{j=2}^{d-1} (-1)^{d-j} sigma_{d-j}(c) z^j / j + a^d
template <class R>
Poly<R> build_pca(int d, const std::vector<R>& c, const R& a) {
  if (d < 2) throw DomainError("build_pca needs d >= 2");
  if (static_cast<int>(c.size()) != d - 2)
    throw DomainError("build_pca needs " + std::to_string(d - 2) + " critical points, got " +
                      std::to_string(c.size()));
  auto s = elementary_symmetric(c);
  std::vector<R> v(d + 1, R(0));
  v[d] = R(Rational(1, d));
  for (int j = 2; j <= d - 1; ++j) {
    R term = s[d - j] * R(Rational(1, j));
    v[j] = ((d - j) % 2) ? -term : term;
  }
  R ad(1);
  for (int i = 0; i < d; ++i) ad = ad * a;
  v[0] = ad;
  return Poly<R>(std::move(v));
}

template <class R>
struct Conjugated {
  Poly<R> poly;  // phi o P o phi^{-1}
  R scale;       // phi(z) = scale*z + shift
  R shift;
};

using NormalForm = std::variant<Conjugated<Rational>, Conjugated<AlgExt>>;

NormalForm normalize_monic_centered(const QPoly& p);
Conjugated<AlgExt> normalize_monic_centered(const EPoly& p);

// A (d-1)-th root of the leading coefficient, adjoining one when needed.
std::variant<Rational, AlgExt> leading_root(const QPoly& p);
std::optional<AlgExt> root_in(const AlgExt& x, int k);

// Conjugate P by phi(z) = scale*z + shift.
template <class R>
Poly<R> conjugate(const Poly<R>& p, const R& scale, const R& shift) {
  R inv = scale.inverse();
  Poly<R> phi_inv = Poly<R>(std::vector<R>{-(shift * inv), inv});
  Poly<R> phi = Poly<R>(std::vector<R>{shift, scale});
  return phi.compose(p.compose(phi_inv));
}

struct Monomial {};

template <class R>
struct Reduced {
  int mu;
  int m;
  Poly<R> p0;
};

template <class R>
bool is_monic_centered(const Poly<R>& p) {
  if (p.is_zero() || p.deg() < 1) return false;
  int d = p.deg();
  return p.leading() == R(1) && p.coeff(d - 1).is_zero();
}

std::vector<int> support(const QPoly& p);
std::vector<int> support(const EPoly& p);
std::vector<int> support(const TPoly& p);

template <class R>
std::variant<Monomial, Reduced<R>> reduced_presentation(const Poly<R>& p) {
  if (p.is_zero() || p.deg() < 2) throw DomainError("reduced presentation needs degree >= 2");
  if (!is_monic_centered(p)) throw DomainError("reduced presentation needs a monic centered polynomial");
  auto sup = support(p);
  if (sup.size() == 1) return Monomial{};
  int mu = sup.front();
  int m = 0;
  for (int e : sup) m = std::gcd(m, e - mu);
  std::vector<R> q((p.deg() - mu) / m + 1, R(0));
  for (int e : sup) q[(e - mu) / m] = p.coeff(e);
  return Reduced<R>{mu, m, Poly<R>(std::move(q))};
}

// Rebuild z^mu * P0(z^m).
template <class R>
Poly<R> from_reduced(const Reduced<R>& r) {
  std::vector<R> v(r.mu + r.m * r.p0.deg() + 1, R(0));
  for (int i = 0; i <= r.p0.deg(); ++i) v[r.mu + r.m * i] = r.p0.coeff(i);
  return Poly<R>(std::move(v));
}

struct Preperiodic {
  int tail;
  int cycle;
  std::vector<Rational> cycle_values;
};
struct Escaping {
  int step;
  Rational value;
};
struct OrbitUnknown {
  int steps;
  std::string reason;
};
using OrbitRecord = std::variant<Preperiodic, Escaping, OrbitUnknown>;

OrbitRecord iterate_orbit(const QPoly& p, const Rational& z0, int max_steps = 4096,
                          std::size_t max_bits = 1000000);

std::string describe(const OrbitRecord& r);

}  // namespace polydyn

namespace polydyn {

// Distinct rational roots, ascending. Uses the rational root theorem; throws
// DomainError if a coefficient is too large to factor by trial division.
std::vector<Rational> rational_roots(const QPoly& p);

// Multiplicity of r as a root of p (0 if not a root).
int root_multiplicity(const QPoly& p, const Rational& r);

}  // namespace polydyn
