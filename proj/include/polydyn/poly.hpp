#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "polydyn/algext.hpp"
#include "polydyn/degree.hpp"
#include "polydyn/errors.hpp"
#include "polydyn/parampoly.hpp"
#include "polydyn/rational.hpp"

namespace polydyn {

// Univariate polynomial in z. Coefficients are kept with z^0 first; the text form
// lists them leading-first.
template <class R>
class Poly {
 public:
  using ring_type = R;

  Poly() = default;
  explicit Poly(std::vector<R> ascending) : c_(std::move(ascending)) { trim(); }
  static Poly from_leading_first(std::vector<R> desc) {
    return Poly(std::vector<R>(desc.rbegin(), desc.rend()));
  }
  static Poly constant(const R& c) { return Poly(std::vector<R>{c}); }
  static Poly monomial(const R& c, int k) {
    std::vector<R> v(k + 1, R(0));
    v[k] = c;
    return Poly(std::move(v));
  }
  static Poly identity() { return monomial(R(1), 1); }

  Degree degree() const {
    return c_.empty() ? Degree::neg_inf() : Degree(static_cast<int>(c_.size()) - 1);
  }
  int deg() const { return degree().value(); }
  bool is_zero() const { return c_.empty(); }
  R coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : R(0); }
  R leading() const { return c_.empty() ? R(0) : c_.back(); }
  const std::vector<R>& coeffs() const { return c_; }

  Poly derivative() const {
    std::vector<R> r;
    for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * R(static_cast<long>(i)));
    return Poly(std::move(r));
  }

  R operator()(const R& x) const {
    R acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // this o inner
  Poly compose(const Poly& inner) const {
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it);
    return acc;
  }

  Poly iterate(int n) const {
    if (n < 0) throw DomainError("negative iterate");
    Poly r = identity();
    for (int i = 0; i < n; ++i) r = compose(r);
    return r;
  }

  Poly pow(int n) const {
    if (n < 0) throw DomainError("negative power");
    Poly r = constant(R(1)), b = *this;
    while (n) {
      if (n & 1) r = r * b;
      b = b * b;
      n >>= 1;
    }
    return r;
  }

  Poly scaled(const R& s) const {
    std::vector<R> r = c_;
    for (auto& x : r) x = x * s;
    return Poly(std::move(r));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<R> r(std::max(a.c_.size(), b.c_.size()), R(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a) {
    std::vector<R> r = a.c_;
    for (auto& x : r) x = -x;
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.c_.empty() || b.c_.empty()) return Poly();
    std::vector<R> r(a.c_.size() + b.c_.size() - 1, R(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<R> c_;
};

template <class R>
Poly<R> compose(const Poly<R>& p, const Poly<R>& q) {
  return p.compose(q);
}

using QPoly = Poly<Rational>;
using EPoly = Poly<AlgExt>;
using TPoly = Poly<ParamPoly>;

inline std::string ring_str(const Rational& r) { return r.str(); }
inline std::string ring_str(const AlgExt& r) { return r.str(); }
inline std::string ring_str(const ParamPoly& r) { return r.str(); }

// "d; a0, a1, ..., ad" with a0 the leading coefficient.
template <class R>
std::string to_text(const Poly<R>& p) {
  if (p.is_zero()) return "0; 0";
  int d = p.deg();
  std::string s = std::to_string(d) + ";";
  for (int i = d; i >= 0; --i) {
    s += (i == d ? " " : ", ");
    s += ring_str(p.coeff(i));
  }
  if constexpr (std::is_same_v<R, AlgExt>) {
    for (const auto& c : p.coeffs())
      if (c.modulus()) return s + "; " + c.modulus()->str();
  }
  return s;
}

// Binomial coefficient as a rational.
Rational binomial(long n, long k);

// Elementary symmetric polynomials sigma_0..sigma_n of the given values.
template <class T>
std::vector<T> elementary_symmetric(const std::vector<T>& xs) {
  std::vector<T> s(xs.size() + 1, T(0));
  s[0] = T(1);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t k = i + 1; k >= 1; --k) s[k] = s[k] + s[k - 1] * xs[i];
  return s;
}

}  // namespace polydyn
