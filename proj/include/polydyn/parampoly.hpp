#pragma once

#include <string>
#include <vector>

#include "polydyn/degree.hpp"
#include "polydyn/rational.hpp"

namespace polydyn {

// Polynomial in the parameter t with rational coefficients, stored t^0 first.
class ParamPoly {
 public:
  ParamPoly() = default;
  ParamPoly(long c) : ParamPoly(Rational(c)) {}
  ParamPoly(const Rational& c);
  explicit ParamPoly(std::vector<Rational> coeffs);
  static ParamPoly t();

  // Accepts "[r0, r1, ...]" or a bare rational.
  static ParamPoly parse(std::string_view s);

  Degree degree() const;
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(); }
  Rational leading() const;
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  ParamPoly inverse() const;
  Rational eval(const Rational& t) const;
  ParamPoly compose(const ParamPoly& inner) const;
  std::size_t bits() const;
  std::string str() const;

  ParamPoly& operator+=(const ParamPoly& o);
  ParamPoly& operator-=(const ParamPoly& o);
  ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }

  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
  friend ParamPoly operator-(const ParamPoly& a);
  friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.c_ == b.c_; }
  friend bool operator<(const ParamPoly& a, const ParamPoly& b);

  // Euclidean division in Q[t].
  static void divmod(const ParamPoly& a, const ParamPoly& b, ParamPoly& q, ParamPoly& r);
  static ParamPoly gcd(ParamPoly a, ParamPoly b);  // monic, gcd(0,0)=0
  ParamPoly derivative() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

}  // namespace polydyn
