#pragma once

#include "polydyn/poly.hpp"

namespace polydyn {

// Exact escape predicate for a rational polynomial. Once it fires at z, the
// orbit of z tends to infinity.
//  - z^d + c: |z| >= max{2,|c|}, strict somewhere unless d > 2 (z = 2, c = -2 is fixed).
//  - otherwise: |z| >= R = max{1, (2 + sum|a_i|)/|A|}, which forces |P(z)| >= 2|z|.
class ExactEscape {
 public:
  explicit ExactEscape(const QPoly& p);
  bool fires(const Rational& z) const;
  bool unicritical() const { return unicritical_; }
  const Rational& radius() const { return radius_; }

 private:
  int d_;
  bool unicritical_ = false;
  Rational c_abs_;
  Rational radius_;
};

}  // namespace polydyn
