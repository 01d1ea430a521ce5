#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polydyn/rational.hpp"

namespace polydyn {

// Relation alpha^e = A.
struct Modulus {
  int e = 1;
  Rational A;
  friend bool operator==(const Modulus&, const Modulus&) = default;
  std::string str() const { return "alpha^" + std::to_string(e) + " = " + A.str(); }
};

// Element of Q[alpha]/(alpha^e - A). An element built from a bare rational has no
// modulus yet and adopts the modulus of whatever it is combined with.
class AlgExt {
 public:
  AlgExt() = default;
  AlgExt(long c) : AlgExt(Rational(c)) {}
  AlgExt(const Rational& c) : coords_{c} {}
  AlgExt(const Modulus& m, std::vector<Rational> coords);
  static AlgExt generator(const Modulus& m);

  const std::optional<Modulus>& modulus() const { return mod_; }
  // Coordinates on 1, alpha, ..., alpha^{e-1}; a single entry when unbound.
  const std::vector<Rational>& coords() const { return coords_; }
  Rational coord(std::size_t i) const { return i < coords_.size() ? coords_[i] : Rational(); }
  AlgExt bound_to(const Modulus& m) const;

  bool is_zero() const;
  bool is_rational() const;
  Rational as_rational() const;  // throws unless is_rational()
  AlgExt inverse() const;
  std::string str() const;

  friend AlgExt operator+(const AlgExt& a, const AlgExt& b);
  friend AlgExt operator-(const AlgExt& a, const AlgExt& b);
  friend AlgExt operator*(const AlgExt& a, const AlgExt& b);
  friend AlgExt operator-(const AlgExt& a);
  AlgExt& operator+=(const AlgExt& o) { return *this = *this + o; }
  AlgExt& operator-=(const AlgExt& o) { return *this = *this - o; }
  AlgExt& operator*=(const AlgExt& o) { return *this = *this * o; }
  friend bool operator==(const AlgExt& a, const AlgExt& b);
  friend bool operator<(const AlgExt& a, const AlgExt& b);

 private:
  std::optional<Modulus> mod_;
  std::vector<Rational> coords_{Rational()};
};

// Parses "{c0, c1, ...}" (unbound until given a modulus) or a bare rational.
AlgExt parse_algext(std::string_view s, const std::optional<Modulus>& m);

}  // namespace polydyn
