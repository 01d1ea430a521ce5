#pragma once

#include <compare>
#include <string>

namespace polydyn {

// Polynomial degree with a distinguished -infinity for the zero polynomial.
class Degree {
 public:
  constexpr Degree(int v = 0) : v_(v), neg_inf_(false) {}
  static constexpr Degree neg_inf() {
    Degree d;
    d.neg_inf_ = true;
    return d;
  }

  constexpr bool is_neg_inf() const { return neg_inf_; }
  int value() const;
  std::string str() const { return neg_inf_ ? "-inf" : std::to_string(v_); }

  friend constexpr bool operator==(const Degree& a, const Degree& b) {
    return a.neg_inf_ == b.neg_inf_ && (a.neg_inf_ || a.v_ == b.v_);
  }
  friend constexpr std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    if (a.neg_inf_ || b.neg_inf_) return b.neg_inf_ <=> a.neg_inf_;
    return a.v_ <=> b.v_;
  }
  friend constexpr Degree operator+(const Degree& a, const Degree& b) {
    if (a.neg_inf_ || b.neg_inf_) return neg_inf();
    return Degree(a.v_ + b.v_);
  }

 private:
  int v_;
  bool neg_inf_;
};

}  // namespace polydyn
