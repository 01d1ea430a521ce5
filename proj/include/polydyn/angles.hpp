#pragma once

#include <string>
#include <variant>
#include <vector>

#include "polydyn/errors.hpp"
#include "polydyn/rational.hpp"

namespace polydyn {

// Angles are rationals reduced into [0, 1).
Rational angle(const Rational& x);
Rational times_d(const Rational& a, int d);
// distance on R/Z
Rational circle_distance(const Rational& a, const Rational& b);

struct OrbitType {
  int preperiod;
  int period;
  bool operator==(const OrbitType&) const = default;
};

OrbitType md_orbit(const Rational& a, int d);
OrbitType md_orbit_simulated(const Rational& a, int d);

// F lies in a single component of the circle minus G
bool unlinked(const std::vector<Rational>& F, const std::vector<Rational>& G);

Rational periodic_angle(int d, int n);

struct Portrait {
  int degree = 0;
  std::vector<std::vector<Rational>> sets;
};

enum class PortraitViolation { CP1, CP2, CP3, NotDisjoint };
std::string to_string(PortraitViolation v);
std::vector<PortraitViolation> validate_portrait(const Portrait& p);

Portrait build_portrait(int d, const std::vector<int>& periods, const std::vector<int>& branch_degrees);

struct Equivalent {};
struct Separated {
  int n;
};
struct Undecided {
  int horizon;
};
using ThetaVerdict = std::variant<Equivalent, Separated, Undecided>;

ThetaVerdict theta_equivalent(const Rational& x, const Rational& y, const Portrait& p, int depth);
std::string describe(const ThetaVerdict& v);

}  // namespace polydyn
