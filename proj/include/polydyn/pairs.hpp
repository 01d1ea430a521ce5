#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polydyn/polycore.hpp"

namespace polydyn {

// Family P_t over Q[t] with a marked point a(t). The leading coefficient must be a
// nonzero constant.
struct DynPair {
  TPoly family;
  ParamPoly marked;

  DynPair(TPoly f, ParamPoly a);
  int degree() const { return family.deg(); }
  bool is_constant() const;
};

enum class DivisorStatus { Stabilized, Passive, Unknown };

struct DivisorOrder {
  DivisorStatus status = DivisorStatus::Unknown;
  Rational q;
  std::optional<int> stabilized_at;
  std::vector<Degree> witness_degrees;  // deg_t P^n(a) for n = 0, 1, ...
  std::optional<std::pair<int, int>> preperiod;  // P^n(a) = P^m(a)
  std::string reason;
};

DivisorOrder divisor_order(const DynPair& pair, int q_max = 64, std::size_t max_bits = 1000000);

// Largest t-degree among the family's coefficients.
int coefficient_degree_bound(const TPoly& family);

struct Active {
  Rational q;
};
struct PassivePreperiodic {
  int n, m;
};
struct PassiveIsotrivial {};
struct PairUnknown {
  std::string reason;
};
using PairClass = std::variant<Active, PassivePreperiodic, PassiveIsotrivial, PairUnknown>;

PairClass classify_pair(const DynPair& pair, int q_max = 64);
std::string describe(const PairClass& c);

// max over critical points {0, c_1, ...} of the divisor order of (P_{c,a}, c_i);
// nullopt when any order is Unknown.
std::optional<Rational> family_crit_order(const std::vector<ParamPoly>& c, const ParamPoly& a, int q_max = 64);

// Critical points of a family as elements of Q[t] with multiplicity, when P' splits
// into linear factors over Q[t].
std::optional<std::vector<ParamPoly>> critical_points(const TPoly& family);

struct CritOrder {
  Rational q;
  bool exact;  // false: upper bound from the non-Archimedean estimate
  std::optional<bool> unknown;
};

// Exact when the critical points lie in Q[t], otherwise the upper bound
// max{0, deg(a_i)/i, deg(b_i)/i} over the coefficients of P and of P'/(dA).
std::optional<CritOrder> family_crit_order(const TPoly& family, int q_max = 64);

// Evaluate a family at a point of Q[t].
ParamPoly eval_family(const TPoly& family, const ParamPoly& z);

}  // namespace polydyn
