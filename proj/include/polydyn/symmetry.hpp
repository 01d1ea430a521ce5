#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polydyn/polycore.hpp"

namespace polydyn {

// Orders of cyclic groups of roots of unity; nullopt stands for an infinite group.
struct SymmetryData {
  bool monomial = false;
  int degree = 0;
  int mu = 0;
  int m = 0;  // 0 for the monomial z^d
  int rho_exponent = 0;
  std::optional<long> sigma_order;
  std::optional<long> sigma0_order;  // for monomials, the group of d-power roots of unity
  long aut_order = 1;
};

SymmetryData symmetry_group(const QPoly& p);
SymmetryData symmetry_group(const EPoly& p);

std::string sigma_label(const SymmetryData& s);
std::string sigma0_label(const SymmetryData& s);
std::string aut_label(const SymmetryData& s);
std::string describe(const SymmetryData& s);

QPoly chebyshev(int d);

struct CompositionalRoot {
  QPoly q;
  Rational sigma;
};

// P = sigma * Q^{on n} with sigma in Sigma(P) over Q and Q centered; the leading
// coefficient of Q is then +-1. Tried in the order sigma = 1, -1 then lead(Q) = 1, -1.
std::optional<CompositionalRoot> compositional_root(const QPoly& p, int n);
bool is_primitive(const QPoly& p);

// Monic right factor V of degree k with V(0) = 0 and F = U o V, or nullopt.
std::optional<std::pair<QPoly, QPoly>> right_factor(const QPoly& f, int k, const Rational& lead_v = Rational(1));

// Complete decomposition into monic centered indecomposables, outermost first.
std::vector<QPoly> decompose(const QPoly& p);

enum class RittMove { M1, M2, M3, NotAMove };
std::string to_string(RittMove m);
RittMove verify_ritt_move(const QPoly& p, const QPoly& q, const QPoly& pbar, const QPoly& qbar);

struct StratumRow {
  std::string range;
  int k = 0, mu = 0;  // 0,0 for the generic and monomial rows
  QPoly representative;
  SymmetryData data;
  std::optional<int> complexity;
  std::optional<bool> primitive;
};

std::vector<StratumRow> stratify(int d, unsigned seed = 1);
std::string stratify_csv(int d, unsigned seed = 1);

}  // namespace polydyn
