#pragma once

#include <optional>
#include <string>

#include "polydyn/pairs.hpp"

namespace polydyn {

enum class EntangleVerdict { Certificate, Refuted, Undecided };

enum class EntangleStage {
  None,
  Inactive,
  DegreesIndependent,
  DivisorsNotProportional,
  LinearSystemInconsistent,
  FinalIdentityFails,
  Caps,
};

std::string to_string(EntangleVerdict v);
std::string to_string(EntangleStage s);

struct Certificate {
  int n = 0, m = 0;  // n q_A = m q_B
  int N = 0, M = 0;  // d^N = delta^M
  int l = 0, L = 0;
  int zeta = 1;
  TPoly R;
};

struct EntangleOutcome {
  EntangleVerdict verdict = EntangleVerdict::Undecided;
  EntangleStage stage = EntangleStage::None;
  std::optional<Certificate> cert;
  std::optional<Rational> qA, qB;
  std::string detail;

  std::string to_json() const;
};

struct EntangleCaps {
  int q_max = 64;
  int max_degree = 4096;  // z-degree of the composites built along the way
};

EntangleOutcome entangle_decide(const DynPair& A, const DynPair& B, const EntangleCaps& caps = {});

// Rechecks the three identities with hat polynomials recomputed from iterates of the
// families rather than from the Bottcher recursion.
bool verify_certificate(const Certificate& c, const DynPair& A, const DynPair& B);

// Polynomial part of phi^n for a family, from (alpha P^j + c0)^{n/d^j} with d^j > n/2.
TPoly hat_by_iteration(const TPoly& family, int n);

}  // namespace polydyn
