#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "polydyn/parampoly.hpp"

namespace polydyn {

int mobius(long n);

// Number of parameters c with 0 of exact period n for c z^d + 1 (Moebius inversion).
mpz_class pcf_count_periodic(int d, int n);
// Strictly preperiodic parameters with preperiod k and period n.
mpz_class pcf_count_preperiodic(int d, int k, int n);

struct In {
  int budget;
};
struct Out {
  int step;
};
struct MemberUndecided {
  std::string reason;
};
using Membership = std::variant<In, Out, MemberUndecided>;

// Orbit of a(t) under z^d + t, escape test |z| >= max{2, |t|}.
Membership member_M(int d, const std::complex<double>& a, const std::complex<double>& t, int budget);
Membership member_M(int d, const ParamPoly& a, const std::complex<double>& t, int budget);

// a(t) = lambda^-1 t (the definition of M_lambda) or a(t) = lambda t.
enum class Convention { Inverse, Direct };
std::string to_string(Convention c);
Convention parse_convention(const std::string& s);

struct GaussRational {
  Rational re, im;
};

struct MSetReport {
  std::complex<double> lambda;
  Convention convention = Convention::Inverse;
  enum class Verdict { InM, NotInM, Undecided } verdict = Verdict::Undecided;
  bool shortcut = false;   // InM from the containment argument
  bool heuristic = false;  // InM from sampling only
  std::optional<GaussRational> witness;
  std::optional<int> witness_escape_step;  // exact escape of 0 under z^d + t
  std::optional<std::pair<int, int>> witness_index;
  int grid = 0;
  int budget = 0;
  long samples = 0;
  std::optional<double> expected_capacity;  // cap(M_lambda) = 1/|s| for a(t) = s t

  std::string to_json() const;
};

// Grid t = -4 + 8 ix/N + (-4 + 8 iy/N) i, first certified witness in (ix, iy) order.
MSetReport mset_lambda_test(int d, std::complex<double> lambda, int grid, int budget,
                            Convention conv = Convention::Inverse, unsigned threads = 0);

// Exact escape of 0 under z^d + t for Gaussian rational t; returns the step or nullopt
// within max_steps.
std::optional<int> exact_escape_step(int d, const GaussRational& t, const GaussRational& z0, int max_steps = 64);

}  // namespace polydyn
