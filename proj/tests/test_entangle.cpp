#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "polydyn/bottcher.hpp"
#include "polydyn/entangle.hpp"

using namespace polydyn;

namespace {

ParamPoly T() { return ParamPoly::t(); }
TPoly family(std::vector<ParamPoly> asc) { return TPoly(std::move(asc)); }
TPoly z2t() { return family({T(), 0, 1}); }

// repetition of z -> z^2 + t on Q[t]/(f)
bool preperiodic_mod(const ParamPoly& f, ParamPoly z, int steps = 64) {
  std::set<std::vector<Rational>> seen;
  for (int i = 0; i < steps; ++i) {
    ParamPoly q, r;
    ParamPoly::divmod(z, f, q, r);
    if (!seen.insert(r.coeffs()).second) return true;
    z = r * r + T();
  }
  return false;
}

}  // namespace

TEST_CASE("certificate for (z^2+t, 0) and (z^2+t, -t)") {
  DynPair A(z2t(), 0), B(z2t(), -T());
  auto o = entangle_decide(A, B);
  REQUIRE(o.verdict == EntangleVerdict::Certificate);
  const auto& c = *o.cert;
  CHECK(c.n == 2);
  CHECK(c.m == 1);
  CHECK(c.N == 1);
  CHECK(c.M == 1);
  CHECK(c.l == 1);
  CHECK(c.L == 1);
  CHECK(c.zeta == 1);
  CHECK(c.R == z2t());
  CHECK(*o.qA == Rational(1, 2));
  CHECK(*o.qB == Rational(1));
  CHECK(verify_certificate(c, A, B));

  auto bad = c;
  bad.R = bad.R + TPoly::constant(ParamPoly(1));
  CHECK(!verify_certificate(bad, A, B));
  bad = c;
  bad.zeta = -1;
  CHECK(!verify_certificate(bad, A, B));
}

TEST_CASE("self entanglement") {
  DynPair A(z2t(), 0);
  auto o = entangle_decide(A, A);
  REQUIRE(o.verdict == EntangleVerdict::Certificate);
  CHECK(o.cert->n == 1);
  CHECK(o.cert->m == 1);
  CHECK(o.cert->R == z2t());
  CHECK(verify_certificate(*o.cert, A, A));
}

TEST_CASE("odd family needs zeta = -1") {
  TPoly P = family({0, T(), 0, 1});
  DynPair A(P, 1), B(P, -1);
  auto o = entangle_decide(A, B);
  REQUIRE(o.verdict == EntangleVerdict::Certificate);
  CHECK(o.cert->zeta == -1);
  CHECK(verify_certificate(*o.cert, A, B));
}

TEST_CASE("refutations") {
  auto o = entangle_decide(DynPair(z2t(), 0), DynPair(z2t(), ParamPoly(std::vector<Rational>{1, 1})));
  CHECK(o.verdict == EntangleVerdict::Refuted);
  CHECK(o.stage == EntangleStage::FinalIdentityFails);
  CHECK(*o.qB == Rational(1));

  auto deg = entangle_decide(DynPair(z2t(), 0), DynPair(family({T(), 0, 0, 1}), 0));
  CHECK(deg.verdict == EntangleVerdict::Refuted);
  CHECK(deg.stage == EntangleStage::DegreesIndependent);

  auto ina = entangle_decide(DynPair(family({-2, 0, 1}), 0), DynPair(z2t(), 0));
  CHECK(ina.verdict == EntangleVerdict::Refuted);
  CHECK(ina.stage == EntangleStage::Inactive);

  // z^4 + t is not an iterate shape of z^2 + t
  auto q = entangle_decide(DynPair(z2t(), 0), DynPair(family({T(), 0, 0, 0, 1}), 0));
  CHECK(q.verdict == EntangleVerdict::Refuted);
  CHECK(q.stage == EntangleStage::LinearSystemInconsistent);
}

TEST_CASE("degree relation via iterates") {
  TPoly P = z2t();
  DynPair A(P, 0), B(P.iterate(2), 0);
  auto o = entangle_decide(A, B);
  REQUIRE(o.verdict == EntangleVerdict::Certificate);
  CHECK(o.cert->N == 2);
  CHECK(o.cert->M == 1);
  CHECK(verify_certificate(*o.cert, A, B));
}

TEST_CASE("hat polynomials agree between both derivations") {
  std::vector<TPoly> fams = {z2t(), family({T(), T(), 0, 1}), family({1, 0, T(), 0, 8}),
                             family({T() * T(), 1, T(), Rational(4)})};
  for (const auto& f : fams)
    for (int n = 1; n <= 5; ++n) {
      auto h = bottcher_power(f, param_alpha(f), n, 0).hat;
      CHECK(h == hat_by_iteration(f, n));
    }
}

TEST_CASE("certificate consequence at PCF parameters") {
  // 0 preperiodic for z^2 + t0 forces -t0 preperiodic (its image is P(0)^2 + t0 = P^2(0))
  const ParamPoly t = T();
  auto orbit0 = [&](int k) {
    ParamPoly z = 0;
    for (int i = 0; i < k; ++i) z = z * z + t;
    return z;
  };
  std::vector<ParamPoly> loci;
  for (long r : {0L, -1L, -2L}) loci.push_back(ParamPoly(std::vector<Rational>{Rational(-r), 1}));
  ParamPoly q, rem;
  ParamPoly::divmod(orbit0(3), t, q, rem);
  loci.push_back(q);  // period 3, degree 3
  ParamPoly::divmod(orbit0(4), orbit0(2), q, rem);
  loci.push_back(q);  // period 4, degree 6
  int params = 0;
  for (const auto& f : loci) {
    params += static_cast<int>(f.coeffs().size()) - 1;
    CHECK(preperiodic_mod(f, 0));
    CHECK(preperiodic_mod(f, -t));
  }
  CHECK(params >= 10);
  for (long r : {0L, -1L, -2L}) {
    QPoly P(std::vector<Rational>{Rational(r), 0, 1});
    CHECK(std::holds_alternative<Preperiodic>(iterate_orbit(P, Rational(-r))));
  }
}
