#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "polydyn/bottcher.hpp"
#include "polydyn/green.hpp"

using namespace polydyn;

namespace {

// g for z^2 - 2 through the semiconjugacy w + 1/w
double cheb_green(cplx z) {
  cplx s = std::sqrt(z * z - 4.0);
  cplx w1 = (z + s) / 2.0, w2 = (z - s) / 2.0;
  return std::log(std::max(std::abs(w1), std::abs(w2)));
}

QPoly qp(std::string_view s) { return std::get<QPoly>(parse_poly(s)); }

cplx rnd_c(std::mt19937& g, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  return {u(g), u(g)};
}

}  // namespace

TEST_CASE("green of z^2 is log|z|") {
  auto g = green_value(qp("2; 1, 0, 0"), cplx(3, 0), 100);
  CHECK(g.escape_step.has_value());
  CHECK(std::abs(g.value - std::log(3.0)) <= 1e-12);
  CHECK(g.error_bound <= 1e-12);
}

TEST_CASE("green of z^2 - 2 against the semiconjugacy oracle") {
  QPoly p = qp("2; 1, 0, -2");
  CHECK(std::abs(cheb_green(3) - 0.9624236501192069) < 1e-12);
  for (cplx z : {cplx(3, 0), cplx(4, 0), cplx(5, 1), cplx(0.5, 0.7), cplx(-2.1, 0)}) {
    auto g = green_value(p, z, 200);
    CHECK(std::abs(g.value - cheb_green(z)) <= 1e-9);
    CHECK(g.error_bound <= 1e-9);
  }
  // points of [-2, 2] never escape
  auto in = green_value(p, cplx(1.3, 0), 300);
  CHECK_FALSE(in.escape_step.has_value());
  CHECK(in.value == 0);
}

TEST_CASE("self-consistency for z^2 + 1 at 0") {
  QPoly p = qp("2; 1, 0, 1");
  auto a = green_value(p, 0, 20), b = green_value(p, 0, 40);
  CHECK(a.value > 0);
  CHECK(std::abs(a.value - b.value) <= a.error_bound + std::pow(2.0, -20));
}

TEST_CASE("critical Green function") {
  CHECK(crit_green({}, cplx(0)) == 0);
  ComplexPoly z2p4 = unicritical_complex(2, 4);
  double G = crit_green(z2p4, {0});
  CHECK(G > 0);
  CHECK(std::abs(G - green_value(z2p4, 0, 1000).value) < 1e-15);
  // z^2 + 4 is conjugate to P_{(),a} with a^2 = 8 via z -> 2z... compare with log+ max{|c|,|a|}
  double Gpca = crit_green({}, std::sqrt(cplx(8)));
  CHECK(std::abs(Gpca - std::log(std::sqrt(8.0))) <= growth_constant(2));
  CHECK(crit_green(unicritical_complex(2, -1), {0}) == 0);
}

TEST_CASE("escape tests") {
  CHECK(escape_test_unicritical(2, 1, 2));
  CHECK_FALSE(escape_test_unicritical(2, -2, 2));
  CHECK(escape_test_unicritical(3, -2, 2));
  CHECK_FALSE(escape_test_pca({}, 0, cplx(0.5, 0.5)));
  CHECK(escape_test_pca({cplx(0)}, 0, cplx(1e6, 0)));
  for (int d = 2; d <= 6; ++d) {
    auto b = escape_box(d);
    CHECK(b.C >= 1);
    CHECK(b.theta >= 0);
  }
}

TEST_CASE("escape_test_pca firing implies g(z) >= log|z| - log 8") {
  std::mt19937 g(41);
  for (int d = 2; d <= 5; ++d) {
    double C = escape_box(d).C;
    for (int it = 0; it < 100; ++it) {
      std::vector<cplx> c;
      for (int i = 0; i < d - 2; ++i) c.push_back(rnd_c(g, 20));
      cplx a = rnd_c(g, 20);
      double m = std::max(1.0, std::abs(a));
      for (auto ci : c) m = std::max(m, std::abs(ci));
      std::uniform_real_distribution<double> f(1.0001, 3), th(0, 6.3);
      cplx z = std::polar(C * m * f(g), th(g));
      REQUIRE(escape_test_pca(c, a, z));
      auto gv = green_value(pca_complex(d, c, a), z, 100);
      CHECK(gv.escape_step.has_value());
      CHECK(gv.value >= std::log(std::abs(z)) - std::log(8.0) - gv.error_bound);
    }
  }
}

TEST_CASE("equivariance g(P(z)) = d g(z)") {
  std::mt19937 g(43);
  for (int d = 2; d <= 5; ++d) {
    for (int it = 0; it < 50; ++it) {
      std::vector<cplx> c;
      for (int i = 0; i < d - 2; ++i) c.push_back(rnd_c(g, 2));
      auto P = pca_complex(d, c, rnd_c(g, 2));
      cplx z = rnd_c(g, 4);
      auto g0 = green_value(P, z, 200), g1 = green_value(P, P(z), 200);
      if (!g0.escape_step) continue;
      CHECK(std::abs(g1.value - d * g0.value) <= 2 * (g1.error_bound + d * g0.error_bound) + 1e-12);
    }
  }
}

TEST_CASE("growth envelopes") {
  std::mt19937 g(47);
  for (int d = 2; d <= 5; ++d) {
    double theta = escape_box(d).theta;
    for (int it = 0; it < 200; ++it) {
      std::vector<cplx> c;
      double scale = std::pow(10.0, std::uniform_real_distribution<double>(-1, 2)(g));
      for (int i = 0; i < d - 2; ++i) c.push_back(rnd_c(g, scale));
      cplx a = rnd_c(g, scale), z = rnd_c(g, 3 * scale);
      double m = std::max(std::abs(z), std::abs(a));
      for (auto ci : c) m = std::max(m, std::abs(ci));
      auto gv = green_value(pca_complex(d, c, a), z, 500);
      CHECK(gv.value <= std::max(0.0, std::log(m)) + theta + gv.error_bound);
    }
  }
  double worst = 0;
  for (int d = 2; d <= 4; ++d) {
    for (int it = 0; it < 300; ++it) {
      double scale = std::pow(10.0, std::uniform_real_distribution<double>(1, 3)(g));
      std::vector<cplx> c;
      for (int i = 0; i < d - 2; ++i) c.push_back(rnd_c(g, scale));
      cplx a = rnd_c(g, scale);
      double m = std::abs(a);
      for (auto ci : c) m = std::max(m, std::abs(ci));
      if (m < 10) continue;
      double G = crit_green(c, a);
      worst = std::max(worst, std::abs(G - std::log(m)) / growth_constant(d));
      CHECK(std::abs(G - std::log(m)) <= growth_constant(d));
    }
  }
  MESSAGE("worst |G - log+max| / C_G = " << worst);
}

TEST_CASE("Bottcher coordinate matches g for z^2 - 2") {
  QPoly p = qp("2; 1, 0, -2");
  auto s = bottcher_series(p, Rational(1), 40);
  for (cplx z : {cplx(4, 0), cplx(0, 4), cplx(-3, 3), cplx(5, 1), cplx(10, -2)}) {
    cplx phi = z * s.alpha.to_double() + s.c0.to_double();
    cplx zi = 1.0 / z, pw = zi;
    for (int j = 1; j <= 40; ++j) {
      phi += s.alpha_j(j).to_double() * pw;
      pw *= zi;
    }
    CHECK(std::abs(std::log(std::abs(phi)) - green_value(p, z, 100).value) <= 1e-9);
  }
}
