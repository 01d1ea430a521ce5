// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "bottcher_oracle.hpp"
#include "polydyn/angles.hpp"
#include "polydyn/bottcher.hpp"
#include "polydyn/cli.hpp"
#include "polydyn/dyngraph.hpp"
#include "polydyn/entangle.hpp"
#include "polydyn/green.hpp"
#include "polydyn/pairs.hpp"
#include "polydyn/render.hpp"
#include "polydyn/unicritical.hpp"

#include "json.hpp"

using namespace polydyn;

namespace {

struct Check {
  bool ok = true;
  std::string why;
  void require(bool c, const std::string& msg) {
    if (!c && ok) {
      ok = false;
      why = msg;
    }
  }
};

QPoly qp(std::string_view s) { return std::get<QPoly>(parse_poly(s)); }
TPoly tpoly(std::string_view s) { return std::get<TPoly>(parse_poly(s)); }

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Rational rnd_rational(std::mt19937& g) {
  std::uniform_int_distribution<int> n(-6, 6), den(1, 4);
  return Rational(n(g), den(g));
}

QPoly random_monic_centered(std::mt19937& g, int d) {
  std::vector<Rational> v(d + 1);
  v[d] = Rational(1);
  for (int i = 0; i < d - 1; ++i) v[i] = rnd_rational(g);
  return QPoly(v);
}

// -------- 1
Check c1() {
  Check c;
  std::mt19937 g(101);
  std::uniform_int_distribution<int> dd(2, 6);
  const int M = 20;
  for (int it = 0; it < 50; ++it) {
    int d = dd(g);
    QPoly p = random_monic_centered(g, d);
    auto s = bottcher_series(p, Rational(1), M);
    auto res = oracle::functional_residual(p, s.alpha, s.c0, s.tail);
    for (int j = d; j >= d - M; --j)
      c.require(res.at(j).is_zero(), "nonzero coefficient of z^" + std::to_string(j) + " for " + to_text(p));
  }
  return c;
}

// -------- 2
Check c2() {
  Check c;
  std::mt19937 g(202);
  std::uniform_int_distribution<int> lead(0, 3);
  const Rational leads[] = {Rational(1), Rational(-1), Rational(2), Rational(1, 3)};
  for (int it = 0; it < 20; ++it)
    for (int d = 2; d <= 4; ++d) {
      std::vector<Rational> v(d + 1);
      for (int i = 0; i < d; ++i) v[i] = rnd_rational(g);
      v[d] = leads[lead(g)];
      QPoly p(v);
      for (int k = 1; k <= 3; ++k)
        c.require(verify_hat_functoriality(AnyPoly(p), k), "hat identity fails for " + to_text(p) + ", k=" + std::to_string(k));
    }
  return c;
}

// -------- 3
Check c3() {
  Check c;
  QPoly p = qp("2; 1, 0, -2");
  for (cplx z : {cplx(3, 0), cplx(4, 0), cplx(5, 1)}) {
    cplx s = std::sqrt(z * z - 4.0);
    double want = std::log(std::max(std::abs((z + s) / 2.0), std::abs((z - s) / 2.0)));
    double g = green_value(p, z, 200).value;
    double gp = green_value(p, z * z - 2.0, 200).value;
    std::ostringstream os;
    os << "z=" << z << " err=" << std::abs(g - want) << " equiv=" << std::abs(gp - 2 * g);
    c.require(std::abs(g - want) <= 1e-9, os.str());
    c.require(std::abs(gp - 2 * g) <= 1e-9, os.str());
  }
  return c;
}

// -------- 4
Rational brute_ratio(const TPoly& P, ParamPoly a, int n) {
  for (int i = 0; i < n; ++i) a = P(a);
  mpz_class dn;
  mpz_ui_pow_ui(dn.get_mpz_t(), P.deg(), n);
  return Rational(mpz_class(a.degree().value()), dn);
}

Check c4() {
  Check c;
  TPoly z2t = tpoly("2; 1, 0, [0, 1]");
  auto a = divisor_order(DynPair(z2t, ParamPoly(0)));
  auto b = divisor_order(DynPair(z2t, ParamPoly::t()));
  c.require(a.status == DivisorStatus::Stabilized && a.q == Rational(1, 2) && a.stabilized_at, "(z^2+t, 0): q = " + a.q.str());
  c.require(b.status == DivisorStatus::Stabilized && b.q == Rational(1) && b.stabilized_at, "(z^2+t, t): q = " + b.q.str());
  for (auto* o : {&a, &b}) {
    int n = *o->stabilized_at;
    c.require(static_cast<int>(o->witness_degrees.size()) > n, "missing witness degrees");
    if (!c.ok) return c;
    mpz_class dn;
    mpz_ui_pow_ui(dn.get_mpz_t(), 2, n);
    c.require(Rational(mpz_class(o->witness_degrees[n].value()), dn) == o->q, "witness degree does not give q");
  }
  TPoly cub = tpoly("3; 1/3, [0, -1/2], 0, 0");
  auto o = divisor_order(DynPair(cub, ParamPoly::t()));
  Rational brute = brute_ratio(cub, ParamPoly::t(), 6);
  c.require(o.status == DivisorStatus::Stabilized && o.q == brute, "cubic: q = " + o.q.str() + ", brute = " + brute.str());
  c.require(brute_ratio(cub, ParamPoly::t(), 5) == brute, "brute ratio not settled");
  return c;
}

// -------- 5
ParamPoly crit_orbit(int d, int n) {
  ParamPoly cc = ParamPoly::t(), z = 0;
  for (int i = 0; i < n; ++i) {
    ParamPoly p = 1;
    for (int j = 0; j < d; ++j) p = p * z;
    z = cc * p + 1;
  }
  return z;
}
long deg(const ParamPoly& p) { return p.is_zero() ? -1 : static_cast<long>(p.coeffs().size()) - 1; }
ParamPoly quo(const ParamPoly& a, const ParamPoly& b) {
  ParamPoly q, r;
  ParamPoly::divmod(a, b, q, r);
  return q;
}
ParamPoly lcm(const ParamPoly& a, const ParamPoly& b) { return quo(a * b, ParamPoly::gcd(a, b)); }
ParamPoly radical(const ParamPoly& p) { return quo(p, ParamPoly::gcd(p, p.derivative())); }

Check c5() {
  Check c;
  for (int d : {2, 3})
    for (int n = 1; n <= 5; ++n) {
      ParamPoly l = 1;
      for (int m = 1; m < n; ++m)
        if (n % m == 0) l = lcm(l, crit_orbit(d, m));
      long oracle = deg(crit_orbit(d, n)) - deg(l);
      c.require(pcf_count_periodic(d, n) == oracle,
                "d=" + std::to_string(d) + " n=" + std::to_string(n) + ": oracle " + std::to_string(oracle));
    }
  c.require(pcf_count_periodic(2, 2) == 1 && pcf_count_periodic(2, 3) == 3, "delta(2), delta(3) for d=2");
  // preperiod 2, period 1 in c z^2 + 1: P^3(0) = P^2(0) minus the (1,1) locus
  ParamPoly F = radical(crit_orbit(2, 3) - crit_orbit(2, 2));
  ParamPoly old = radical(crit_orbit(2, 2) - crit_orbit(2, 1));
  ParamPoly fresh = quo(F, ParamPoly::gcd(F, old));
  c.require(pcf_count_preperiodic(2, 2, 1) == 1 && deg(fresh) == 1 && fresh.eval(Rational(-2)).is_zero(),
            "delta_{2,1}: locus " + fresh.str());
  for (int d = 2; d <= 5; ++d)
    for (int n = 1; n <= 10; ++n) {
      if (n >= 2) c.require(pcf_count_periodic(d, n) > 0, "delta(n) not positive");
      for (int k = 2; k <= 6; ++k) c.require(pcf_count_preperiodic(d, k, n) > 0, "delta_{k,n} not positive");
    }
  return c;
}

// -------- 6
std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') out.back() += line[++i];
      else if (ch == '"') quoted = false;
      else out.back() += ch;
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back();
    } else {
      out.back() += ch;
    }
  }
  return out;
}

Check c6() {
  Check c;
  std::map<int, std::vector<std::string>> want = {
      {2, {"Sigma(2,2,0),U_1,U_2,U_2", "z^2,U_1,U_inf,U_{2^inf}"}},
      {3, {"no symmetry,U_1,U_1,U_1", "Sigma(3,2,1),U_2,U_2,U_1", "Sigma(3,3,0),U_1,U_3,U_3", "z^3,U_2,U_inf,U_{3^inf}"}},
      {4,
       {"no symmetry,U_1,U_1,U_1", "Sigma(4,2,2),U_1,U_2,U_2", "Sigma(4,3,1),U_3,U_3,U_1", "Sigma(4,2,0),U_1,U_2,U_2",
        "Sigma(4,4,0),U_1,U_4,U_4", "z^4,U_3,U_inf,U_{4^inf}"}},
      {5,
       {"no symmetry,U_1,U_1,U_1", "Sigma(5,2,3),U_2,U_2,U_1", "Sigma(5,3,2),U_1,U_3,U_1", "Sigma(5,2,1),U_2,U_2,U_1",
        "Sigma(5,4,1),U_4,U_4,U_1", "Sigma(5,5,0),U_1,U_5,U_5", "z^5,U_4,U_inf,U_{5^inf}"}},
      {6,
       {"no symmetry,U_1,U_1,U_1", "Sigma(6,2,4),U_1,U_2,U_2", "Sigma(6,3,3),U_1,U_3,U_3", "Sigma(6,2,2),U_1,U_2,U_2",
        "Sigma(6,4,2),U_1,U_4,U_4", "Sigma(6,5,1),U_5,U_5,U_1", "Sigma(6,2,0),U_1,U_2,U_2", "Sigma(6,3,0),U_1,U_3,U_3",
        "Sigma(6,6,0),U_1,U_6,U_6", "z^6,U_5,U_inf,U_{6^inf}"}},
  };
  for (auto& [d, rows] : want) {
    std::ostringstream out, err;
    int rc = run_cli({"tables", "--degree", std::to_string(d)}, out, err);
    c.require(rc == 0, "tables exit " + std::to_string(rc));
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    c.require(line.rfind("Range,Aut,Sigma,Sigma0", 0) == 0, "header " + line);
    std::vector<std::string> got;
    while (std::getline(in, line)) {
      auto f = csv_split(line);
      std::string key = f.size() >= 4 ? f[0] + "," + f[1] + "," + f[2] + "," + f[3] : line;
      got.push_back(key);
    }
    c.require(std::multiset<std::string>(got.begin(), got.end()) == std::multiset<std::string>(rows.begin(), rows.end()),
              "degree " + std::to_string(d) + " rows differ");
  }
  return c;
}

// -------- 7
Check c7() {
  Check c;
  std::mt19937 g(707);
  std::uniform_real_distribution<double> U(-0.25, 0.25);
  for (int d : {2, 3, 4})
    for (int i = 0; i < 200; ++i) {
      cplx t;
      do t = {U(g), U(g)};
      while (std::abs(t) >= 0.25);
      cplx z = 0;
      for (int n = 0; n < 100; ++n) {
        z = std::pow(z, d) + t;
        c.require(std::abs(z) <= 0.5, "orbit leaves the half disk");
      }
      c.require(std::holds_alternative<In>(member_M(d, cplx(0), t, 100)), "member_M not In");
    }
  return c;
}

// -------- 8
Check c8() {
  Check c;
  for (int d : {3, 4, 5})
    for (int n = 2; n <= 12; ++n) {
      Rational p = periodic_angle(d, n);
      auto o = md_orbit(p, d);
      c.require(o.preperiod == 0 && o.period == n, "period of periodic_angle(" + std::to_string(d) + "," + std::to_string(n) + ")");
      Rational q = p;
      for (int m = 1; m < n; ++m) {
        q = times_d(q, d);
        if (n % m) continue;
        c.require(!(circle_distance(q, p) < Rational(1, d)), "distance bound fails");
      }
    }
  std::mt19937 g(808);
  int built = 0, tries = 0;
  while (built < 20 && tries < 10000) {
    ++tries;
    int d = std::uniform_int_distribution<int>(3, 5)(g);
    // composition of d - 1 into parts (b_i - 1)
    std::vector<int> branch;
    int left = d - 1;
    while (left > 0) {
      int part = std::uniform_int_distribution<int>(1, left)(g);
      branch.push_back(part + 1);
      left -= part;
    }
    std::set<int> ps;
    while (ps.size() < branch.size()) ps.insert(std::uniform_int_distribution<int>(2, 6)(g));
    std::vector<int> periods(ps.begin(), ps.end());
    Rational spacing(0);
    for (std::size_t j = 1; j < periods.size(); ++j) {
      mpz_class dn;
      mpz_ui_pow_ui(dn.get_mpz_t(), d, periods[j]);
      spacing += Rational(mpz_class(2), dn);
    }
    for (int b : branch) spacing += Rational(b - 1, d);
    if (Rational(1) < spacing) continue;
    ++built;
    try {
      auto pr = build_portrait(d, periods, branch);
      c.require(validate_portrait(pr).empty(), "portrait fails CP1-CP3");
    } catch (const DomainError& e) {
      c.require(false, std::string("build_portrait: ") + e.what());
    }
  }
  c.require(built == 20, "not enough admissible inputs");
  return c;
}

// -------- 9
Check c9() {
  Check c;
  auto golden = [](const std::string& name) {
    std::ifstream in(std::string(GOLDEN_DIR) + "/" + name);
    return nlohmann::json::parse(in);
  };
  auto m1 = build_graph(qp("2; 1, 0, -1"), 6), m2 = build_graph(qp("2; 1, 0, -2"), 6), p1 = build_graph(qp("2; 1, 0, 1"), 4);
  c.require(nlohmann::json::parse(to_json(m1)) == golden("graph_z2m1.json"), "z^2-1 golden");
  c.require(nlohmann::json::parse(to_json(m2)) == golden("graph_z2m2.json"), "z^2-2 golden");
  c.require(nlohmann::json::parse(to_json(p1)) == golden("graph_z2p1.json"), "z^2+1 golden");
  std::vector<MarkedGraph> all = {m1, m2, p1, build_graph(qp("2; 1, 0, 2"), 6), build_graph(qp("3; 1, 0, -12, 0"), 6),
                                  build_graph(qp("3; 1, 0, 0, 1"), 5), build_graph(qp("3; 1, 0, -3, 0"), 6)};
  for (const auto& g : all) c.require(validate_axioms(g).empty(), "axioms fail on a constructed graph");
  auto t1 = m1, t2 = m1, t3 = m1;
  t1.vertices[t1.marking[0]].dpi = 3;
  t2.flow[0] = 99;
  t3.action[0] = t3.action[1];
  for (auto* t : {&t1, &t2, &t3}) c.require(!validate_axioms(*t).empty(), "tampered graph accepted");
  c.require(!is_special(m1) && !is_special(m2), "finite graphs reported special");
  c.require(is_special(p1) && is_special(all[3]), "single-ray graphs not special");
  return c;
}

// -------- 10
bool preperiodic_mod(const ParamPoly& f, ParamPoly z) {
  std::set<std::vector<Rational>> seen;
  for (int i = 0; i < 64; ++i) {
    ParamPoly q, r;
    ParamPoly::divmod(z, f, q, r);
    if (!seen.insert(r.coeffs()).second) return true;
    z = r * r + ParamPoly::t();
  }
  return false;
}

Check c10() {
  Check c;
  TPoly P = tpoly("2; 1, 0, [0, 1]");
  DynPair A(P, 0), B(P, -ParamPoly::t());
  auto o = entangle_decide(A, B);
  c.require(o.verdict == EntangleVerdict::Certificate, "no certificate: " + to_string(o.stage));
  if (!c.ok) return c;
  const auto& ct = *o.cert;
  c.require(ct.n == 2 && ct.m == 1 && ct.zeta == 1 && ct.R == P, "certificate data");
  c.require(verify_certificate(ct, A, B), "verify_certificate rejects");
  auto r = entangle_decide(A, DynPair(P, ParamPoly::parse("[1, 1]")));
  c.require(r.verdict == EntangleVerdict::Refuted && r.stage == EntangleStage::FinalIdentityFails,
            "(z^2+t, 1+t): " + to_string(r.verdict) + " " + to_string(r.stage));
  // PCF parameters: t0 in {0,-1,-2}, roots of P^3(0)/t and of P^4(0)/P^2(0)
  auto orbit0 = [](int k) {
    ParamPoly z = 0;
    for (int i = 0; i < k; ++i) z = z * z + ParamPoly::t();
    return z;
  };
  int params = 0;
  for (long t0 : {0L, -1L, -2L}) {
    QPoly p(std::vector<Rational>{Rational(t0), 0, 1});
    c.require(std::holds_alternative<Preperiodic>(iterate_orbit(p, Rational(0))), "0 not preperiodic");
    c.require(std::holds_alternative<Preperiodic>(iterate_orbit(p, Rational(-t0))), "-t0 not preperiodic");
    ++params;
  }
  for (auto f : {quo(orbit0(3), ParamPoly::t()), quo(orbit0(4), orbit0(2))}) {
    params += static_cast<int>(deg(f));
    c.require(preperiodic_mod(f, 0), "0 not preperiodic mod " + f.str());
    c.require(preperiodic_mod(f, -ParamPoly::t()), "-t not preperiodic mod " + f.str());
  }
  c.require(params >= 10, "fewer than 10 parameters");
  return c;
}

// -------- 11
std::optional<int> exact_bounded(const GaussRational& t, GaussRational z) {
  std::set<std::pair<std::string, std::string>> seen;
  for (int i = 0; i < 64; ++i) {
    if (!seen.insert({z.re.str(), z.im.str()}).second) return i;
    GaussRational sq{z.re * z.re - z.im * z.im, Rational(2) * z.re * z.im};
    z = {sq.re + t.re, sq.im + t.im};
  }
  return std::nullopt;
}

Check c11() {
  Check c;
  auto a = mset_lambda_test(2, {10, 0}, 256, 2000, Convention::Direct);
  c.require(a.verdict == MSetReport::Verdict::InM && a.shortcut, "lambda=10 not InM via shortcut");
  const double lam = 1.5;
  auto b = mset_lambda_test(2, {lam, 0}, 256, 2000, Convention::Inverse);
  c.require(b.verdict == MSetReport::Verdict::NotInM && b.witness, "lambda=3/2 not NotInM");
  if (!c.ok) return c;
  GaussRational t = *b.witness;
  auto esc = exact_escape_step(2, t, {Rational(0), Rational(0)});
  c.require(esc.has_value(), "0 does not escape exactly");
  GaussRational a0{t.re * Rational(2, 3), t.im * Rational(2, 3)};
  bool marked_in = exact_bounded(t, a0).has_value() ||
                   std::holds_alternative<In>(member_M(2, cplx(a0.re.to_double(), a0.im.to_double()),
                                                       cplx(t.re.to_double(), t.im.to_double()), 2000));
  c.require(marked_in, "marked point not bounded");
  for (double l : {8.0, 10.0, 100.0}) {
    auto x = mset_lambda_test(2, {l, 0}, 32, 100, Convention::Direct);
    auto y = mset_lambda_test(2, {1 / l, 0}, 32, 100, Convention::Inverse);
    c.require(x.verdict == y.verdict && x.shortcut && y.shortcut, "conventions disagree in the shortcut regime");
  }
  std::ostringstream os;
  os << "witness t = " << t.re.str() << " + " << t.im.str() << "i";
  if (c.ok) c.why = os.str();
  return c;
}

// -------- 12
Check c12() {
  Check c;
  for (int d : {2, 3}) {
    RenderSpec s;
    s.degree = d;
    s.marked = ParamPoly(0);
    auto x = to_pgm(render(s, 1)), y = to_pgm(render(s, 5));
    c.require(x == y, "renders differ between runs");
    c.require(x == slurp(std::string(GOLDEN_DIR) + "/m" + std::to_string(d) + "_0.pgm"), "golden mismatch d=" + std::to_string(d));
  }
  RenderSpec s;
  s.marked = ParamPoly(0);
  auto img = render(s);
  auto [x0, y0] = s.pixel_of({0, 0});
  auto [x1, y1] = s.pixel_of({1, 0});
  c.require(img.at(x0, y0) == 0, "t=0 not In");
  c.require(img.at(x1, y1) != 0, "t=1 not Out");
  for (int y = 0; y < s.h; ++y)
    for (int x = 0; x < s.w; ++x) {
      auto t = s.pixel_t(x, y);
      if (std::abs(t) < 0.25) c.require(img.at(x, y) == 0, "pixel in D(0,1/4) not In");
      if (std::abs(t) > 2) c.require(img.at(x, y) != 0, "pixel with |t| > 2 not Out");
    }
  return c;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Check()>>> crit = {
      {"Bottcher functional equation", c1}, {"hat functoriality", c2}, {"Green accuracy", c3},
      {"divisor orders", c4},               {"PCF counts", c5},        {"stratification tables", c6},
      {"containment lemma", c7},            {"angle construction", c8}, {"graph suite", c9},
      {"entanglement", c10},                {"M sampler", c11},          {"renders", c12},
  };
  const double limits[] = {10, 60, 60, 60, 30, 60, 60, 60, 60, 60, 60, 60};
  int failed = 0;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = crit[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.why = std::string("exception: ") + e.what();
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.ok && sec > limits[i]) {
      c.ok = false;
      c.why = "too slow";
    }
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << sec;
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << crit[i].first << " [" << os.str() << "s]";
    if (!c.why.empty()) std::cout << " " << c.why;
    std::cout << "\n";
    if (!c.ok) ++failed;
  }
  return failed ? 1 : 0;
}
