#include "polydyn/cli.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "polydyn/angles.hpp"
#include "polydyn/bottcher.hpp"
#include "polydyn/dyngraph.hpp"
#include "polydyn/entangle.hpp"
#include "polydyn/errors.hpp"
#include "polydyn/pairs.hpp"
#include "polydyn/render.hpp"
#include "polydyn/symmetry.hpp"
#include "polydyn/unicritical.hpp"

namespace polydyn {

namespace {

using ojson = nlohmann::ordered_json;

// inline text, or the contents of a file with that name
std::string poly_text(const std::string& s) {
  std::ifstream f(s);
  if (!f) return s;
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

TPoly as_family(const AnyPoly& p) {
  if (auto t = std::get_if<TPoly>(&p)) return *t;
  if (auto q = std::get_if<QPoly>(&p)) {
    std::vector<ParamPoly> v;
    for (const auto& c : q->coeffs()) v.emplace_back(c);
    return TPoly(v);
  }
  throw DomainError("families must have coefficients in Q[t]");
}

QPoly as_qpoly(const AnyPoly& p) {
  if (auto q = std::get_if<QPoly>(&p)) return *q;
  throw DomainError("expected rational coefficients");
}

std::vector<int> int_list(const std::string& s) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw DomainError("bad integer list '" + s + "'");
    }
  }
  return v;
}

// "x", "x+yi", "x-yi", "yi"
std::complex<double> parse_complex(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  static const std::regex re(R"(^([+-]?[0-9.eE]+(?:/[0-9]+)?)?(?:([+-][0-9.eE]*(?:/[0-9]+)?)i)?$)");
  std::smatch m;
  if (s.empty() || !std::regex_match(s, m, re)) throw DomainError("bad complex number '" + s + "'");
  auto num = [](std::string t) {
    if (t == "+" || t.empty()) return 1.0;
    if (t == "-") return -1.0;
    return Rational::parse(t).to_double();
  };
  double re_part = m[1].matched ? Rational::parse(m[1].str()).to_double() : 0.0;
  double im_part = m[2].matched ? num(m[2].str()) : 0.0;
  return {re_part, im_part};
}

// "FAMILY | MARKED"
DynPair parse_pair(const std::string& s) {
  auto bar = s.find('|');
  if (bar == std::string::npos) throw DomainError("pair must be 'family | marked'");
  return DynPair(as_family(parse_poly(s.substr(0, bar))), ParamPoly::parse(s.substr(bar + 1)));
}

template <class R>
void print_series(std::ostream& out, const BottcherSeries<R>& s, bool json) {
  if (json) {
    ojson j;
    j["alpha"] = ring_str(s.alpha);
    j["c0"] = ring_str(s.c0);
    ojson t = ojson::array();
    for (const auto& a : s.tail) t.push_back(ring_str(a));
    j["tail"] = t;
    out << j.dump(2) << "\n";
    return;
  }
  out << "alpha = " << ring_str(s.alpha) << "\n";
  out << "c0 = " << ring_str(s.c0) << "\n";
  for (int j = 1; j <= s.order(); ++j) out << "alpha_" << j << " = " << ring_str(s.alpha_j(j)) << "\n";
}

template <class R>
void print_hat(std::ostream& out, const HatPoly<R>& h, bool json) {
  if (json) {
    ojson j;
    j["k"] = h.k;
    j["hat"] = to_text(h.hat);
    ojson t = ojson::array();
    for (const auto& a : h.tail) t.push_back(ring_str(a));
    j["tail"] = t;
    out << j.dump(2) << "\n";
    return;
  }
  out << "hat_" << h.k << " = " << to_text(h.hat) << "\n";
  for (std::size_t j = 0; j < h.tail.size(); ++j) out << "tail_" << j + 1 << " = " << ring_str(h.tail[j]) << "\n";
}

std::string orbit_json(const OrbitType& o) {
  ojson j;
  j["preperiod"] = o.preperiod;
  j["period"] = o.period;
  return j.dump();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"polynomial dynamics toolkit", "polydyn"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine readable output");

  // bottcher
  auto* bott = app.add_subcommand("bottcher", "Bottcher series coefficients");
  std::string poly;
  int order = 8, power = 0;
  bott->add_option("--poly", poly, "polynomial text or file")->required();
  bott->add_option("--order", order, "truncation order M");
  bott->add_option("--power", power, "print the hat polynomial of phi^k");
  bott->add_flag("--json", json);

  // divisor
  auto* div = app.add_subcommand("divisor", "divisor order of a dynamical pair");
  std::string fam, marked = "0";
  int q_max = 64;
  div->add_option("--family", fam, "family over Q[t]")->required();
  div->add_option("--marked", marked, "marked point in Q[t]");
  div->add_option("--q-max", q_max);
  div->add_flag("--json", json);

  auto* sym = app.add_subcommand("symmetry", "symmetry group data");
  sym->add_option("--poly", poly)->required();
  sym->add_flag("--json", json);

  auto* tab = app.add_subcommand("tables", "stratification table as CSV");
  int degree = 2;
  unsigned seed = 1;
  tab->add_option("--degree", degree)->required();
  tab->add_option("--seed", seed);

  auto* gr = app.add_subcommand("graph", "critically marked dynamical graph");
  int depth = 16;
  bool special = false;
  std::string json_out;
  gr->add_option("--poly", poly)->required();
  gr->add_option("--depth", depth);
  gr->add_flag("--special", special, "print whether the graph is special");
  gr->add_option("--json", json_out, "write the graph JSON to a file ('-' for stdout)")->expected(0, 1);

  auto* ang = app.add_subcommand("angles", "critical portraits and angle orbits");
  std::string periods, branch, check;
  ang->add_option("--degree", degree)->required();
  ang->add_option("--periods", periods);
  ang->add_option("--branch-degrees", branch);
  ang->add_option("--check", check, "preperiod and period of p/q under multiplication by d");
  ang->add_flag("--json", json);

  auto* cnt = app.add_subcommand("count", "PCF parameter counts for c z^d + 1");
  int period = 1, preperiod = 0;
  cnt->add_option("--degree", degree)->required();
  cnt->add_option("--period", period)->required();
  cnt->add_option("--preperiod", preperiod);
  cnt->add_flag("--json", json);

  auto* ms = app.add_subcommand("mset", "sample M_lambda against M(d,0)");
  std::string lambda, convention = "inverse";
  int grid = 256, budget = 2000;
  ms->add_option("--degree", degree);
  ms->add_option("--lambda", lambda)->required();
  ms->add_option("--grid", grid);
  ms->add_option("--budget", budget);
  ms->add_option("--convention", convention)->check(CLI::IsMember({"inverse", "direct"}));
  ms->add_flag("--json", json);

  auto* rd = app.add_subcommand("render", "escape-time raster of M(d,a) as PGM");
  std::string center = "0", size = "64x64", palette = "grayscale-g", outfile;
  double width = 4;
  int rbudget = 500;
  rd->add_option("--degree", degree);
  rd->add_option("--marked", marked);
  rd->add_option("--center", center);
  rd->add_option("--width", width);
  rd->add_option("--size", size, "WxH");
  rd->add_option("--budget", rbudget);
  rd->add_option("--palette", palette)->check(CLI::IsMember({"grayscale-g", "binary"}));
  rd->add_option("--out", outfile)->required();

  auto* ent = app.add_subcommand("entangle", "decide entanglement of two pairs");
  std::string pa, pb;
  ent->add_option("--pair-a", pa, "'family | marked'")->required();
  ent->add_option("--pair-b", pb, "'family | marked'")->required();
  ent->add_flag("--json", json);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*bott) {
      auto p = parse_poly(poly_text(poly));
      if (power > 0) {
        auto h = bottcher_power(p, power, order);
        std::visit([&](const auto& x) { print_hat(out, x, json); }, h);
      } else {
        auto s = bottcher_series(p, order);
        std::visit([&](const auto& x) { print_series(out, x, json); }, s);
      }
    } else if (*div) {
      DynPair pair(as_family(parse_poly(poly_text(fam))), ParamPoly::parse(marked));
      auto o = divisor_order(pair, q_max);
      if (json) {
        ojson j;
        j["status"] = o.status == DivisorStatus::Stabilized ? "Stabilized" : o.status == DivisorStatus::Passive ? "Passive" : "Unknown";
        j["q"] = o.q.str();
        if (o.stabilized_at) j["stabilized_at"] = *o.stabilized_at;
        ojson degs = ojson::array();
        for (const auto& d : o.witness_degrees) degs.push_back(d.str());
        j["degrees"] = degs;
        if (!o.reason.empty()) j["reason"] = o.reason;
        out << j.dump(2) << "\n";
      } else {
        out << "q = " << o.q.str() << "\n";
        out << "stabilized_at = " << (o.stabilized_at ? std::to_string(*o.stabilized_at) : "none") << "\n";
        if (!o.reason.empty()) out << "reason = " << o.reason << "\n";
        out << "n,deg\n";
        for (std::size_t n = 0; n < o.witness_degrees.size(); ++n) out << n << "," << o.witness_degrees[n].str() << "\n";
      }
      if (o.status == DivisorStatus::Unknown) return 1;
    } else if (*sym) {
      auto p = parse_poly(poly_text(poly));
      SymmetryData s;
      if (auto q = std::get_if<QPoly>(&p)) s = symmetry_group(*q);
      else if (auto e = std::get_if<EPoly>(&p)) s = symmetry_group(*e);
      else throw DomainError("symmetry needs a single polynomial, not a family");
      if (json) {
        ojson j;
        j["monomial"] = s.monomial;
        j["degree"] = s.degree;
        j["mu"] = s.mu;
        j["m"] = s.m;
        j["Sigma"] = sigma_label(s);
        j["Sigma0"] = sigma0_label(s);
        j["Aut"] = aut_label(s);
        out << j.dump(2) << "\n";
      } else {
        out << describe(s);
      }
    } else if (*tab) {
      out << stratify_csv(degree, seed);
    } else if (*gr) {
      auto g = build_graph(as_qpoly(parse_poly(poly_text(poly))), depth);
      auto text = to_json(g);
      bool to_stdout = gr->count("--json") == 0 || json_out.empty() || json_out == "-";
      if (!to_stdout) {
        std::ofstream f(json_out, std::ios::binary);
        if (!f) throw DomainError("cannot write " + json_out);
        f << text << "\n";
      }
      if (special) {
        out << "special = " << (is_special(g) ? "yes" : "no") << "\n";
      } else if (to_stdout) {
        out << text << "\n";
      }
    } else if (*ang) {
      if (!check.empty()) {
        auto o = md_orbit(Rational::parse(check), degree);
        if (json) out << orbit_json(o) << "\n";
        else out << "preperiod = " << o.preperiod << "\nperiod = " << o.period << "\n";
      } else {
        auto pr = build_portrait(degree, int_list(periods), int_list(branch));
        if (json) {
          ojson j;
          j["degree"] = pr.degree;
          ojson sets = ojson::array();
          for (const auto& s : pr.sets) {
            ojson a = ojson::array();
            for (const auto& x : s) a.push_back(x.str());
            sets.push_back(a);
          }
          j["sets"] = sets;
          out << j.dump(2) << "\n";
        } else {
          for (const auto& s : pr.sets) {
            for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i].str();
            out << "\n";
          }
        }
      }
    } else if (*cnt) {
      mpz_class c = preperiod > 0 ? pcf_count_preperiodic(degree, preperiod, period) : pcf_count_periodic(degree, period);
      if (json) {
        ojson j;
        j["degree"] = degree;
        j["period"] = period;
        if (preperiod > 0) j["preperiod"] = preperiod;
        j["count"] = c.get_str();
        out << j.dump(2) << "\n";
      } else {
        out << c.get_str() << "\n";
      }
    } else if (*ms) {
      auto r = mset_lambda_test(degree, parse_complex(lambda), grid, budget, parse_convention(convention));
      out << r.to_json() << "\n";
    } else if (*rd) {
      RenderSpec spec;
      spec.degree = degree;
      spec.marked = ParamPoly::parse(marked);
      spec.center = parse_complex(center);
      spec.width = width;
      auto x = size.find('x');
      if (x == std::string::npos) throw DomainError("size must be WxH");
      try {
        spec.w = std::stoi(size.substr(0, x));
        spec.h = std::stoi(size.substr(x + 1));
      } catch (const std::exception&) {
        throw DomainError("size must be WxH");
      }
      spec.budget = rbudget;
      spec.palette = parse_palette(palette);
      auto img = render(spec);
      std::ofstream f(outfile, std::ios::binary);
      if (!f) throw DomainError("cannot write " + outfile);
      f << to_pgm(img);
    } else if (*ent) {
      auto A = parse_pair(pa), B = parse_pair(pb);
      auto o = entangle_decide(A, B);
      if (json) {
        out << o.to_json() << "\n";
      } else {
        out << to_string(o.verdict);
        if (o.stage != EntangleStage::None) out << " (" << to_string(o.stage) << ")";
        out << "\n";
        if (o.cert) {
          const auto& c = *o.cert;
          out << "n = " << c.n << ", m = " << c.m << ", N = " << c.N << ", M = " << c.M << ", l = " << c.l
              << ", L = " << c.L << ", zeta = " << c.zeta << "\nR = " << to_text(c.R) << "\n";
        }
        if (o.verdict == EntangleVerdict::Refuted) out << "not entangled (conditional on the characterization theorem)\n";
        if (!o.detail.empty()) out << o.detail << "\n";
      }
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace polydyn
