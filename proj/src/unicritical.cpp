#include "polydyn/unicritical.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>
#include <vector>

#include "json.hpp"
#include "polydyn/errors.hpp"

namespace polydyn {

int mobius(long n) {
  if (n < 1) throw DomainError("mobius needs n >= 1");
  int r = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    r = -r;
  }
  if (n > 1) r = -r;
  return r;
}

namespace {

mpz_class ipow(long d, long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

mpz_class pcf_count_periodic(int d, int n) {
  if (d < 2 || n < 1) throw DomainError("count needs d >= 2 and n >= 1");
  mpz_class s = 0;
  for (int m = 1; m <= n; ++m) {
    if (n % m) continue;
    s += mobius(n / m) * ((ipow(d, m - 1) - 1) / (d - 1));
  }
  return s;
}

mpz_class pcf_count_preperiodic(int d, int k, int n) {
  if (d < 2 || n < 1) throw DomainError("count needs d >= 2 and n >= 1");
  if (k < 2) throw DomainError("preperiodic count needs k >= 2");
  mpz_class s = 0;
  for (int m = 1; m <= n; ++m) {
    if (n % m) continue;
    s += mobius(n / m) * (ipow(d, m + k - 2) - ipow(d, std::gcd(k - 1, m) - 1));
  }
  return s;
}

namespace {

bool escapes(int d, std::complex<double> z, std::complex<double> t) {
  double a = std::abs(z), c = std::abs(t);
  if (!(a >= std::max(2.0, c))) return false;
  return a > 2 || c < a || d > 2;
}

std::complex<double> cpow(std::complex<double> z, int d) {
  std::complex<double> r = 1;
  for (int i = 0; i < d; ++i) r *= z;
  return r;
}

}  // namespace

Membership member_M(int d, const std::complex<double>& a, const std::complex<double>& t, int budget) {
  if (d < 2) throw DomainError("degree must be >= 2");
  if (budget < 1) throw DomainError("budget must be >= 1");
  std::complex<double> z = a;
  for (int n = 0; n <= budget; ++n) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return Out{n};
    if (escapes(d, z, t)) return Out{n};
    if (n < budget) z = cpow(z, d) + t;
  }
  return In{budget};
}

Membership member_M(int d, const ParamPoly& a, const std::complex<double>& t, int budget) {
  std::complex<double> v = 0;
  const auto& c = a.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + it->to_double();
  return member_M(d, v, t, budget);
}

std::string to_string(Convention c) { return c == Convention::Inverse ? "inverse" : "direct"; }

Convention parse_convention(const std::string& s) {
  if (s == "inverse") return Convention::Inverse;
  if (s == "direct") return Convention::Direct;
  throw DomainError("unknown convention '" + s + "' (expected inverse or direct)");
}

namespace {

GaussRational mul(const GaussRational& a, const GaussRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Rational norm2(const GaussRational& a) { return a.re * a.re + a.im * a.im; }

}  // namespace

std::optional<int> exact_escape_step(int d, const GaussRational& t, const GaussRational& z0, int max_steps) {
  GaussRational z = z0;
  Rational t2 = norm2(t), four(4);
  for (int n = 0; n <= max_steps; ++n) {
    Rational z2 = norm2(z);
    Rational bound = t2 < four ? four : t2;
    if (!(z2 < bound) && (four < z2 || t2 < z2 || d > 2)) return n;
    GaussRational p{Rational(1), Rational(0)};
    for (int i = 0; i < d; ++i) p = mul(p, z);
    z = {p.re + t.re, p.im + t.im};
  }
  return std::nullopt;
}

MSetReport mset_lambda_test(int d, std::complex<double> lambda, int grid, int budget, Convention conv,
                            unsigned threads) {
  if (lambda == std::complex<double>(0, 0)) throw DomainError("lambda must be nonzero");
  if (d < 2) throw DomainError("degree must be >= 2");
  if (grid < 1 || budget < 1) throw DomainError("grid and budget must be positive");
  MSetReport rep;
  rep.lambda = lambda;
  rep.convention = conv;
  rep.grid = grid;
  rep.budget = budget;
  const std::complex<double> s = conv == Convention::Inverse ? 1.0 / lambda : lambda;
  rep.expected_capacity = 1.0 / std::abs(s);
  if (std::abs(s) >= 8) {
    // |t| >= 1/4 forces |s t| >= max{2,|t|}, so M_lambda sits in D(0,1/4) inside M(d,0)
    rep.verdict = MSetReport::Verdict::InM;
    rep.shortcut = true;
    return rep;
  }
  const int N = grid;
  auto tval = [&](int ix, int iy) {
    return std::complex<double>(-4.0 + 8.0 * ix / N, -4.0 + 8.0 * iy / N);
  };
  std::vector<char> cand(static_cast<std::size_t>(N) * N, 0);
  std::atomic<int> next{0};
  unsigned nt = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < nt; ++w)
    pool.emplace_back([&] {
      for (int ix; (ix = next.fetch_add(1)) < N;)
        for (int iy = 0; iy < N; ++iy) {
          auto t = tval(ix, iy);
          if (!std::holds_alternative<Out>(member_M(d, std::complex<double>(0), t, budget))) continue;
          if (std::holds_alternative<In>(member_M(d, s * t, t, budget))) cand[static_cast<std::size_t>(ix) * N + iy] = 1;
        }
    });
  for (auto& th : pool) th.join();
  rep.samples = static_cast<long>(N) * N;
  for (int ix = 0; ix < N; ++ix)
    for (int iy = 0; iy < N; ++iy) {
      if (!cand[static_cast<std::size_t>(ix) * N + iy]) continue;
      GaussRational t{Rational(-4) + Rational(8L * ix, N), Rational(-4) + Rational(8L * iy, N)};
      auto step = exact_escape_step(d, t, GaussRational{Rational(0), Rational(0)});
      if (!step) continue;
      rep.verdict = MSetReport::Verdict::NotInM;
      rep.witness = t;
      rep.witness_escape_step = step;
      rep.witness_index = std::make_pair(ix, iy);
      return rep;
    }
  rep.verdict = MSetReport::Verdict::InM;
  rep.heuristic = true;
  return rep;
}

std::string MSetReport::to_json() const {
  nlohmann::ordered_json j;
  j["lambda"] = {lambda.real(), lambda.imag()};
  j["convention"] = polydyn::to_string(convention);
  j["verdict"] = verdict == Verdict::InM ? "InM" : verdict == Verdict::NotInM ? "NotInM" : "Undecided";
  j["shortcut"] = shortcut;
  j["heuristic"] = heuristic;
  if (witness) {
    j["witness"] = {{"re", witness->re.str()}, {"im", witness->im.str()}};
    j["witness_escape_step"] = *witness_escape_step;
    j["witness_index"] = {witness_index->first, witness_index->second};
  }
  j["grid"] = grid;
  j["budget"] = budget;
  j["samples"] = samples;
  if (expected_capacity) j["expected_capacity"] = *expected_capacity;
  return j.dump(2);
}

}  // namespace polydyn
