#include "polydyn/angles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "polydyn/errors.hpp"

namespace polydyn {

Rational angle(const Rational& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
  return x - Rational(q);
}

Rational times_d(const Rational& a, int d) { return angle(a * Rational(d)); }

Rational circle_distance(const Rational& a, const Rational& b) {
  Rational t = angle(a - b), u = Rational(1) - t;
  return t < u ? t : u;
}

OrbitType md_orbit(const Rational& a0, int d) {
  if (d < 2) throw DomainError("multiplication needs d >= 2");
  Rational a = angle(a0);
  mpz_class q = a.den(), dd = d;
  // q = q_d * q' with q' coprime to d; preperiod is the least k with q_d | d^k
  for (;;) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), dd.get_mpz_t());
    if (g == 1) break;
    q /= g;
  }
  mpz_class qd = a.den() / q;
  int k = 0;
  mpz_class pw = 1;
  while (pw % qd != 0) {
    pw *= dd;
    ++k;
  }
  int period = 1;
  if (q > 1) {
    mpz_class r = dd % q;
    mpz_class x = r;
    while (x != 1) {
      x = (x * dd) % q;
      ++period;
    }
  }
  return {k, period};
}

OrbitType md_orbit_simulated(const Rational& a0, int d) {
  std::map<Rational, int> seen;
  Rational a = angle(a0);
  for (int n = 0;; ++n) {
    auto it = seen.find(a);
    if (it != seen.end()) return {it->second, n - it->second};
    seen.emplace(a, n);
    a = times_d(a, d);
  }
}

bool unlinked(const std::vector<Rational>& F0, const std::vector<Rational>& G0) {
  std::vector<Rational> F, G;
  for (const auto& x : F0) F.push_back(angle(x));
  for (const auto& x : G0) G.push_back(angle(x));
  for (const auto& x : F)
    if (std::find(G.begin(), G.end(), x) != G.end()) throw DomainError("unlinked needs disjoint sets");
  if (G.empty() || F.empty()) return true;
  std::sort(G.begin(), G.end());
  // gap index of x: number of G elements below x (gap 0 and gap |G| are the same arc)
  auto gap = [&](const Rational& x) {
    long i = std::lower_bound(G.begin(), G.end(), x) - G.begin();
    return i == static_cast<long>(G.size()) ? 0L : i;
  };
  long g = gap(F.front());
  for (const auto& x : F)
    if (gap(x) != g) return false;
  return true;
}

Rational periodic_angle(int d, int n) {
  if (d < 3) throw DomainError("periodic angle needs d >= 3 (the digit 2 must exist)");
  if (n < 2) throw DomainError("periodic angle needs n >= 2");
  mpz_class num = 0, dn = 1, D = d;
  for (int i = 0; i < n; ++i) dn *= D;
  for (int k = 1; k <= n; ++k) {
    int eps = (k >= 2 && n % (k - 1) == 0) ? 2 : 0;
    mpz_class pw = 1;
    for (int i = 0; i < n - k; ++i) pw *= D;
    num += eps * pw;
  }
  return Rational(num, dn - 1);
}

std::string to_string(PortraitViolation v) {
  switch (v) {
    case PortraitViolation::CP1: return "CP1";
    case PortraitViolation::CP2: return "CP2";
    case PortraitViolation::CP3: return "CP3";
    case PortraitViolation::NotDisjoint: return "NotDisjoint";
  }
  return "?";
}

std::vector<PortraitViolation> validate_portrait(const Portrait& p) {
  std::vector<PortraitViolation> out;
  long total = 0;
  for (const auto& s : p.sets) {
    total += static_cast<long>(s.size()) - 1;
    bool ok = s.size() >= 2;
    for (const auto& x : s)
      if (!(times_d(x, p.degree) == times_d(s.front(), p.degree))) ok = false;
    if (!ok && std::find(out.begin(), out.end(), PortraitViolation::CP1) == out.end())
      out.push_back(PortraitViolation::CP1);
  }
  if (total != p.degree - 1) out.push_back(PortraitViolation::CP2);
  bool disjoint = true, unl = true;
  for (std::size_t i = 0; i < p.sets.size(); ++i)
    for (std::size_t j = i + 1; j < p.sets.size(); ++j) {
      bool shared = false;
      for (const auto& x : p.sets[i])
        for (const auto& y : p.sets[j])
          if (angle(x) == angle(y)) shared = true;
      if (shared) disjoint = false;
      else if (!unlinked(p.sets[i], p.sets[j])) unl = false;
    }
  if (!disjoint) out.push_back(PortraitViolation::NotDisjoint);
  if (!unl) out.push_back(PortraitViolation::CP3);
  return out;
}

namespace {

// strictly preperiodic angles in the open interval (lo, hi) whose forward orbit meets
// the cycle of p; smallest denominator first, then smallest value
std::optional<Rational> landing_angle(int d, const Rational& p, int n, const Rational& lo, const Rational& hi) {
  std::vector<Rational> cycle;
  Rational x = p;
  for (int i = 0; i < n; ++i, x = times_d(x, d)) cycle.push_back(x);
  std::optional<Rational> best;
  mpz_class dr = 1;
  for (int r = 1; r <= n + 3; ++r) {
    dr *= d;
    for (const auto& o : cycle) {
      // preimages (o + j) / d^r inside (lo, hi), shifted by integers as needed
      Rational base = o / Rational(dr);
      Rational step = Rational(mpz_class(1), dr);
      mpz_class jlo;
      Rational t = (lo - base) / step;
      mpz_fdiv_q(jlo.get_mpz_t(), t.num().get_mpz_t(), t.den().get_mpz_t());
      for (mpz_class j = jlo;; ++j) {
        Rational c = base + step * Rational(j);
        if (!(c < hi)) break;
        if (!(lo < c)) continue;
        if (md_orbit(c, d).preperiod < 1) continue;
        if (!best || c.den() < best->den() || (c.den() == best->den() && c < *best)) best = c;
      }
    }
    if (best) return best;
  }
  return best;
}

}  // namespace

Portrait build_portrait(int d, const std::vector<int>& periods, const std::vector<int>& branch) {
  if (d < 3) throw DomainError("portrait construction needs d >= 3");
  if (periods.empty() || periods.size() != branch.size())
    throw DomainError("need one branch degree per cycle period");
  for (std::size_t i = 1; i < periods.size(); ++i)
    if (periods[i] <= periods[i - 1]) throw DomainError("cycle periods must be strictly increasing");
  for (int n : periods)
    if (n < 2) throw DomainError("cycle periods must be >= 2");
  long total = 0;
  for (int b : branch) {
    if (b < 2) throw DomainError("branch degrees must be >= 2");
    total += b - 1;
  }
  if (total != d - 1)
    throw DomainError("CP2: sum of (d_i - 1) is " + std::to_string(total) + ", expected " + std::to_string(d - 1));
  Rational spacing = Rational(mpz_class(total), mpz_class(d));
  for (std::size_t j = 1; j < periods.size(); ++j) spacing += Rational(2) / pow(Rational(d), periods[j]);
  if (Rational(1) < spacing)
    throw DomainError("spacing condition fails: sum_{j>=2} 2/d^n_j + sum (d_j - 1)/d = " + spacing.str() + " > 1");
  Portrait out;
  out.degree = d;
  Rational lo(0);
  for (std::size_t j = 0; j < periods.size(); ++j) {
    Rational hi = lo + Rational(2) / pow(Rational(d), periods[j]);
    auto th = landing_angle(d, periodic_angle(d, periods[j]), periods[j], lo, hi);
    if (!th) throw DomainError("no admissible angle in (" + lo.str() + ", " + hi.str() + ")");
    std::vector<Rational> set;
    for (int i = 0; i < branch[j]; ++i) set.push_back(angle(*th + Rational(i, d)));
    out.sets.push_back(set);
    lo = *th + Rational(branch[j] - 1, d);
  }
  auto v = validate_portrait(out);
  if (!v.empty()) throw DomainError("constructed portrait violates " + to_string(v.front()));
  return out;
}

namespace {

// pair {a, b} strictly linked with S: S has points in both open arcs cut out by a, b
bool strictly_linked(const Rational& a, const Rational& b, const std::vector<Rational>& S) {
  if (a == b) return false;
  Rational lo = a < b ? a : b, hi = a < b ? b : a;
  bool inside = false, outside = false;
  for (const auto& s0 : S) {
    Rational s = angle(s0);
    if (s == lo || s == hi) continue;
    if (lo < s && s < hi) inside = true;
    else outside = true;
  }
  return inside && outside;
}

}  // namespace

ThetaVerdict theta_equivalent(const Rational& x0, const Rational& y0, const Portrait& p, int depth) {
  const int d = p.degree;
  Rational x = angle(x0), y = angle(y0);
  auto ox = md_orbit(x, d), oy = md_orbit(y, d);
  int horizon = std::max(ox.preperiod, oy.preperiod) + std::lcm(ox.period, oy.period);
  for (int n = 0; n <= std::min(depth, horizon); ++n) {
    for (const auto& s : p.sets)
      if (strictly_linked(x, y, s)) return Separated{n};
    x = times_d(x, d);
    y = times_d(y, d);
  }
  if (depth < horizon) return Undecided{horizon};
  return Equivalent{};
}

std::string describe(const ThetaVerdict& v) {
  if (std::holds_alternative<Equivalent>(v)) return "equivalent";
  if (auto s = std::get_if<Separated>(&v)) return "separated at n=" + std::to_string(s->n);
  return "undecided (horizon " + std::to_string(std::get<Undecided>(v).horizon) + ")";
}

}  // namespace polydyn
