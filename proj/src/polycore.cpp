#include "polydyn/polycore.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "polydyn/escape.hpp"

namespace polydyn {

Rational binomial(long n, long k) {
  if (k < 0 || k > n) return Rational();
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t\n\r");
  return std::string(s.substr(b, e - b + 1));
}

// split on sep outside brackets
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '[' || c == '{') ++depth;
    if (c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

Modulus parse_modulus(std::string_view s) {
  // alpha^e = A
  auto caret = s.find('^');
  auto eq = s.find('=');
  if (caret == std::string_view::npos || eq == std::string_view::npos || eq < caret)
    throw DomainError("bad modulus clause: " + std::string(s));
  Modulus m;
  m.e = std::stoi(std::string(s.substr(caret + 1, eq - caret - 1)));
  m.A = Rational::parse(s.substr(eq + 1));
  if (m.e < 1 || m.A.is_zero()) throw DomainError("bad modulus clause: " + std::string(s));
  return m;
}

template <class R>
std::vector<int> support_of(const Poly<R>& p) {
  std::vector<int> s;
  for (int i = 0; i < static_cast<int>(p.coeffs().size()); ++i)
    if (!p.coeffs()[i].is_zero()) s.push_back(i);
  return s;
}

}  // namespace

std::vector<int> support(const QPoly& p) { return support_of(p); }
std::vector<int> support(const EPoly& p) { return support_of(p); }
std::vector<int> support(const TPoly& p) { return support_of(p); }

AnyPoly parse_poly(std::string_view text) {
  auto parts = split_top(text, ';');
  if (parts.size() < 2 || parts.size() > 3) throw DomainError("polynomial text must be 'd; a0, ..., ad'");
  int d;
  try {
    d = std::stoi(parts[0]);
  } catch (const std::exception&) {
    throw DomainError("bad degree in polynomial text: " + parts[0]);
  }
  auto cs = split_top(parts[1], ',');
  if (static_cast<int>(cs.size()) != d + 1)
    throw DomainError("expected " + std::to_string(d + 1) + " coefficients, got " + std::to_string(cs.size()));
  bool param = false, ext = parts.size() == 3;
  for (const auto& c : cs) {
    if (c.find('[') != std::string::npos) param = true;
    if (c.find('{') != std::string::npos) ext = true;
  }
  if (param && ext) throw DomainError("ring mismatch: mixed parameter and extension coefficients");
  std::vector<int> dummy;
  if (param) {
    std::vector<ParamPoly> v;
    for (const auto& c : cs) v.push_back(ParamPoly::parse(c));
    auto p = TPoly::from_leading_first(std::move(v));
    if (p.is_zero() ? d != 0 : p.deg() != d) throw DomainError("leading coefficient must be nonzero");
    return p;
  }
  if (ext) {
    std::optional<Modulus> m;
    if (parts.size() == 3) m = parse_modulus(parts[2]);
    std::vector<AlgExt> v;
    for (const auto& c : cs) v.push_back(parse_algext(c, m));
    auto p = EPoly::from_leading_first(std::move(v));
    if (p.is_zero() ? d != 0 : p.deg() != d) throw DomainError("leading coefficient must be nonzero");
    return p;
  }
  std::vector<Rational> v;
  for (const auto& c : cs) v.push_back(Rational::parse(c));
  auto p = QPoly::from_leading_first(std::move(v));
  if (p.is_zero() ? d != 0 : p.deg() != d) throw DomainError("leading coefficient must be nonzero");
  return p;
}

std::string to_text(const AnyPoly& p) {
  return std::visit([](const auto& q) { return to_text(q); }, p);
}

std::string ring_name(const AnyPoly& p) {
  switch (p.index()) {
    case 0: return "Rational";
    case 1: return "AlgExt";
    default: return "ParamPoly";
  }
}

AnyPoly compose(const AnyPoly& p, const AnyPoly& q) {
  if (p.index() != q.index()) throw DomainError("ring mismatch: " + ring_name(p) + " vs " + ring_name(q));
  return std::visit(
      [&](const auto& a) -> AnyPoly {
        using P = std::decay_t<decltype(a)>;
        return a.compose(std::get<P>(q));
      },
      p);
}

std::variant<Rational, AlgExt> leading_root(const QPoly& p) {
  int d = p.deg();
  if (d < 2) throw DomainError("degree must be at least 2");
  Rational A = p.leading(), r;
  if (exact_root(A, d - 1, r)) return r;
  return AlgExt::generator(Modulus{d - 1, A});
}

std::optional<AlgExt> root_in(const AlgExt& x, int k) {
  if (x.is_rational()) {
    Rational r;
    if (exact_root(x.as_rational(), k, r)) return x.modulus() ? AlgExt(r).bound_to(*x.modulus()) : AlgExt(r);
  }
  if (!x.modulus()) {
    return std::nullopt;
  }
  // x must be r * alpha^s; try c * alpha^j with j*k = s mod e
  const Modulus& m = *x.modulus();
  int s = -1;
  for (int i = 0; i < m.e; ++i) {
    if (x.coord(i).is_zero()) continue;
    if (s >= 0) return std::nullopt;
    s = i;
  }
  if (s < 0) return std::nullopt;
  Rational r = x.coord(s);
  for (int j = 0; j < m.e; ++j) {
    long jk = static_cast<long>(j) * k;
    if (jk % m.e != s) continue;
    Rational need = r / pow(m.A, jk / m.e), c;
    if (exact_root(need, k, c)) {
      std::vector<Rational> v(m.e);
      v[j] = c;
      return AlgExt(m, v);
    }
  }
  return std::nullopt;
}

namespace {

template <class R>
Conjugated<R> normalize_with(const Poly<R>& p, const R& alpha) {
  int d = p.deg();
  R shift = alpha * p.coeff(d - 1) * (R(static_cast<long>(d)) * p.leading()).inverse();
  return Conjugated<R>{conjugate(p, alpha, shift), alpha, shift};
}

}  // namespace

NormalForm normalize_monic_centered(const QPoly& p) {
  if (p.is_zero() || p.deg() < 2) throw DomainError("normalization needs degree >= 2");
  auto root = leading_root(p);
  if (auto r = std::get_if<Rational>(&root)) return normalize_with(p, *r);
  AlgExt alpha = std::get<AlgExt>(root);
  std::vector<AlgExt> v;
  for (const auto& c : p.coeffs()) v.push_back(AlgExt(c).bound_to(*alpha.modulus()));
  return normalize_with(EPoly(std::move(v)), alpha);
}

Conjugated<AlgExt> normalize_monic_centered(const EPoly& p) {
  if (p.is_zero() || p.deg() < 2) throw DomainError("normalization needs degree >= 2");
  auto alpha = root_in(p.leading(), p.deg() - 1);
  if (!alpha) {
    const auto& lead = p.leading();
    if (lead.is_rational() && !lead.modulus()) {
      alpha = AlgExt::generator(Modulus{p.deg() - 1, lead.as_rational()});
      std::vector<AlgExt> v;
      for (const auto& c : p.coeffs()) v.push_back(c.bound_to(*alpha->modulus()));
      return normalize_with(EPoly(std::move(v)), *alpha);
    }
    throw DomainError("cannot adjoin a root over an existing extension: nested extensions are not supported");
  }
  return normalize_with(p, *alpha);
}

ExactEscape::ExactEscape(const QPoly& p) : d_(p.deg()) {
  if (d_ < 2) throw DomainError("escape test needs degree >= 2");
  auto sup = support(p);
  unicritical_ = p.leading() == Rational(1) && (sup.size() == 1 || (sup.size() == 2 && sup[0] == 0));
  c_abs_ = p.coeff(0).abs();
  Rational s;
  for (int i = 0; i < d_; ++i) s += p.coeff(i).abs();
  radius_ = (Rational(2) + s) / p.leading().abs();
  if (radius_ < Rational(1)) radius_ = Rational(1);
  if (unicritical_) radius_ = c_abs_ > Rational(2) ? c_abs_ : Rational(2);
}

bool ExactEscape::fires(const Rational& z) const {
  Rational a = z.abs();
  if (!unicritical_) return a >= radius_;
  if (a < radius_) return false;
  return a > Rational(2) || c_abs_ < a || d_ > 2;
}

OrbitRecord iterate_orbit(const QPoly& p, const Rational& z0, int max_steps, std::size_t max_bits) {
  if (max_steps < 1) throw DomainError("max_steps must be at least 1");
  ExactEscape esc(p);
  std::map<Rational, int> seen;
  std::vector<Rational> orbit;
  Rational z = z0;
  for (int n = 0; n <= max_steps; ++n) {
    auto it = seen.find(z);
    if (it != seen.end()) {
      int tail = it->second;
      return Preperiodic{tail, n - tail, std::vector<Rational>(orbit.begin() + tail, orbit.end())};
    }
    if (esc.fires(z)) return Escaping{n, z};
    if (z.bits() > max_bits) return OrbitUnknown{n, "bit cap"};
    seen.emplace(z, n);
    orbit.push_back(z);
    if (n == max_steps) break;
    z = p(z);
  }
  return OrbitUnknown{max_steps, "step cap"};
}

std::string describe(const OrbitRecord& r) {
  std::ostringstream os;
  if (auto pp = std::get_if<Preperiodic>(&r)) {
    os << "preperiodic tail=" << pp->tail << " cycle=" << pp->cycle << " {";
    for (std::size_t i = 0; i < pp->cycle_values.size(); ++i) os << (i ? ", " : "") << pp->cycle_values[i].str();
    os << "}";
  } else if (auto e = std::get_if<Escaping>(&r)) {
    os << "escaping step=" << e->step;
  } else {
    auto u = std::get<OrbitUnknown>(r);
    os << "unknown after " << u.steps << " steps (" << u.reason << ")";
  }
  return os.str();
}

}  // namespace polydyn

namespace polydyn {

namespace {

std::vector<mpz_class> positive_divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<std::pair<mpz_class, int>> fac;
  mpz_class p = 2;
  while (p * p <= n) {
    if (p > 2000000) {
      if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) throw DomainError("coefficient too large for rational root search");
      break;
    }
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      fac.push_back({p, e});
    }
    p += (p == 2 ? 1 : 2);
  }
  if (n > 1) fac.push_back({n, 1});
  std::vector<mpz_class> ds{1};
  for (auto& [q, e] : fac) {
    std::size_t k = ds.size();
    mpz_class pw = 1;
    for (int i = 1; i <= e; ++i) {
      pw *= q;
      for (std::size_t j = 0; j < k; ++j) ds.push_back(ds[j] * pw);
    }
    if (ds.size() > 200000) throw DomainError("too many divisors in rational root search");
  }
  return ds;
}

}  // namespace

std::vector<Rational> rational_roots(const QPoly& p) {
  if (p.is_zero()) throw DomainError("zero polynomial has every root");
  std::vector<Rational> roots;
  const auto& c = p.coeffs();
  std::size_t low = 0;
  while (c[low].is_zero()) ++low;
  if (low > 0) roots.push_back(Rational(0));
  if (low + 1 == c.size()) return roots;
  mpz_class L = 1;
  for (std::size_t i = low; i < c.size(); ++i) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c[i].den().get_mpz_t());
  mpz_class a0 = (c[low] * Rational(L)).num(), an = (c.back() * Rational(L)).num();
  auto nums = positive_divisors(a0), dens = positive_divisors(an);
  for (const auto& q : dens)
    for (const auto& n : nums)
      for (int s : {1, -1}) {
        Rational r(s * n, q);
        if (r.den() != q) continue;  // visit each reduced fraction once
        if (p(r).is_zero()) roots.push_back(r);
      }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

int root_multiplicity(const QPoly& p, const Rational& r) {
  int m = 0;
  QPoly q = p;
  while (!q.is_zero() && q(r).is_zero()) {
    ++m;
    q = q.derivative();
  }
  return m;
}

}  // namespace polydyn
