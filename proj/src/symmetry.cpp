#include "polydyn/symmetry.hpp"

#include <numeric>
#include <random>
#include <sstream>

namespace polydyn {

namespace {

long gcd_l(long a, long b) { return std::gcd(a, b); }

// part of m built from the primes dividing mu
long prime_part(long m, long mu) {
  if (mu == 0) return m;
  long r = 1;
  for (long p = 2; p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) {
      m /= p;
      if (mu % p == 0) r *= p;
    }
  }
  return r;
}

template <class R>
SymmetryData symmetry_of_mc(const Poly<R>& p) {
  SymmetryData s;
  s.degree = p.deg();
  auto rp = reduced_presentation(p);
  if (std::holds_alternative<Monomial>(rp)) {
    s.monomial = true;
    s.mu = s.degree;
    s.rho_exponent = s.degree;
    s.m = 0;
    s.aut_order = s.degree - 1;
    return s;
  }
  auto r = std::get<Reduced<R>>(rp);
  s.mu = r.mu;
  s.m = r.m;
  s.rho_exponent = r.mu;
  s.sigma_order = r.m;
  s.sigma0_order = prime_part(r.m, r.mu);
  // zeta in U_m commutes with P iff zeta^(e-1) = 1 on the support
  long a = r.m;
  for (int e : support(p)) a = gcd_l(a, std::labs(e - 1));
  s.aut_order = a;
  return s;
}

}  // namespace

SymmetryData symmetry_group(const QPoly& p) {
  if (p.is_zero() || p.deg() < 2) throw DomainError("symmetry group needs degree >= 2");
  auto nf = normalize_monic_centered(p);
  if (auto q = std::get_if<Conjugated<Rational>>(&nf)) return symmetry_of_mc(q->poly);
  return symmetry_of_mc(std::get<Conjugated<AlgExt>>(nf).poly);
}

SymmetryData symmetry_group(const EPoly& p) {
  if (p.is_zero() || p.deg() < 2) throw DomainError("symmetry group needs degree >= 2");
  return symmetry_of_mc(normalize_monic_centered(p).poly);
}

std::string sigma_label(const SymmetryData& s) {
  return s.sigma_order ? "U_" + std::to_string(*s.sigma_order) : "U_inf";
}
std::string sigma0_label(const SymmetryData& s) {
  if (s.monomial) return "U_{" + std::to_string(s.degree) + "^inf}";
  return "U_" + std::to_string(*s.sigma0_order);
}
std::string aut_label(const SymmetryData& s) { return "U_" + std::to_string(s.aut_order); }

std::string describe(const SymmetryData& s) {
  std::ostringstream os;
  if (s.monomial) os << "monomial z^" << s.degree << "\n";
  else os << "mu = " << s.mu << "\nm = " << s.m << "\n";
  os << "rho(zeta) = zeta^" << s.rho_exponent << "\n";
  os << "Sigma = " << sigma_label(s) << "\nSigma0 = " << sigma0_label(s) << "\nAut = " << aut_label(s) << "\n";
  return os.str();
}

QPoly chebyshev(int d) {
  if (d < 1) throw DomainError("chebyshev needs d >= 1");
  QPoly prev = QPoly::constant(Rational(2)), cur = QPoly::identity();
  for (int k = 1; k < d; ++k) {
    QPoly next = QPoly::identity() * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw DomainError("division by zero polynomial");
  std::vector<Rational> r = a.coeffs();
  int db = b.deg();
  if (a.is_zero() || a.deg() < db) return {QPoly(), a};
  std::vector<Rational> q(a.deg() - db + 1, Rational(0));
  Rational inv = b.leading().inverse();
  for (int i = a.deg(); i >= db; --i) {
    Rational c = r[i] * inv;
    q[i - db] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b.coeff(j);
  }
  return {QPoly(q), QPoly(r)};
}

}  // namespace

std::optional<std::pair<QPoly, QPoly>> right_factor(const QPoly& f, int k, const Rational& lead_v) {
  if (f.is_zero() || k < 1 || f.deg() % k) return std::nullopt;
  const int d = f.deg(), d1 = d / k;
  Rational u = f.leading() / pow(lead_v, d1);
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = lead_v;
  // top coefficients of V from the top k coefficients of F = u V^d1 + ...
  Rational denom = u * Rational(d1) * pow(lead_v, d1 - 1);
  for (int j = 1; j < k; ++j) {
    v[k - j] = Rational(0);
    Rational have = QPoly(v).pow(d1).coeff(d - j) * u;
    v[k - j] = (f.coeff(d - j) - have) / denom;
  }
  QPoly V(v);
  std::vector<Rational> ucoef;
  QPoly rest = f;
  while (!rest.is_zero()) {
    auto [q, r] = divmod(rest, V);
    if (!r.is_zero() && r.deg() > 0) return std::nullopt;
    ucoef.push_back(r.coeff(0));
    rest = q;
  }
  QPoly U(ucoef);
  if (!(U.compose(V) == f)) return std::nullopt;
  return std::make_pair(U, V);
}

std::optional<CompositionalRoot> compositional_root(const QPoly& p, int n) {
  if (n < 2) throw DomainError("compositional root needs n >= 2");
  if (p.is_zero() || p.deg() < 2) throw DomainError("compositional root needs degree >= 2");
  const int d = p.deg();
  int l = 0;
  for (int c = 2; c <= d; ++c) {
    long pw = 1;
    for (int i = 0; i < n && pw <= d; ++i) pw *= c;
    if (pw == d) l = c;
    if (pw >= d) break;
  }
  if (!l) throw DomainError("degree " + std::to_string(d) + " is not a perfect " + std::to_string(n) + "-th power");
  auto sym = symmetry_group(p);
  std::vector<Rational> sigmas{Rational(1)};
  if (!sym.sigma_order || *sym.sigma_order % 2 == 0) sigmas.push_back(Rational(-1));
  long L = 1, E = 0;  // L = l^(n-1), E = 1 + l + ... + l^(n-1)
  for (int i = 0; i < n; ++i) {
    E += L;
    if (i < n - 1) L *= l;
  }
  for (const auto& s : sigmas) {
    for (const Rational& lead : {Rational(1), Rational(-1)}) {
      if (!(s * pow(lead, E) == p.leading())) continue;
      QPoly target = p.scaled(s);  // sigma^-1 = sigma
      auto rf = right_factor(target, l, lead);
      if (!rf) continue;
      auto& [U, V] = *rf;
      // U(w) = Q^{n-1}(w + c) with Q = V + c and Q^{n-1} centered
      Rational c = U.coeff(static_cast<int>(L) - 1) / (Rational(L) * U.leading());
      QPoly Q = V + QPoly::constant(c);
      if (Q.iterate(n).scaled(s) == p) return CompositionalRoot{Q, s};
    }
  }
  return std::nullopt;
}

bool is_primitive(const QPoly& p) {
  const int d = p.deg();
  for (int n = 2; (1 << n) <= d; ++n) {
    bool perfect = false;
    for (int l = 2;; ++l) {
      long pw = 1;
      for (int i = 0; i < n; ++i) pw *= l;
      if (pw == d) perfect = true;
      if (pw >= d) break;
    }
    if (perfect && compositional_root(p, n)) return false;
  }
  return true;
}

std::vector<QPoly> decompose(const QPoly& p) {
  if (p.is_zero() || p.deg() < 1) throw DomainError("decompose needs a nonconstant polynomial");
  if (p.deg() > 64) throw DomainError("decompose is limited to degree 64");
  if (!is_monic_centered(p) && p.deg() > 1) throw DomainError("decompose needs a monic centered polynomial");
  const int d = p.deg();
  for (int d1 = 2; d1 < d; ++d1) {
    if (d % d1) continue;
    auto rf = right_factor(p, d / d1);
    if (!rf) continue;
    auto [U, V] = *rf;
    // recenter: U(w) -> U(w - c), V -> V + c
    Rational c = U.coeff(d1 - 1) / Rational(d1);
    QPoly Uc = U.compose(QPoly(std::vector<Rational>{-c, Rational(1)}));
    QPoly Vc = V + QPoly::constant(c);
    auto outer = decompose(Uc), inner = decompose(Vc);
    outer.insert(outer.end(), inner.begin(), inner.end());
    return outer;
  }
  return {p};
}

std::string to_string(RittMove m) {
  switch (m) {
    case RittMove::M1: return "M1";
    case RittMove::M2: return "M2";
    case RittMove::M3: return "M3";
    default: return "NotAMove";
  }
}

namespace {

// center of the critical points
Rational crit_center(const QPoly& q) {
  int n = q.deg();
  return -q.coeff(n - 1) / (Rational(n) * q.leading());
}

QPoly shifted(const QPoly& q, const Rational& b) { return q.compose(QPoly(std::vector<Rational>{b, Rational(1)})); }

// q = A o T_n o (alpha z + beta) for affine A; returns (beta/alpha... as center, alpha^2)
std::optional<std::pair<Rational, Rational>> chebyshev_shape(const QPoly& q) {
  int n = q.deg();
  if (n < 2) return std::nullopt;
  Rational c = crit_center(q);
  QPoly q1 = shifted(q, c);
  QPoly t = chebyshev(n);
  if (q1.coeff(n - 2).is_zero()) return std::nullopt;
  Rational a2 = q1.leading() * t.coeff(n - 2) / (t.leading() * q1.coeff(n - 2));
  for (int k = 1; k < n; ++k) {
    if ((n - k) % 2) {
      if (!q1.coeff(k).is_zero()) return std::nullopt;
      continue;
    }
    Rational want = q1.leading() * t.coeff(k) / t.leading() * pow(a2, -(n - k) / 2);
    if (!(q1.coeff(k) == want)) return std::nullopt;
  }
  return std::make_pair(c, a2);
}

// q = a (z - c)^n + b
bool power_shape(const QPoly& q) {
  int n = q.deg();
  QPoly q1 = shifted(q, crit_center(q));
  for (int k = 1; k < n; ++k)
    if (!q1.coeff(k).is_zero()) return false;
  return true;
}

// (P, Q) = (nu o z^s R(z)^n o sigma^-1, sigma o z^n o mu) against
// (Pbar, Qbar) = (nu o z^n o tau^-1, tau o z^s R(z^n) o mu)
bool m2_shape(const QPoly& q, const QPoly& pbar, const QPoly& qbar) {
  int n = q.deg();
  if (n < 2 || !power_shape(q) || !power_shape(pbar) || pbar.deg() != n) return false;
  Rational c = crit_center(q);
  QPoly q1 = shifted(qbar, c);
  int s = -1;
  for (int e = 1; e <= q1.deg(); ++e) {
    if (q1.coeff(e).is_zero()) continue;
    if (s < 0) s = e % n;
    else if (e % n != s) return false;
  }
  return s >= 0 && std::gcd(s, n) == 1;
}

}  // namespace

RittMove verify_ritt_move(const QPoly& p, const QPoly& q, const QPoly& pbar, const QPoly& qbar) {
  for (const QPoly* x : {&p, &q, &pbar, &qbar})
    if (x->is_zero() || x->deg() < 1) return RittMove::NotAMove;
  if (!(p.compose(q) == pbar.compose(qbar))) return RittMove::NotAMove;
  if (q.deg() == qbar.deg()) {
    Rational a = qbar.leading() / q.leading();
    QPoly diff = qbar - q.scaled(a);
    if (diff.is_zero() || diff.deg() == 0) return RittMove::M1;
    return RittMove::NotAMove;
  }
  if (p.deg() != qbar.deg() || q.deg() != pbar.deg() || std::gcd(p.deg(), q.deg()) != 1) return RittMove::NotAMove;
  auto cq = chebyshev_shape(q), cqb = chebyshev_shape(qbar);
  if (cq && cqb && *cq == *cqb && chebyshev_shape(p) && chebyshev_shape(pbar)) return RittMove::M3;
  if (m2_shape(q, pbar, qbar) || m2_shape(qbar, p, q)) return RittMove::M2;
  return RittMove::NotAMove;
}

std::vector<StratumRow> stratify(int d, unsigned seed) {
  if (d < 2 || d > 6) throw DomainError("stratify covers degrees 2..6");
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(1, 5), sgn(0, 1);
  auto coef = [&] { return Rational(sgn(rng) ? pick(rng) : -pick(rng)); };
  bool with_complexity = d == 4 || d == 6;
  bool with_primitivity = d == 4;
  auto finish = [&](StratumRow row) {
    row.data = symmetry_group(row.representative);
    if (with_complexity) row.complexity = static_cast<int>(decompose(row.representative).size());
    if (with_primitivity) row.primitive = is_primitive(row.representative);
    return row;
  };
  std::vector<StratumRow> rows;
  if (d >= 3) {
    // generic: every coefficient nonzero, redrawn until Sigma is trivial and the
    // polynomial stays off the special loci of the decomposition table
    for (;;) {
      std::vector<Rational> v(d + 1);
      for (int e = 0; e <= d - 2; ++e) v[e] = coef();
      v[d - 1] = Rational(0);
      v[d] = Rational(1);
      StratumRow row{"no symmetry", 0, 0, QPoly(v), {}, {}, {}};
      row = finish(row);
      if (row.data.sigma_order == 1L && (!row.complexity || *row.complexity == 1)) {
        rows.push_back(row);
        break;
      }
    }
  }
  for (int mu = d - 2; mu >= 0; --mu) {
    for (int k = 2; k <= d - mu; ++k) {
      if ((d - mu) % k) continue;
      int top = (d - mu) / k;
      if (top >= 1 && mu + k * (top - 1) == d - 1) continue;  // would not be centered
      for (;;) {
        std::vector<Rational> q(top + 1);
        for (auto& x : q) x = coef();
        q[top] = Rational(1);
        QPoly rep = from_reduced(Reduced<Rational>{mu, k, QPoly(q)});
        auto rp = reduced_presentation(rep);
        auto* r = std::get_if<Reduced<Rational>>(&rp);
        if (!r || r->m != k || r->mu != mu) continue;
        std::ostringstream id;
        id << "Sigma(" << d << "," << k << "," << mu << ")";
        rows.push_back(finish(StratumRow{id.str(), k, mu, rep, {}, {}, {}}));
        break;
      }
    }
  }
  rows.push_back(finish(StratumRow{"z^" + std::to_string(d), 0, 0, QPoly::monomial(Rational(1), d), {}, {}, {}}));
  return rows;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

std::string stratify_csv(int d, unsigned seed) {
  auto rows = stratify(d, seed);
  std::ostringstream os;
  os << "Range,Aut,Sigma,Sigma0";
  if (d == 4 || d == 6) os << ",Complexity";
  if (d == 4) os << ",Primitivity";
  os << ",Representative\n";
  for (const auto& r : rows) {
    os << csv_field(r.range) << "," << aut_label(r.data) << "," << sigma_label(r.data) << "," << sigma0_label(r.data);
    if (r.complexity) os << "," << *r.complexity;
    if (r.primitive) os << "," << (*r.primitive ? "Yes" : "No");
    os << ",\"" << to_text(r.representative) << "\"\n";
  }
  return os.str();
}

}  // namespace polydyn
