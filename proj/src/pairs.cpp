#include "polydyn/pairs.hpp"

#include <map>
#include <sstream>

namespace polydyn {

DynPair::DynPair(TPoly f, ParamPoly a) : family(std::move(f)), marked(std::move(a)) {
  if (family.is_zero() || family.deg() < 2) throw DomainError("a dynamical pair needs degree >= 2");
  if (!family.leading().is_constant())
    throw DomainError("leading coefficient must be constant in t; normalize the family first");
}

bool DynPair::is_constant() const {
  if (!marked.is_constant()) return false;
  for (const auto& c : family.coeffs())
    if (!c.is_constant()) return false;
  return true;
}

int coefficient_degree_bound(const TPoly& family) {
  int D = 0;
  for (const auto& c : family.coeffs())
    if (!c.is_zero()) D = std::max(D, c.degree().value());
  return D;
}

ParamPoly eval_family(const TPoly& family, const ParamPoly& z) { return family(z); }

DivisorOrder divisor_order(const DynPair& pair, int q_max, std::size_t max_bits) {
  if (q_max < 1) throw DomainError("q_max must be at least 1");
  const int d = pair.degree();
  const int D = coefficient_degree_bound(pair.family);
  DivisorOrder out;
  std::map<ParamPoly, int> seen;
  ParamPoly x = pair.marked;
  for (int n = 0; n <= q_max; ++n) {
    Degree e = x.degree();
    out.witness_degrees.push_back(e);
    if (!e.is_neg_inf() && e.value() > D) {
      // leading term dominates from here on; confirm one more step
      ParamPoly next = pair.family(x);
      out.witness_degrees.push_back(next.degree());
      if (next.degree() != Degree(d * e.value())) throw DomainError("internal: degree growth check failed");
      mpz_class dn;
      mpz_ui_pow_ui(dn.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(n));
      out.status = DivisorStatus::Stabilized;
      out.q = Rational(mpz_class(e.value()), dn);
      out.stabilized_at = n;
      return out;
    }
    auto it = seen.find(x);
    if (it != seen.end()) {
      out.status = DivisorStatus::Passive;
      out.q = Rational(0);
      out.preperiod = std::make_pair(n, it->second);
      return out;
    }
    if (x.bits() > max_bits) {
      out.reason = "bit cap";
      break;
    }
    seen.emplace(x, n);
    if (n < q_max) x = pair.family(x);
  }
  if (pair.is_constant()) {
    // constant pairs have constant orbits: every degree is <= 0
    out.status = DivisorStatus::Passive;
    out.q = Rational(0);
    out.reason = "isotrivial";
    return out;
  }
  if (out.reason.empty()) out.reason = "degrees bounded without exact preperiodicity up to q_max";
  out.status = DivisorStatus::Unknown;
  return out;
}

PairClass classify_pair(const DynPair& pair, int q_max) {
  auto dv = divisor_order(pair, q_max);
  if (dv.status == DivisorStatus::Stabilized) {
    if (dv.q > Rational(0)) return Active{dv.q};
  }
  if (dv.preperiod) return PassivePreperiodic{dv.preperiod->first, dv.preperiod->second};
  if (pair.is_constant()) return PassiveIsotrivial{};
  return PairUnknown{dv.reason};
}

std::string describe(const PairClass& c) {
  std::ostringstream os;
  if (auto a = std::get_if<Active>(&c)) os << "active q=" << a->q.str();
  else if (auto p = std::get_if<PassivePreperiodic>(&c)) os << "passive preperiodic n=" << p->n << " m=" << p->m;
  else if (std::holds_alternative<PassiveIsotrivial>(c)) os << "passive isotrivial";
  else os << "unknown (" << std::get<PairUnknown>(c).reason << ")";
  return os.str();
}

std::optional<Rational> family_crit_order(const std::vector<ParamPoly>& c, const ParamPoly& a, int q_max) {
  int d = static_cast<int>(c.size()) + 2;
  TPoly P = build_pca(d, c, a);
  std::vector<ParamPoly> crit{ParamPoly(0)};
  crit.insert(crit.end(), c.begin(), c.end());
  Rational best;
  for (const auto& ci : crit) {
    auto dv = divisor_order(DynPair(P, ci), q_max);
    if (dv.status == DivisorStatus::Unknown) return std::nullopt;
    if (dv.q > best) best = dv.q;
  }
  return best;
}

namespace {

QPoly specialize(const TPoly& f, const Rational& t) {
  std::vector<Rational> v;
  for (const auto& c : f.coeffs()) v.push_back(c.eval(t));
  return QPoly(v);
}

// Lagrange interpolation through (x_i, y_i).
ParamPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  ParamPoly r;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ParamPoly basis(1);
    Rational den(1);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = basis * ParamPoly(std::vector<Rational>{-xs[j], Rational(1)});
      den *= xs[i] - xs[j];
    }
    r = r + basis * ParamPoly(ys[i] / den);
  }
  return r;
}

// one root of the monic F in Q[t], searching interpolants of specialized roots
std::optional<ParamPoly> find_root(const TPoly& F) {
  const int n = F.deg();
  int D = 0;
  for (int i = 0; i < n; ++i) {
    if (F.coeff(i).is_zero()) continue;
    D = std::max(D, F.coeff(i).degree().value() / (n - i));
  }
  std::vector<Rational> xs;
  std::vector<std::vector<Rational>> rs;
  for (int s = 0; static_cast<int>(xs.size()) < D + 1 && s < 64; ++s) {
    Rational t(s);
    QPoly spec = specialize(F, t);
    auto roots = rational_roots(spec);
    if (roots.empty()) return std::nullopt;
    xs.push_back(t);
    rs.push_back(roots);
  }
  std::vector<std::size_t> idx(xs.size(), 0);
  std::size_t tried = 0;
  while (true) {
    std::vector<Rational> ys;
    for (std::size_t i = 0; i < xs.size(); ++i) ys.push_back(rs[i][idx[i]]);
    ParamPoly r = interpolate(xs, ys);
    if (F(r).is_zero()) return r;
    if (++tried > 100000) return std::nullopt;
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == rs[k].size()) idx[k++] = 0;
    if (k == idx.size()) return std::nullopt;
  }
}

}  // namespace

std::optional<std::vector<ParamPoly>> critical_points(const TPoly& family) {
  if (!family.leading().is_constant()) throw DomainError("leading coefficient must be constant in t");
  TPoly F = family.derivative();
  F = F.scaled(F.leading().inverse());
  std::vector<ParamPoly> out;
  while (F.deg() > 0) {
    auto r = find_root(F);
    if (!r) return std::nullopt;
    // synthetic division by (z - r)
    int n = F.deg();
    std::vector<ParamPoly> q(n, ParamPoly());
    ParamPoly carry;
    for (int i = n; i >= 1; --i) {
      carry = F.coeff(i) + carry * *r;
      q[i - 1] = carry;
    }
    out.push_back(*r);
    F = TPoly(q);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<CritOrder> family_crit_order(const TPoly& family, int q_max) {
  if (!family.leading().is_constant()) throw DomainError("leading coefficient must be constant in t");
  std::optional<std::vector<ParamPoly>> crit;
  try {
    crit = critical_points(family);
  } catch (const DomainError&) {
    crit.reset();
  }
  if (crit) {
    Rational best;
    for (const auto& c : *crit) {
      auto dv = divisor_order(DynPair(family, c), q_max);
      if (dv.status == DivisorStatus::Unknown) return std::nullopt;
      if (dv.q > best) best = dv.q;
    }
    return CritOrder{best, true, {}};
  }
  const int d = family.deg();
  Rational bound;
  auto upd = [&](const ParamPoly& c, int i) {
    if (c.is_zero()) return;
    Rational v(c.degree().value(), i);
    if (v > bound) bound = v;
  };
  for (int i = 1; i <= d; ++i) upd(family.coeff(d - i), i);
  TPoly F = family.derivative();
  for (int i = 1; i <= d - 1; ++i) upd(F.coeff(d - 1 - i), i);
  return CritOrder{bound, false, {}};
}

}  // namespace polydyn
