#include "polydyn/entangle.hpp"

#include <map>
#include <numeric>

#include "json.hpp"
#include "polydyn/bottcher.hpp"
#include "polydyn/errors.hpp"

namespace polydyn {

std::string to_string(EntangleVerdict v) {
  switch (v) {
    case EntangleVerdict::Certificate: return "Certificate";
    case EntangleVerdict::Refuted: return "Refuted";
    case EntangleVerdict::Undecided: return "Undecided";
  }
  return "?";
}

std::string to_string(EntangleStage s) {
  switch (s) {
    case EntangleStage::None: return "None";
    case EntangleStage::Inactive: return "Inactive";
    case EntangleStage::DegreesIndependent: return "DegreesIndependent";
    case EntangleStage::DivisorsNotProportional: return "DivisorsNotProportional";
    case EntangleStage::LinearSystemInconsistent: return "LinearSystemInconsistent";
    case EntangleStage::FinalIdentityFails: return "FinalIdentityFails";
    case EntangleStage::Caps: return "Caps";
  }
  return "?";
}

namespace {

std::map<long, int> factor(long n) {
  std::map<long, int> f;
  for (long p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      ++f[p];
      n /= p;
    }
  if (n > 1) ++f[n];
  return f;
}

// minimal N, M >= 1 with d^N = e^M
std::optional<std::pair<int, int>> degree_relation(long d, long e) {
  auto fd = factor(d), fe = factor(e);
  if (fd.size() != fe.size()) return std::nullopt;
  std::optional<std::pair<int, int>> nm;
  for (auto [p, a] : fd) {
    auto it = fe.find(p);
    if (it == fe.end()) return std::nullopt;
    int b = it->second, g = std::gcd(a, b);
    std::pair<int, int> r{b / g, a / g};
    if (nm && *nm != r) return std::nullopt;
    nm = r;
  }
  return nm;
}

ParamPoly eval_at(const TPoly& p, const ParamPoly& z) { return eval_family(p, z); }

TPoly scaled(const TPoly& p, int s) { return s == 1 ? p : TPoly::constant(ParamPoly(-1)) * p; }

// F = sum r_i H^i; nullopt unless every r_i is free of z
std::optional<TPoly> h_adic(TPoly F, const TPoly& H) {
  const int n = H.deg();
  const ParamPoly inv = H.leading().inverse();
  std::vector<ParamPoly> digits;
  while (!F.is_zero()) {
    // one Euclidean division F = q H + r
    TPoly q;
    TPoly r = F;
    while (!r.is_zero() && r.deg() >= n) {
      int k = r.deg() - n;
      TPoly mono = TPoly::monomial(r.leading() * inv, k);
      q = q + mono;
      r = r - mono * H;
    }
    if (!r.is_zero() && r.deg() > 0) return std::nullopt;
    digits.push_back(r.is_zero() ? ParamPoly(0) : r.coeff(0));
    F = q;
  }
  return TPoly(digits);
}

long ipow(long b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

TPoly bottcher_hat(const TPoly& p, int n) {
  return bottcher_power(p, param_alpha(p), n, 0).hat;
}

}  // namespace

TPoly hat_by_iteration(const TPoly& family, int n) {
  if (n < 1) throw DomainError("power must be at least 1");
  const int d = family.deg();
  const ParamPoly alpha = param_alpha(family);
  const ParamPoly A = family.leading();
  const ParamPoly c0 = alpha * family.coeff(d - 1) * (ParamPoly(Rational(d)) * A).inverse();
  int j = 1;
  long D = d;
  while (2 * D <= n) {
    D *= d;
    ++j;
  }
  TPoly G = TPoly::constant(alpha) * family.iterate(j) + TPoly::constant(c0);
  const ParamPoly lead = G.leading();
  const ParamPoly linv = lead.inverse();
  std::vector<ParamPoly> h(n + 1, ParamPoly(0));
  for (int i = 0; i <= n; ++i) h[i] = G.coeff(static_cast<int>(D) - i) * linv;
  // g = h^r with r = n / D, h_0 = 1
  const Rational r(n, D);
  std::vector<ParamPoly> g(n + 1, ParamPoly(0));
  g[0] = 1;
  for (int mm = 1; mm <= n; ++mm) {
    ParamPoly acc(0);
    for (int i = 1; i <= mm; ++i) acc += ParamPoly((r + Rational(1)) * Rational(i) - Rational(mm)) * h[i] * g[mm - i];
    g[mm] = acc * ParamPoly(Rational(1, mm));
  }
  ParamPoly an = 1;
  for (int i = 0; i < n; ++i) an = an * alpha;
  std::vector<ParamPoly> out(n + 1);
  for (int i = 0; i <= n; ++i) out[n - i] = an * g[i];
  return TPoly(out);
}

namespace {

struct Identities {
  bool hatA, hatB, final;
};

Identities check(const Certificate& c, const DynPair& A, const DynPair& B, const TPoly& Hp, const TPoly& Hq) {
  const TPoly PNL = A.family.iterate(c.N * c.L), QML = B.family.iterate(c.M * c.L);
  const TPoly zq = scaled(Hq, c.zeta);
  Identities r;
  r.hatA = Hp.compose(PNL) == c.R.compose(Hp);
  r.hatB = zq.compose(QML) == c.R.compose(zq);
  ParamPoly a = A.marked, b = B.marked;
  for (int i = 0; i < c.l * c.N; ++i) a = eval_at(A.family, a);
  for (int i = 0; i < c.l * c.M; ++i) b = eval_at(B.family, b);
  r.final = eval_at(Hp, a) == eval_at(zq, b);
  return r;
}

}  // namespace

EntangleOutcome entangle_decide(const DynPair& A, const DynPair& B, const EntangleCaps& caps) {
  EntangleOutcome out;
  auto refute = [&](EntangleStage s, std::string why) {
    out.verdict = EntangleVerdict::Refuted;
    out.stage = s;
    out.detail = std::move(why);
    return out;
  };
  auto undecided = [&](EntangleStage s, std::string why) {
    out.verdict = EntangleVerdict::Undecided;
    out.stage = s;
    out.detail = std::move(why);
    return out;
  };

  // activity
  auto ca = classify_pair(A, caps.q_max), cb = classify_pair(B, caps.q_max);
  for (auto* c : {&ca, &cb}) {
    if (std::holds_alternative<PairUnknown>(*c)) return undecided(EntangleStage::Inactive, describe(*c));
  }
  if (!std::holds_alternative<Active>(ca) || !std::holds_alternative<Active>(cb))
    return refute(EntangleStage::Inactive, "A: " + describe(ca) + "; B: " + describe(cb));
  const Rational qA = std::get<Active>(ca).q, qB = std::get<Active>(cb).q;
  out.qA = qA;
  out.qB = qB;

  // divisors: both supported at infinity only, so proportional once positive
  if (!(Rational(0) < qA) || !(Rational(0) < qB))
    return refute(EntangleStage::DivisorsNotProportional, "zero divisor order");
  const Rational ratio = qB / qA;  // = n / m
  Certificate c;
  c.n = static_cast<int>(ratio.num().get_si());
  c.m = static_cast<int>(ratio.den().get_si());

  const int d = A.degree(), e = B.degree();
  auto nm = degree_relation(d, e);
  if (!nm) return refute(EntangleStage::DegreesIndependent, std::to_string(d) + " and " + std::to_string(e));
  c.N = nm->first;
  c.M = nm->second;
  const long Delta = ipow(d, c.N);

  auto coA = family_crit_order(A.family, caps.q_max), coB = family_crit_order(B.family, caps.q_max);
  if (!coA || !coB || coA->unknown.value_or(false) || coB->unknown.value_or(false))
    return undecided(EntangleStage::Caps, "critical divisor order unavailable");
  c.l = 1;
  for (;;) {
    Rational Dl(ipow(Delta, c.l));
    if (coA->q < Dl * qA && coB->q < Dl * qB) break;
    if (++c.l > 30 || ipow(Delta, c.l) > caps.max_degree)
      return undecided(EntangleStage::Caps, "no l within caps");
  }
  c.L = 1;
  if (static_cast<long>(c.n) * Delta > caps.max_degree || static_cast<long>(c.m) * Delta > caps.max_degree)
    return undecided(EntangleStage::Caps, "composite degree above cap");

  const TPoly Hp = bottcher_hat(A.family, c.n), Hq = bottcher_hat(B.family, c.m);
  auto R = h_adic(Hp.compose(A.family.iterate(c.N * c.L)), Hp);
  if (!R) return refute(EntangleStage::LinearSystemInconsistent, "first hat equation has no polynomial solution");
  c.R = *R;

  bool hatB = false;
  for (int zeta : {1, -1}) {
    c.zeta = zeta;
    auto ids = check(c, A, B, Hp, Hq);
    if (!ids.hatA) return refute(EntangleStage::LinearSystemInconsistent, "first hat equation");
    if (!ids.hatB) continue;
    hatB = true;
    if (ids.final) {
      out.verdict = EntangleVerdict::Certificate;
      out.cert = c;
      return out;
    }
  }
  if (!hatB) return refute(EntangleStage::LinearSystemInconsistent, "second hat equation fails for zeta = +1, -1");
  return refute(EntangleStage::FinalIdentityFails, "marked points not related for zeta = +1, -1");
}

bool verify_certificate(const Certificate& c, const DynPair& A, const DynPair& B) {
  if (c.n < 1 || c.m < 1 || c.N < 1 || c.M < 1 || c.l < 1 || c.L < 1) return false;
  if (c.zeta != 1 && c.zeta != -1) return false;
  long dn = 1, em = 1;
  for (int i = 0; i < c.N; ++i) dn *= A.degree();
  for (int i = 0; i < c.M; ++i) em *= B.degree();
  if (dn != em) return false;
  auto ids = check(c, A, B, hat_by_iteration(A.family, c.n), hat_by_iteration(B.family, c.m));
  return ids.hatA && ids.hatB && ids.final;
}

std::string EntangleOutcome::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = polydyn::to_string(verdict);
  if (stage != EntangleStage::None) j["stage"] = polydyn::to_string(stage);
  if (qA) j["qA"] = qA->str();
  if (qB) j["qB"] = qB->str();
  if (cert) {
    j["n"] = cert->n;
    j["m"] = cert->m;
    j["N"] = cert->N;
    j["M"] = cert->M;
    j["l"] = cert->l;
    j["L"] = cert->L;
    j["zeta"] = cert->zeta;
    nlohmann::ordered_json R = nlohmann::ordered_json::array();
    for (const auto& co : cert->R.coeffs()) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (const auto& x : co.coeffs()) row.push_back(x.str());
      R.push_back(row);
    }
    j["R"] = R;  // R[i][k] = coefficient of t^k z^i
    j["R_text"] = to_text(cert->R);
  }
  if (!detail.empty()) j["detail"] = detail;
  return j.dump(2);
}

}  // namespace polydyn
