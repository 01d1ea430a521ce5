#include "polydyn/bottcher.hpp"

namespace polydyn {

namespace {

EPoly lift(const QPoly& p, const Modulus& m) {
  std::vector<AlgExt> v;
  for (const auto& c : p.coeffs()) v.push_back(AlgExt(c).bound_to(m));
  return EPoly(std::move(v));
}

AlgExt ext_alpha(const EPoly& p) {
  if (p.is_zero() || p.deg() < 2) throw DomainError("Bottcher series needs degree >= 2");
  if (auto r = root_in(p.leading(), p.deg() - 1)) return *r;
  const auto& lead = p.leading();
  if (lead.is_rational() && !lead.modulus()) return AlgExt::generator(Modulus{p.deg() - 1, lead.as_rational()});
  throw DomainError("leading coefficient has no (d-1)-th root in this extension");
}

EPoly bind_all(const EPoly& p, const AlgExt& alpha) {
  if (!alpha.modulus()) return p;
  std::vector<AlgExt> v;
  for (const auto& c : p.coeffs()) v.push_back(c.bound_to(*alpha.modulus()));
  return EPoly(std::move(v));
}

}  // namespace

ParamPoly param_alpha(const TPoly& p) {
  if (p.is_zero() || p.deg() < 2) throw DomainError("Bottcher series needs degree >= 2");
  if (!p.leading().is_constant())
    throw DomainError("leading coefficient must be constant in t; normalize the family first");
  Rational r;
  if (!exact_root(p.leading().coeff(0), p.deg() - 1, r))
    throw DomainError("leading coefficient has no rational (d-1)-th root; extensions of parameter rings are not supported");
  return ParamPoly(r);
}

AnyBottcher bottcher_series(const AnyPoly& p, int M) {
  if (M < 1) throw DomainError("truncation order must be at least 1");
  if (auto q = std::get_if<QPoly>(&p)) {
    auto root = leading_root(*q);
    if (auto r = std::get_if<Rational>(&root)) return bottcher_series(*q, *r, M);
    const auto& a = std::get<AlgExt>(root);
    return bottcher_series(lift(*q, *a.modulus()), a, M);
  }
  if (auto e = std::get_if<EPoly>(&p)) {
    auto a = ext_alpha(*e);
    return bottcher_series(bind_all(*e, a), a, M);
  }
  const auto& t = std::get<TPoly>(p);
  return bottcher_series(t, param_alpha(t), M);
}

AnyHat bottcher_power(const AnyPoly& p, int k, int M) {
  if (k < 1) throw DomainError("power k must be at least 1");
  auto s = bottcher_series(p, std::max(1, k + M - 1));
  return std::visit([&](const auto& b) -> AnyHat { return bottcher_power(b, k, M); }, s);
}

bool verify_hat_functoriality(const AnyPoly& p, int k) {
  if (k < 1) throw DomainError("power k must be at least 1");
  int d = std::visit([](const auto& q) { return q.deg(); }, p);
  auto s = bottcher_series(p, std::max(1, k * d - 1));
  return std::visit(
      [&](const auto& b) {
        return verify_hat_functoriality(b.base, bottcher_power(b, k, 0), bottcher_power(b, k * d, 0));
      },
      s);
}

}  // namespace polydyn
