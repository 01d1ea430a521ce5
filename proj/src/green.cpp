#include "polydyn/green.hpp"

#include <cmath>
#include <limits>

namespace polydyn {

namespace {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Escape predicate and tail estimate for a complex polynomial.
struct ComplexEscape {
  int d;
  bool unicritical;
  double lead_abs;
  double c_abs;
  double radius;
  std::vector<double> lower_abs;  // |a_i| for i < d

  explicit ComplexEscape(const ComplexPoly& p) : d(p.deg()) {
    lead_abs = std::abs(p.c.back());
    bool mid_zero = true;
    for (int i = 1; i < d; ++i) mid_zero = mid_zero && p.c[i] == cplx(0);
    unicritical = mid_zero && p.c.back() == cplx(1);
    c_abs = std::abs(p.c[0]);
    double s = 0;
    for (int i = 0; i < d; ++i) {
      lower_abs.push_back(std::abs(p.c[i]));
      s += lower_abs.back();
    }
    radius = unicritical ? std::max(2.0, c_abs) : std::max(1.0, (2 + s) / lead_abs);
  }

  bool fires(cplx z) const {
    double a = std::abs(z);
    if (!(a >= radius)) return false;
    if (!unicritical) return true;
    return a > 2 || c_abs < a || d > 2;
  }

  // |P(z) - A z^d| / |A z^d|
  double eps(double r) const {
    double s = 0, lr = std::log(r);
    for (int i = 0; i < d; ++i) s += lower_abs[i] * std::exp((i - d) * lr);
    return s / lead_abs;
  }
};

}  // namespace

ComplexPoly to_complex(const QPoly& p) {
  ComplexPoly r;
  for (const auto& c : p.coeffs()) r.c.push_back(cplx(c.to_double(), 0));
  return r;
}

ComplexPoly pca_complex(int d, const std::vector<cplx>& c, cplx a) {
  if (d < 2 || static_cast<int>(c.size()) != d - 2) throw DomainError("P_{c,a} needs d >= 2 and d-2 critical points");
  auto s = elementary_symmetric(c);
  ComplexPoly p;
  p.c.assign(d + 1, cplx(0));
  p.c[d] = 1.0 / d;
  for (int j = 2; j <= d - 1; ++j) p.c[j] = (((d - j) % 2) ? -1.0 : 1.0) * s[d - j] / double(j);
  p.c[0] = std::pow(a, d);
  return p;
}

ComplexPoly unicritical_complex(int d, cplx t) {
  ComplexPoly p;
  p.c.assign(d + 1, cplx(0));
  p.c[d] = 1;
  p.c[0] = t;
  return p;
}

EscapeBox escape_box(int d) {
  if (d < 2) throw DomainError("degree must be at least 2");
  double Ad = 1.0 / d + 1;
  for (int j = 2; j <= d - 1; ++j) Ad += binom(d - 2, d - j) / j;
  auto ratio = [d](double rho) {
    double f = std::pow(rho, d) / d - 1;
    for (int j = 2; j <= d - 1; ++j) f -= binom(d - 2, d - j) * std::pow(rho, j) / j;
    return f / std::pow(rho, d);
  };
  // ratio is increasing in rho; bisect for ratio >= 1/(2d)
  double lo = 1, hi = 2;
  while (ratio(hi) < 0.5 / d) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (ratio(mid) >= 0.5 / d ? hi : lo) = mid;
  }
  double rho = std::max(hi, std::pow(4.0 * d, 1.0 / (d - 1)));
  // round up to a multiple of 1/1024 so the constant prints exactly
  rho = std::ceil(rho * 1024) / 1024;
  return EscapeBox{2 * rho, 2 * std::log(Ad) / (d - 1)};
}

double growth_constant(int d) {
  EscapeBox b = escape_box(d);
  return b.theta + std::log(b.C) + std::log(8.0);
}

bool escape_test_pca(const std::vector<cplx>& c, cplx a, cplx z) {
  int d = static_cast<int>(c.size()) + 2;
  double m = std::max(1.0, std::abs(a));
  for (const auto& ci : c) m = std::max(m, std::abs(ci));
  return std::abs(z) > escape_box(d).C * m;
}

bool escape_test_unicritical(int d, cplx t, cplx z) {
  double a = std::abs(z), c = std::abs(t);
  if (!(a >= std::max(2.0, c))) return false;
  return a > 2 || c < a || d > 2;
}

GreenValue green_value(const ComplexPoly& p, cplx z, int n_max) {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  if (p.deg() < 2) throw DomainError("Green function needs degree >= 2");
  ComplexEscape esc(p);
  const int d = p.deg();
  GreenValue g;
  int n = 0;
  for (; n <= n_max; ++n) {
    if (esc.fires(z)) break;
    if (n == n_max) return g;
    z = p(z);
  }
  g.escape_step = n;
  // push further out so the tail estimate is tiny; stay clear of overflow
  int extra = 0;
  while (esc.eps(std::abs(z)) > 1e-17 && d * std::log10(std::abs(z)) < 250 && extra < 64) {
    z = p(z);
    ++n;
    ++extra;
  }
  const double r = std::abs(z);
  const double e = esc.eps(r);
  const double scale = std::pow(double(d), -n);
  const double h = std::log(r) + std::log(esc.lead_abs) / (d - 1);
  g.value = std::max(0.0, h * scale);
  const double u = std::numeric_limits<double>::epsilon();
  double trunc = -std::log1p(-e) / (d - 1);
  double rounding = 16 * u * (extra + 1) * (d + 2) + 16 * u * std::abs(h);
  g.error_bound = (trunc + rounding) * scale;
  return g;
}

double crit_green(const ComplexPoly& p, const std::vector<cplx>& critical_points, int n_max) {
  double G = 0;
  for (const auto& c : critical_points) G = std::max(G, green_value(p, c, n_max).value);
  return G;
}

double crit_green(const std::vector<cplx>& c, cplx a, int n_max) {
  int d = static_cast<int>(c.size()) + 2;
  std::vector<cplx> crit{cplx(0)};
  crit.insert(crit.end(), c.begin(), c.end());
  return crit_green(pca_complex(d, c, a), crit, n_max);
}

}  // namespace polydyn
