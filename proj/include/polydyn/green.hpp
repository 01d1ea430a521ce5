#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "polydyn/poly.hpp"

namespace polydyn {

using cplx = std::complex<double>;

struct ComplexPoly {
  std::vector<cplx> c;  // z^0 first
  int deg() const { return static_cast<int>(c.size()) - 1; }
  cplx operator()(cplx z) const {
    cplx acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
  }
};

ComplexPoly to_complex(const QPoly& p);
ComplexPoly pca_complex(int d, const std::vector<cplx>& c, cplx a);
ComplexPoly unicritical_complex(int d, cplx t);

struct GreenValue {
  double value = 0;
  double error_bound = 0;
  std::optional<int> escape_step;
};

// C and theta for the family P_{c,a} in degree d (Archimedean absolute value).
//  theta = 2 log(A_d)/(d-1), A_d = 1/d + sum_{j=2}^{d-1} C(d-2,d-j)/j + 1, bounds |P(z)| <= A_d max{1,|z|,|c|,|a|}^d.
//  C = 2 rho*, where rho* >= (4d)^{1/(d-1)} is the least rho with
//      rho^d/d - sum_j C(d-2,d-j) rho^j/j - 1 >= rho^d/(2d),
//  so |z| > C max{1,|c|,|a|} gives |P(z)| >= max{2|z|, |z|^d/(2d)}.
struct EscapeBox {
  double C;
  double theta;
};
EscapeBox escape_box(int d);

// Constant bounding |G(P_{c,a}) - log+ max{|c|,|a|}|, see README.
double growth_constant(int d);

bool escape_test_pca(const std::vector<cplx>& c, cplx a, cplx z);
// z^d + t: |z| >= max{2,|t|} with the strictness needed at z = 2 = -t.
bool escape_test_unicritical(int d, cplx t, cplx z);

GreenValue green_value(const ComplexPoly& p, cplx z, int n_max);
inline GreenValue green_value(const QPoly& p, cplx z, int n_max) { return green_value(to_complex(p), z, n_max); }

double crit_green(const std::vector<cplx>& c, cplx a, int n_max = 1000);
double crit_green(const ComplexPoly& p, const std::vector<cplx>& critical_points, int n_max = 1000);

}  // namespace polydyn
