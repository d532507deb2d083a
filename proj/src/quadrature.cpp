#include "axielast/quadrature.hpp"

#include <cmath>

namespace axielast {

std::vector<std::array<double, 2>> gauss_legendre_01(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_01: n must be >= 1");
  std::vector<std::array<double, 2>> out(n);
  // Newton iteration on P_n over [-1,1], then map to (0,1).
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      if (n == 1) p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = (n == 1) ? x : p1;
      const double pn1 = (n == 1) ? 1.0 : p0;
      dp = n * (x * pn - pn1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out[n - 1 - i] = {0.5 * (1.0 + x), 0.5 * w};
  }
  return out;
}

QuadratureRule edge_gauss_rule(int npoints) {
  if (npoints < 1 || npoints > 5)
    throw std::invalid_argument("edge_gauss_rule: npoints must be in 1..5");
  QuadratureRule rule;
  rule.edge_rule = true;
  rule.exactness = 2 * npoints - 1;
  for (const auto& nw : gauss_legendre_01(npoints)) {
    rule.points.emplace_back(nw[0], 0.0);
    rule.weights.push_back(nw[1]);
  }
  return rule;
}

QuadratureRule triangle_gauss_rule(int exactness) {
  if (exactness < 0 || exactness > 20)
    throw std::invalid_argument("triangle_gauss_rule: exactness must be in 0..20");
  QuadratureRule rule;
  rule.exactness = exactness;

  if (exactness <= 1) {
    rule.points.emplace_back(1.0 / 3.0, 1.0 / 3.0);
    rule.weights.push_back(0.5);
    return rule;
  }
  if (exactness == 2) {
    rule.points.emplace_back(1.0 / 6.0, 1.0 / 6.0);
    rule.points.emplace_back(2.0 / 3.0, 1.0 / 6.0);
    rule.points.emplace_back(1.0 / 6.0, 2.0 / 3.0);
    rule.weights.assign(3, 1.0 / 6.0);
    return rule;
  }

  // Conical product rule: xi = u, eta = v(1-u), Jacobian (1-u). Exact for
  // total degree <= exactness, points strictly interior, weights positive.
  const int mu = (exactness + 3) / 2;  // covers degree exactness+1 in u
  const int mv = (exactness + 2) / 2;  // covers degree exactness in v
  const auto gu = gauss_legendre_01(mu);
  const auto gv = gauss_legendre_01(mv);
  for (const auto& pu : gu) {
    for (const auto& pv : gv) {
      rule.points.emplace_back(pu[0], pv[0] * (1.0 - pu[0]));
      rule.weights.push_back(pu[1] * pv[1] * (1.0 - pu[0]));
    }
  }
  return rule;
}

double exact_weighted_monomial(int s, int t, double r1, double r2, bool include_one) {
  if (s < 0 || t < 0)
    throw std::invalid_argument("exact_weighted_monomial: exponents must be >= 0");
  long double fs = 1.0L, ft = 1.0L, fd = 1.0L;
  for (int i = 2; i <= s; ++i) fs *= i;
  for (int i = 2; i <= t; ++i) ft *= i;
  for (int i = 2; i <= s + t + 3; ++i) fd *= i;
  const long double scale = fs * ft / fd;
  const long double bracket =
      r1 * (s + 1) + r2 * (t + 1) + (include_one ? (s + t + 3) : 0);
  return double(scale * bracket);
}

}  // namespace axielast
