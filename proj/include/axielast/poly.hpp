#pragma once

#include <cassert>
#include <vector>

namespace axielast {

// Dense bivariate polynomial in graded-lex monomial order:
// index(a,b) = (a+b)(a+b+1)/2 + b for the monomial xi^a eta^b.
struct Poly2 {
  int deg = 0;
  std::vector<double> c;

  Poly2() : c(1, 0.0) {}
  explicit Poly2(int degree) : deg(degree), c(dim(degree), 0.0) {}

  static int dim(int degree) { return (degree + 1) * (degree + 2) / 2; }
  static int index(int a, int b) { return (a + b) * (a + b + 1) / 2 + b; }

  static Poly2 monomial(int a, int b, double coeff = 1.0) {
    Poly2 p(a + b);
    p.c[index(a, b)] = coeff;
    return p;
  }

  double& at(int a, int b) { return c[index(a, b)]; }
  double at(int a, int b) const {
    const int i = index(a, b);
    return i < int(c.size()) ? c[i] : 0.0;
  }

  double eval(double xi, double eta) const {
    // Evaluate by total degree bands; powers accumulated iteratively.
    double result = 0.0;
    int idx = 0;
    std::vector<double> xp(deg + 1, 1.0), yp(deg + 1, 1.0);
    for (int i = 1; i <= deg; ++i) {
      xp[i] = xp[i - 1] * xi;
      yp[i] = yp[i - 1] * eta;
    }
    for (int d = 0; d <= deg; ++d)
      for (int b = 0; b <= d; ++b, ++idx) result += c[idx] * xp[d - b] * yp[b];
    return result;
  }

  Poly2 dxi() const {
    Poly2 out(deg > 0 ? deg - 1 : 0);
    for (int d = 1; d <= deg; ++d)
      for (int b = 0; b <= d; ++b) {
        const int a = d - b;
        if (a > 0) out.at(a - 1, b) += a * c[index(a, b)];
      }
    return out;
  }

  Poly2 deta() const {
    Poly2 out(deg > 0 ? deg - 1 : 0);
    for (int d = 1; d <= deg; ++d)
      for (int b = 1; b <= d; ++b) out.at(d - b, b - 1) += b * c[index(d - b, b)];
    return out;
  }

  friend Poly2 operator*(const Poly2& p, const Poly2& q) {
    Poly2 out(p.deg + q.deg);
    for (int dp = 0; dp <= p.deg; ++dp)
      for (int bp = 0; bp <= dp; ++bp) {
        const double cp = p.c[index(dp - bp, bp)];
        if (cp == 0.0) continue;
        for (int dq = 0; dq <= q.deg; ++dq)
          for (int bq = 0; bq <= dq; ++bq)
            out.at(dp - bp + dq - bq, bp + bq) += cp * q.c[index(dq - bq, bq)];
      }
    return out;
  }

  friend Poly2 operator+(const Poly2& p, const Poly2& q) {
    Poly2 out(p.deg > q.deg ? p.deg : q.deg);
    for (int i = 0; i < int(p.c.size()); ++i) out.c[i] += p.c[i];
    for (int i = 0; i < int(q.c.size()); ++i) out.c[i] += q.c[i];
    return out;
  }

  friend Poly2 operator*(double s, const Poly2& p) {
    Poly2 out = p;
    for (double& v : out.c) v *= s;
    return out;
  }

  // Exact integral over the reference triangle: sum of c_ab * a!b!/(a+b+2)!.
  double integral() const {
    double result = 0.0;
    for (int d = 0; d <= deg; ++d)
      for (int b = 0; b <= d; ++b) {
        const int a = d - b;
        long double fs = 1.0L, ft = 1.0L, fd = 1.0L;
        for (int i = 2; i <= a; ++i) fs *= i;
        for (int i = 2; i <= b; ++i) ft *= i;
        for (int i = 2; i <= a + b + 2; ++i) fd *= i;
        result += c[index(a, b)] * double(fs * ft / fd);
      }
    return result;
  }
};

}  // namespace axielast
