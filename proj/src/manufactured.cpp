#include "axielast/manufactured.hpp"

#include <cmath>
#include <stdexcept>

namespace axielast {

namespace {

ManufacturedCase experiment1_default() {
  ManufacturedCase mc;
  mc.id = "exp1";
  mc.displacement = [](double r, double z) {
    const double v = 4.0 * r * r * r * (1.0 - r) * z * (1.0 - z);
    return Eigen::Vector2d(v, -v);
  };
  mc.stress = [](double r, double z) {
    const double r2 = r * r;
    const double s11 =
        4.0 * r2 * (-2.0 * r2 * z + r2 + 9.0 * r * z * z - 7.0 * r * z - r - 7.0 * z * z + 7.0 * z);
    const double s12 =
        2.0 * r2 * (2.0 * r2 * z - r2 - 4.0 * r * z * z + 2.0 * r * z + r + 3.0 * z * z - 3.0 * z);
    const double s22 =
        4.0 * r2 * (-4.0 * r2 * z + 2.0 * r2 + 5.0 * r * z * z - r * z - 2.0 * r - 4.0 * z * z + 4.0 * z);
    Eigen::Matrix2d s;
    s << s11, s12, s12, s22;
    return s;
  };
  mc.hoop = [](double r, double z) {
    const double r2 = r * r;
    return 4.0 * r2 *
           (-2.0 * r2 * z + r2 + 6.0 * r * z * z - 4.0 * r * z - r - 5.0 * z * z + 5.0 * z);
  };
  mc.rotation = [](double r, double z) {
    const double P = r * r * r - r * r * r * r;
    const double Pp = 3.0 * r * r - 4.0 * r * r * r;
    const double Q = z - z * z;
    const double Qp = 1.0 - 2.0 * z;
    return 2.0 * (P * Qp + Pp * Q);
  };
  mc.body_force = [](double r, double z) {
    const double fr = 2.0 * r *
                      (2.0 * r * r * r - 24.0 * r * r * z + 10.0 * r * r + 60.0 * r * z * z -
                       42.0 * r * z - 9.0 * r - 32.0 * z * z + 32.0 * z);
    const double fz = -2.0 * r *
                      (8.0 * r * r * r + r * r * (7.0 - 30.0 * z) +
                       4.0 * r * (4.0 * z * z + 2.0 * z - 3.0) - 9.0 * (z - 1.0) * z);
    return Eigen::Vector2d(fr, fz);
  };
  return mc;
}

ManufacturedCase experiment1_generic(double mu, double lambda) {
  // u_r = 4 P(r) Q(z), u_z = -4 P Q with P = r^3 - r^4, Q = z - z^2.
  ManufacturedCase mc;
  mc.id = "exp1";
  mc.displacement = [](double r, double z) {
    const double v = 4.0 * (r * r * r - r * r * r * r) * (z - z * z);
    return Eigen::Vector2d(v, -v);
  };
  mc.stress = [mu, lambda](double r, double z) {
    const double P = r * r * r - r * r * r * r, Pp = 3 * r * r - 4 * r * r * r;
    const double P1 = r * r - r * r * r;
    const double Q = z - z * z, Qp = 1.0 - 2.0 * z;
    const double e_rr = 4 * Pp * Q, e_zz = -4 * P * Qp, e_tt = 4 * P1 * Q;
    const double e_rz = 2 * (P * Qp - Pp * Q);
    const double tr3 = e_rr + e_zz + e_tt;
    Eigen::Matrix2d s;
    s << 2 * mu * e_rr + lambda * tr3, 2 * mu * e_rz, 2 * mu * e_rz,
        2 * mu * e_zz + lambda * tr3;
    return s;
  };
  mc.hoop = [mu, lambda](double r, double z) {
    const double P = r * r * r - r * r * r * r, Pp = 3 * r * r - 4 * r * r * r;
    const double P1 = r * r - r * r * r;
    const double Q = z - z * z, Qp = 1.0 - 2.0 * z;
    const double tr3 = 4 * Pp * Q - 4 * P * Qp + 4 * P1 * Q;
    return 2 * mu * 4 * P1 * Q + lambda * tr3;
  };
  mc.rotation = [](double r, double z) {
    const double P = r * r * r - r * r * r * r, Pp = 3 * r * r - 4 * r * r * r;
    return 2.0 * (P * (1.0 - 2.0 * z) + Pp * (z - z * z));
  };
  mc.body_force = [mu, lambda](double r, double z) {
    const double P = r * r * r - r * r * r * r, Pp = 3 * r * r - 4 * r * r * r;
    const double Ppp = 6 * r - 12 * r * r;
    const double P1 = r * r - r * r * r, P1p = 2 * r - 3 * r * r;
    const double Pp_over_r = 3 * r - 4 * r * r;
    const double Q = z - z * z, Qp = 1.0 - 2.0 * z;
    const double fr = 8 * mu * Ppp * Q + 4 * lambda * (Ppp * Q - Pp * Qp + P1p * Q) -
                      8 * mu * P - 4 * mu * Pp * Qp + 8 * mu * P1p * Q;
    const double fz = 4 * mu * (Pp * Qp - Ppp * Q) + 4 * mu * (P1 * Qp - Pp_over_r * Q) +
                      16 * mu * P + 4 * lambda * (Pp * Qp + 2 * P + P1 * Qp);
    return Eigen::Vector2d(fr, fz);
  };
  return mc;
}

ManufacturedCase experiment2(double mu, double lambda) {
  // u_r = A(r) Z(z), u_z = -A Z with A = r^3 sin(pi r), Z = cos((z - 1/2) pi).
  ManufacturedCase mc;
  mc.id = "exp2";
  const double pi = M_PI;
  auto AZ = [pi](double r, double z, double out[8]) {
    const double s = std::sin(pi * r), c = std::cos(pi * r);
    out[0] = r * r * r * s;                                         // A
    out[1] = 3 * r * r * s + pi * r * r * r * c;                    // A'
    out[2] = 6 * r * s + 6 * pi * r * r * c - pi * pi * r * r * r * s;  // A''
    out[3] = r * r * s;                                             // B = A/r
    out[4] = 2 * r * s + pi * r * r * c;                            // B'
    out[5] = std::cos((z - 0.5) * pi);                              // Z
    out[6] = -pi * std::sin((z - 0.5) * pi);                        // Z'
    out[7] = 3 * r * s + pi * r * r * c;                            // A'/r
  };
  mc.displacement = [AZ](double r, double z) {
    double v[8];
    AZ(r, z, v);
    return Eigen::Vector2d(v[0] * v[5], -v[0] * v[5]);
  };
  mc.stress = [AZ, mu, lambda](double r, double z) {
    double v[8];
    AZ(r, z, v);
    const double e_rr = v[1] * v[5], e_zz = -v[0] * v[6], e_tt = v[3] * v[5];
    const double e_rz = 0.5 * (v[0] * v[6] - v[1] * v[5]);
    const double tr3 = e_rr + e_zz + e_tt;
    Eigen::Matrix2d s;
    s << 2 * mu * e_rr + lambda * tr3, 2 * mu * e_rz, 2 * mu * e_rz,
        2 * mu * e_zz + lambda * tr3;
    return s;
  };
  mc.hoop = [AZ, mu, lambda](double r, double z) {
    double v[8];
    AZ(r, z, v);
    const double tr3 = (v[1] + v[3]) * v[5] - v[0] * v[6];
    return 2 * mu * v[3] * v[5] + lambda * tr3;
  };
  mc.rotation = [AZ](double r, double z) {
    double v[8];
    AZ(r, z, v);
    return 0.5 * (v[0] * v[6] + v[1] * v[5]);
  };
  mc.body_force = [AZ, mu, lambda, pi](double r, double z) {
    double v[8];
    AZ(r, z, v);
    const double A = v[0], Ap = v[1], App = v[2], B = v[3], Bp = v[4];
    const double Z = v[5], Zp = v[6], Ap_over_r = v[7];
    const double fr = 2 * mu * App * Z + lambda * (App + Bp) * Z - lambda * Ap * Zp -
                      mu * pi * pi * A * Z - mu * Ap * Zp + 2 * mu * Bp * Z;
    const double fz = mu * (Ap * Zp - App * Z) + mu * (B * Zp - Ap_over_r * Z) +
                      2 * mu * pi * pi * A * Z + lambda * (Ap + B) * Zp +
                      lambda * pi * pi * A * Z;
    return Eigen::Vector2d(fr, fz);
  };
  return mc;
}

}  // namespace

ManufacturedCase manufactured_case(int experiment, const MaterialParams& params) {
  params.validate();
  if (experiment == 1) {
    if (params.mu == 0.5 && params.lambda == 1.0) return experiment1_default();
    return experiment1_generic(params.mu, params.lambda);
  }
  if (experiment == 2) return experiment2(params.mu, params.lambda);
  throw std::invalid_argument("manufactured_case: experiment must be 1 or 2");
}

}  // namespace axielast
