#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

#include "axielast/params.hpp"

namespace axielast {

// Exact-solution evaluators for a manufactured verification case on the unit
// square meridian domain. All fields are consistent with the isotropic
// constitutive law for the given Lame constants, the displacement vanishes on
// the outer boundary, the true stress is symmetric, and body_force is the
// axisymmetric divergence of (stress, hoop).
struct ManufacturedCase {
  std::string id;
  std::function<Eigen::Vector2d(double, double)> displacement;  // u(r,z)
  std::function<Eigen::Matrix2d(double, double)> stress;        // meridian rows
  std::function<double(double, double)> hoop;                   // sigma_theta_theta
  std::function<double(double, double)> rotation;               // p = (du_r/dz - du_z/dr)/2
  std::function<Eigen::Vector2d(double, double)> body_force;    // f(r,z)
};

// experiment 1: polynomial displacement 4 r^3 (1-r) z (1-z) (1, -1)^t;
// experiment 2: non-polynomial r^3 sin(pi r) cos((z-1/2) pi) (1, -1)^t.
// With the default constants, experiment 1 returns the tabulated closed-form
// stress and force polynomials verbatim; otherwise both experiments derive
// stress and force from the displacement through the constitutive law.
ManufacturedCase manufactured_case(int experiment, const MaterialParams& params = {});

}  // namespace axielast
