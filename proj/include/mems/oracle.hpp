#pragma once

#include <Eigen/Core>

#include "mems/branch.hpp"

namespace mems::oracle {

// Verification layer: everything here re-derives branch results by direct
// numerical integration and quadrature. shoot deliberately never touches
// phi / invert_phi; only plain (a, sigma) numbers cross the module
// boundary.

/// Raw integration record of w'' = sigma / w^2 from x = 0 with w(0) = a,
/// w'(0) = 0.
struct ShootTrajectory {
  double a = 0.0;
  double sigma = 0.0;
  Eigen::ArrayXd xs;
  Eigen::ArrayXd ws;
  Eigen::ArrayXd wps;
};

/// Classical fixed-step 4th-order integration to x = 1 on n_steps uniform
/// steps (n_steps >= 16). Throws if w leaves (0, 10).
ShootTrajectory shoot(double a, double sigma, int n_steps);

/// |w'(1) - (1 - w(1))|, the boundary-condition defect of a trajectory.
double robin_residual(const ShootTrajectory& traj);

/// Max interior defect of the centered second difference against the
/// nonlocal reaction term, with the quadrature taken on the profile's own
/// grid.
double ode_residual(const SteadyProfile& profile);

/// Trapezoid quadrature of 1/w over the profile grid.
double quad_nonlocal(const SteadyProfile& profile);

/// Reconstructs the profile on n nodes, recomputes lambda from sigma and
/// the quadrature of 1/w, and returns the relative mismatch against the
/// branch lambda.
double lambda_roundtrip(const BranchPoint& pt, int n);

}  // namespace mems::oracle
