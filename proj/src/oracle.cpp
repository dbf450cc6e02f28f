#include "mems/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace mems::oracle {

namespace {

// Trapezoid sum with a fixed left-to-right accumulation order.
double trapezoid(const Eigen::ArrayXd& values, double h) {
  const Eigen::Index n = values.size();
  double acc = 0.5 * (values(0) + values(n - 1));
  for (Eigen::Index i = 1; i < n - 1; ++i) {
    acc += values(i);
  }
  return acc * h;
}

}  // namespace

ShootTrajectory shoot(double a, double sigma, int n_steps) {
  if (!(0.0 < a && a < 1.0)) {
    throw std::domain_error("shoot requires a in (0, 1)");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::domain_error("shoot requires sigma > 0");
  }
  if (n_steps < 16) {
    throw std::domain_error("shoot requires n_steps >= 16");
  }

  ShootTrajectory traj;
  traj.a = a;
  traj.sigma = sigma;
  traj.xs.resize(n_steps + 1);
  traj.ws.resize(n_steps + 1);
  traj.wps.resize(n_steps + 1);

  const double h = 1.0 / n_steps;
  double w = a;
  double wp = 0.0;
  traj.xs(0) = 0.0;
  traj.ws(0) = w;
  traj.wps(0) = wp;

  const auto accel = [sigma](double wv) { return sigma / (wv * wv); };

  for (int i = 0; i < n_steps; ++i) {
    const double k1w = wp;
    const double k1p = accel(w);
    const double k2w = wp + 0.5 * h * k1p;
    const double k2p = accel(w + 0.5 * h * k1w);
    const double k3w = wp + 0.5 * h * k2p;
    const double k3p = accel(w + 0.5 * h * k2w);
    const double k4w = wp + h * k3p;
    const double k4p = accel(w + h * k3w);
    w += h * (k1w + 2.0 * k2w + 2.0 * k3w + k4w) / 6.0;
    wp += h * (k1p + 2.0 * k2p + 2.0 * k3p + k4p) / 6.0;
    if (!(w > 0.0 && w < 10.0)) {
      throw std::runtime_error("shoot: w left (0, 10); step size too coarse for blow-up");
    }
    traj.xs(i + 1) = static_cast<double>(i + 1) / n_steps;
    traj.ws(i + 1) = w;
    traj.wps(i + 1) = wp;
  }
  return traj;
}

double robin_residual(const ShootTrajectory& traj) {
  const Eigen::Index n = traj.ws.size();
  if (n < 2) {
    throw std::domain_error("robin_residual requires a nonempty trajectory");
  }
  return std::abs(traj.wps(n - 1) - (1.0 - traj.ws(n - 1)));
}

double ode_residual(const SteadyProfile& profile) {
  const Eigen::Index n = profile.ws.size();
  if (n < 5) {
    throw std::domain_error("ode_residual requires a profile with n >= 5");
  }
  const double h = profile.xs(1) - profile.xs(0);
  const double q = trapezoid(profile.ws.inverse(), h);
  const double denom = 1.0 + profile.alpha * q;
  const double coeff = profile.lambda / (denom * denom);

  double worst = 0.0;
  for (Eigen::Index i = 1; i < n - 1; ++i) {
    const double d2 = ((profile.ws(i - 1) + profile.ws(i + 1)) - 2.0 * profile.ws(i)) / (h * h);
    const double reaction = coeff / (profile.ws(i) * profile.ws(i));
    worst = std::max(worst, std::abs(d2 - reaction));
  }
  return worst;
}

double quad_nonlocal(const SteadyProfile& profile) {
  const Eigen::Index n = profile.ws.size();
  if (n < 2) {
    throw std::domain_error("quad_nonlocal requires a profile with n >= 2");
  }
  const double h = profile.xs(1) - profile.xs(0);
  return trapezoid(profile.ws.inverse(), h);
}

double lambda_roundtrip(const BranchPoint& pt, int n) {
  const SteadyProfile profile = reconstruct_profile(pt, n);
  const double q = quad_nonlocal(profile);
  const double denom = 1.0 + pt.alpha * q;
  const double lambda_again = pt.sigma * denom * denom;
  return std::abs(lambda_again - pt.lambda) / pt.lambda;
}

}  // namespace mems::oracle
