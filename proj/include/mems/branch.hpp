#pragma once

#include <Eigen/Core>

namespace mems {

// Domain clamps for the branch coordinate. Outside, reject rather than
// extrapolate.
inline constexpr double kSMin = 1.0 + 1e-14;
inline constexpr double kSMax = 1e12;

/// ln(sqrt(s) + sqrt(s - 1)), the logarithmic factor shared by every
/// closed-form branch expression. Cancellation-safe down to s = 1 (which
/// maps to 0).
double log_term(double s);

/// Same factor with s - 1 carried explicitly by the caller, so small
/// excesses keep full relative accuracy.
double log_term_excess(double s_minus_one);

/// Branch coordinate s = w(1)/w(0). Strictly greater than 1 and finite.
class ShootingCoord {
 public:
  explicit ShootingCoord(double s);
  double value() const { return s_; }

 private:
  double s_;
};

/// One point on the solution branch for a given capacitance ratio alpha.
/// a = w(0), b = w(1), sigma is the rescaled voltage parameter and lambda
/// the applied-voltage parameter; 0 < a < b < 1 and b = s a.
struct BranchPoint {
  double s = 0.0;
  double alpha = 0.0;
  double a = 0.0;
  double b = 0.0;
  double sigma = 0.0;
  double lambda = 0.0;
};

/// Evaluates the closed-form branch parametrization at coordinate s.
/// Throws std::domain_error for s outside [kSMin, kSMax] or alpha < 0.
BranchPoint branch_point(double s, double alpha);

/// Closed form of the nonlocal integral of 1/w over [-1, 1] along the
/// branch; requires 0 < a < b < 1.
double nonlocal_integral(double a, double b);

/// Monotone map phi(a, .) on [a, 1) whose inversion reconstructs the
/// profile: phi(a, w(x)) = sqrt(2 sigma) x on [0, 1]. phi(a, a) = 0.
double phi(double a, double w);

/// Unique w in [a, b] with phi(a, w) = sqrt(2 sigma) x, located by
/// bisection (cap 200 iterations). Requires (a, b, sigma) consistent:
/// phi(a, b) must match sqrt(2 sigma) to 1e-9 relative.
double invert_phi(double a, double b, double sigma, double x);

/// A reconstructed steady state on a symmetric grid spanning [-1, 1].
/// ws holds w = 1 - u, us the deflection.
struct SteadyProfile {
  double alpha = 0.0;
  double lambda = 0.0;
  double a = 0.0;
  double b = 0.0;
  double sigma = 0.0;
  Eigen::ArrayXd xs;
  Eigen::ArrayXd ws;
  Eigen::ArrayXd us;
};

/// Inverts the implicit x-w relation on [0, 1] and mirrors the values to
/// [-1, 0), so symmetry holds by construction. n must be odd and >= 3 so
/// that x = 0 is a grid node.
SteadyProfile reconstruct_profile(const BranchPoint& pt, int n);

/// Uniform grid of n nodes on [-1, 1], exactly symmetric about the middle
/// node (the negative half mirrors the positive half bit for bit).
Eigen::ArrayXd symmetric_grid(int n);

namespace detail {
/// Branch point with the log factor supplied by the caller. Shared by
/// branch_point and the verification fault-injection hook.
BranchPoint branch_point_from_log_term(double s, double alpha, double log_term_value);
}  // namespace detail

}  // namespace mems
