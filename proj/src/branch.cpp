#include "mems/branch.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mems {

namespace {

void require_finite_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw std::domain_error("alpha must be finite and >= 0, got " + std::to_string(alpha));
  }
}

}  // namespace

double log_term_excess(double s_minus_one) {
  if (!std::isfinite(s_minus_one) || s_minus_one < 0.0) {
    throw std::domain_error("log_term requires finite s >= 1");
  }
  // Below 1e-8 the two-term series keeps full relative accuracy where the
  // direct form would round sqrt(s) - 1 away.
  if (s_minus_one < 1e-8) {
    return std::sqrt(s_minus_one) * (1.0 - s_minus_one / 6.0);
  }
  const double s = 1.0 + s_minus_one;
  // ln(sqrt(s) + sqrt(s-1)) = log1p((s-1)/(sqrt(s)+1) + sqrt(s-1))
  return std::log1p(s_minus_one / (std::sqrt(s) + 1.0) + std::sqrt(s_minus_one));
}

double log_term(double s) {
  if (!std::isfinite(s) || s < 1.0) {
    throw std::domain_error("log_term requires finite s >= 1");
  }
  return log_term_excess(s - 1.0);
}

ShootingCoord::ShootingCoord(double s) : s_(s) {
  if (!std::isfinite(s) || s <= 1.0) {
    throw std::domain_error("branch coordinate must be finite and > 1, got " +
                            std::to_string(s));
  }
}

namespace detail {

BranchPoint branch_point_from_log_term(double s, double alpha, double log_term_value) {
  const double sm1 = s - 1.0;
  const double root = std::sqrt(s * sm1);
  const double d = 2.0 * s - 1.0 + std::sqrt(sm1 / s) * log_term_value;
  const double d3 = d * d * d;
  const double base = root + log_term_value;

  BranchPoint pt;
  pt.s = s;
  pt.alpha = alpha;
  pt.a = 1.0 / d;
  pt.b = s / d;
  pt.sigma = 0.5 * base * base / d3;
  const double num = base + 4.0 * alpha * d * log_term_value;
  pt.lambda = 0.5 * num * num / d3;
  return pt;
}

}  // namespace detail

BranchPoint branch_point(double s, double alpha) {
  if (!std::isfinite(s) || s < kSMin || s > kSMax) {
    throw std::domain_error("branch coordinate out of [1 + 1e-14, 1e12]: " +
                            std::to_string(s));
  }
  require_finite_alpha(alpha);
  return detail::branch_point_from_log_term(s, alpha, log_term_excess(s - 1.0));
}

double nonlocal_integral(double a, double b) {
  if (!(0.0 < a && a < b && b < 1.0)) {
    throw std::domain_error("nonlocal_integral requires 0 < a < b < 1");
  }
  const double ell = std::log((std::sqrt(b) + std::sqrt(b - a)) / std::sqrt(a));
  return 4.0 * ell / (std::sqrt(b * (b - a)) + a * ell);
}

double phi(double a, double w) {
  if (!(0.0 < a && a < 1.0) || !std::isfinite(w)) {
    throw std::domain_error("phi requires a in (0, 1) and finite w");
  }
  if (w < a) {
    throw std::domain_error("phi requires w >= a");
  }
  const double d = w - a;
  return std::sqrt(a) *
         (std::sqrt(w * d) + a * std::log((std::sqrt(w) + std::sqrt(d)) / std::sqrt(a)));
}

double invert_phi(double a, double b, double sigma, double x) {
  if (!(0.0 < a && a < b && b < 1.0) || !(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::domain_error("invert_phi requires 0 < a < b < 1 and sigma > 0");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("invert_phi requires x in [0, 1]");
  }
  const double scale = std::sqrt(2.0 * sigma);
  const double phi_b = phi(a, b);
  if (std::abs(phi_b - scale) > 1e-9 * scale) {
    throw std::invalid_argument("(a, b, sigma) inconsistent: phi(a, b) != sqrt(2 sigma)");
  }

  const double target = scale * x;
  const double tol = 1e-13 * scale;
  if (target <= tol) return a;                     // covers x = 0; phi(a, a) = 0
  if (std::abs(phi_b - target) <= tol) return b;   // covers x = 1

  double lo = a;
  double hi = b;
  double best = 0.5 * (lo + hi);
  double best_res = std::abs(phi(a, best) - target);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      // Bracket collapsed to adjacent doubles: the root is localized to one
      // ulp, which is the best any method can do. Where phi is steep (x
      // near 0) the residual floor sits above tol; accept the closest point.
      return best;
    }
    const double res = phi(a, mid) - target;
    const double abs_res = std::abs(res);
    if (abs_res < best_res) {
      best = mid;
      best_res = abs_res;
    }
    if (abs_res <= tol) return mid;
    if (res < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw std::runtime_error("invert_phi: bisection exceeded 200 iterations");
}

Eigen::ArrayXd symmetric_grid(int n) {
  if (n < 3 || n % 2 == 0) {
    throw std::domain_error("grid size must be odd and >= 3");
  }
  Eigen::ArrayXd xs(n);
  const int mid = (n - 1) / 2;
  const double h = 2.0 / (n - 1);
  xs(mid) = 0.0;
  for (int i = 0; i < mid; ++i) {
    const double x = -1.0 + i * h;
    xs(i) = x;
    xs(n - 1 - i) = -x;
  }
  return xs;
}

SteadyProfile reconstruct_profile(const BranchPoint& pt, int n) {
  if (n < 3 || n % 2 == 0) {
    throw std::domain_error("profile grid size must be odd and >= 3");
  }
  SteadyProfile profile;
  profile.alpha = pt.alpha;
  profile.lambda = pt.lambda;
  profile.a = pt.a;
  profile.b = pt.b;
  profile.sigma = pt.sigma;
  profile.xs = symmetric_grid(n);
  profile.ws.resize(n);

  const int mid = (n - 1) / 2;
  for (int i = mid; i < n; ++i) {
    profile.ws(i) = invert_phi(pt.a, pt.b, pt.sigma, profile.xs(i));
  }
  for (int i = 0; i < mid; ++i) {
    profile.ws(i) = profile.ws(n - 1 - i);  // exact mirror copy
  }
  profile.us = 1.0 - profile.ws;
  return profile;
}

}  // namespace mems
