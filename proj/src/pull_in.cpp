#include "mems/pull_in.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mems {

namespace {

constexpr double kFoldBand = 1e-9;  // relative band classified as the fold

void require_above_one(double s) {
  if (!std::isfinite(s) || s <= 1.0) {
    throw std::domain_error("fold criterion requires finite s > 1");
  }
}

}  // namespace

double fold_criterion_base(double s) {
  require_above_one(s);
  const double A = log_term(s);
  const double root = std::sqrt(s * (s - 1.0));
  return 3.0 / (2.0 * s * root) * A * A + (4.0 + 3.0 / s) * A +
         (4.0 * s * s - 5.0 * s - 3.0) / (2.0 * root);
}

double fold_criterion_coupling(double s) {
  require_above_one(s);
  const double A = log_term(s);
  const double root = std::sqrt(s * (s - 1.0));
  const double q = 2.0 * s - 1.0;
  return 2.0 / (s * s) * A * A * A + 2.0 * (4.0 * s - 3.0) / root * A * A +
         2.0 * q * (4.0 * s - 3.0) / s * A - 4.0 * q * q / root;
}

double fold_criterion(double s, double alpha) {
  return fold_criterion_base(s) + alpha * fold_criterion_coupling(s);
}

PullInSolution find_pull_in(double alpha, double tol) {
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw std::domain_error("alpha must be finite and >= 0");
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw std::domain_error("tol must be positive");
  }

  // Bracket the unique sign change. The criterion diverges to -inf at 1+,
  // so the left end is negative immediately; shrink by decades toward the
  // clamp if it ever is not.
  double s_lo = 1.0 + 1e-6;
  while (fold_criterion(s_lo, alpha) >= 0.0) {
    const double excess = (s_lo - 1.0) / 10.0;
    if (excess < 1e-14) {
      throw std::runtime_error("find_pull_in: no negative left bracket (internal error)");
    }
    s_lo = 1.0 + excess;
  }
  double s_hi = 2.0;
  while (fold_criterion(s_hi, alpha) <= 0.0) {
    s_hi *= 2.0;
    if (s_hi > 0x1p60) {
      throw std::runtime_error("find_pull_in: no positive right bracket (internal error)");
    }
  }

  int iterations = 0;
  while (s_hi - s_lo > tol * s_hi) {
    const double mid = 0.5 * (s_lo + s_hi);
    if (mid <= s_lo || mid >= s_hi) break;  // interval at ulp resolution
    if (++iterations > 200) {
      throw std::runtime_error("find_pull_in: bisection exceeded 200 iterations");
    }
    if (fold_criterion(mid, alpha) < 0.0) {
      s_lo = mid;
    } else {
      s_hi = mid;
    }
  }

  PullInSolution sol;
  sol.alpha = alpha;
  sol.s_star = 0.5 * (s_lo + s_hi);
  sol.lambda_star = branch_point(sol.s_star, alpha).lambda;
  sol.p_residual = std::abs(fold_criterion(sol.s_star, alpha));
  sol.iterations = iterations;
  sol.bracket = {s_lo, s_hi};
  return sol;
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::no_solution: return "no_solution";
    case Classification::fold: return "fold";
    case Classification::two_solutions: return "two_solutions";
  }
  return "unknown";
}

namespace {

// Bisection for lambda(s) = target on an interval where lambda is strictly
// monotone. Assumes f(lo) and f(hi) have opposite signs.
double bisect_lambda(double lo, double hi, double alpha, double target, double tol) {
  const bool increasing = branch_point(lo, alpha).lambda < target;
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= tol * hi) break;
    const double val = branch_point(mid, alpha).lambda;
    if ((val < target) == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

SolveResult solve_at_lambda(double lambda, double alpha, double tol) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error("solve_at_lambda requires lambda > 0");
  }

  const PullInSolution fold = find_pull_in(alpha, tol);

  SolveResult result;
  result.lambda = lambda;
  result.alpha = alpha;

  if (std::abs(lambda - fold.lambda_star) <= kFoldBand * fold.lambda_star) {
    result.classification = Classification::fold;
    result.roots.emplace_back(fold.s_star);
    return result;
  }
  if (lambda > fold.lambda_star) {
    result.classification = Classification::no_solution;
    return result;
  }

  // lambda vanishes at both ends of the branch and s* is the only critical
  // point, so lambda is strictly monotone on each side of the fold.
  const double s_left_end = kSMin;
  if (branch_point(s_left_end, alpha).lambda >= lambda) {
    throw std::runtime_error("solve_at_lambda: left bracket failure (lambda below clamp range)");
  }
  const double s1 = bisect_lambda(s_left_end, fold.s_star, alpha, lambda, tol);

  double s_right_end = 2.0 * fold.s_star;
  while (branch_point(s_right_end, alpha).lambda > lambda) {
    s_right_end *= 2.0;
    if (s_right_end > kSMax) {
      if (branch_point(kSMax, alpha).lambda > lambda) {
        throw std::runtime_error(
            "solve_at_lambda: right bracket failure (root beyond domain clamp)");
      }
      s_right_end = kSMax;
      break;
    }
  }
  const double s2 = bisect_lambda(fold.s_star, s_right_end, alpha, lambda, tol);

  result.classification = Classification::two_solutions;
  result.roots.emplace_back(s1);
  result.roots.emplace_back(s2);
  return result;
}

DiagramTable diagram_sweep(double alpha, double t_min, double t_max, int n) {
  if (!(0.0 < t_min && t_min < t_max && t_max < 1.0)) {
    throw std::domain_error("diagram_sweep requires 0 < t_min < t_max < 1");
  }
  if (n < 2) {
    throw std::domain_error("diagram_sweep requires n >= 2");
  }
  if (1.0 / t_min > kSMax) {
    throw std::domain_error("diagram_sweep: t_min maps beyond the branch domain clamp");
  }

  DiagramTable table;
  table.alpha = alpha;
  table.rows.reserve(static_cast<size_t>(n));
  const double dt = (t_max - t_min) / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double t = (i == n - 1) ? t_max : t_min + i * dt;
    const BranchPoint pt = branch_point(1.0 / t, alpha);
    table.rows.push_back({t, pt.s, pt.a, pt.b, pt.sigma, pt.lambda});
  }
  return table;
}

}  // namespace mems
