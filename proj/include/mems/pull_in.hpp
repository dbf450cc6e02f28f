#pragma once

#include <utility>
#include <vector>

#include "mems/branch.hpp"

namespace mems {

// lambda'(s) = 0 exactly where fold_criterion(s, alpha) = 0. Both parts
// are strictly increasing in s, diverge to -inf at s = 1+ and grow without
// bound, so the fold coordinate is the unique sign change.
double fold_criterion_base(double s);      // alpha-independent part
double fold_criterion_coupling(double s);  // coefficient of alpha
double fold_criterion(double s, double alpha);

/// The located fold: pull-in coordinate s*, voltage lambda*, and the
/// bisection diagnostics (final bracket straddles the sign change).
struct PullInSolution {
  double alpha = 0.0;
  double s_star = 0.0;
  double lambda_star = 0.0;
  double p_residual = 0.0;
  int iterations = 0;
  std::pair<double, double> bracket{0.0, 0.0};
};

/// Locates the unique fold by bracketing bisection on fold_criterion.
/// tol is relative width of the final bracket.
PullInSolution find_pull_in(double alpha, double tol = 1e-12);

enum class Classification { no_solution, fold, two_solutions };
const char* to_string(Classification c);

/// Solutions of lambda(s) = lambda at fixed alpha: none above the fold,
/// exactly the fold coordinate within the fold band (1e-9 relative), and
/// one root on each side below it.
struct SolveResult {
  double lambda = 0.0;
  double alpha = 0.0;
  std::vector<ShootingCoord> roots;  // ascending
  Classification classification = Classification::no_solution;
};

SolveResult solve_at_lambda(double lambda, double alpha, double tol = 1e-12);

struct DiagramRow {
  double t = 0.0;  // t = 1/s, the plotting variable
  double s = 0.0;
  double a = 0.0;
  double b = 0.0;
  double sigma = 0.0;
  double lambda = 0.0;
};

/// Ordered sweep of branch points over a uniform t grid, t = 1/s.
struct DiagramTable {
  double alpha = 0.0;
  std::vector<DiagramRow> rows;
};

DiagramTable diagram_sweep(double alpha, double t_min, double t_max, int n);

}  // namespace mems
