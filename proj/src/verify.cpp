#include "mems/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "mems/branch.hpp"
#include "mems/dynamics.hpp"
#include "mems/oracle.hpp"
#include "mems/pull_in.hpp"

namespace mems::verify {

namespace {

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(n);
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int i = 0; i < n; ++i) {
    out.push_back(std::exp(llo + (lhi - llo) * i / (n - 1)));
  }
  return out;
}

// n log-spaced points strictly inside the open interval (lo, hi): the
// interior nodes of an (n + 2)-point inclusive grid.
std::vector<double> interior_log_spaced(double lo, double hi, int n) {
  std::vector<double> grid = log_spaced(lo, hi, n + 2);
  return {grid.begin() + 1, grid.end() - 1};
}

std::vector<double> excess_log_spaced(double excess_lo, double hi, int n) {
  // log-spaced in s - 1, so the cluster near 1 is well resolved
  std::vector<double> out = log_spaced(excess_lo, hi - 1.0, n);
  for (double& v : out) v += 1.0;
  return out;
}

struct Harness {
  std::vector<CheckResult> results;

  void run(const std::string& name, const std::function<std::string()>& body) {
    CheckResult r;
    r.name = name;
    try {
      r.detail = body();  // empty string = pass, otherwise failure detail
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(r));
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// g(s) from the fold-criterion monotonicity argument; positive on (1, inf)
// with its minimum at s = 3/2.
double proof_sample_g(double s) {
  return log_term(s) -
         s * (4.0 * s - 5.0) / (8.0 * (s - 1.0) * std::sqrt(s * (s - 1.0)));
}

std::string check_a_decreasing() {
  const auto ss = excess_log_spaced(1e-9, 1e6, 400);
  double prev = branch_point(ss.front(), 0.0).a;
  for (size_t i = 1; i < ss.size(); ++i) {
    const double a = branch_point(ss[i], 0.0).a;
    if (!(a < prev)) {
      return "a(s) not strictly decreasing near s = " + fmt(ss[i]);
    }
    prev = a;
  }
  const double a_low = branch_point(1.0 + 1e-9, 0.0).a;
  const double a_high = branch_point(1e6, 0.0).a;
  if (std::abs(a_low - 1.0) > 1e-4) return "a(1+) != 1: " + fmt(a_low);
  if (a_high > 1e-5) return "a(1e6) not near 0: " + fmt(a_high);
  return {};
}

std::string check_lambda_limits() {
  for (double alpha : {0.0, 0.5, 1.0, 5.0}) {
    const auto ss = excess_log_spaced(1e-9, 1e6, 200);
    double peak = 0.0;
    for (double s : ss) {
      const double l = branch_point(s, alpha).lambda;
      if (!(l > 0.0)) return "lambda <= 0 at s = " + fmt(s);
      peak = std::max(peak, l);
    }
    const double l_low = branch_point(1.0 + 1e-9, alpha).lambda;
    const double l_high = branch_point(1e6, alpha).lambda;
    if (l_low > 1e-6 * peak || l_high > 0.01 * peak) {
      return "lambda does not vanish at the sampled extremes (alpha = " + fmt(alpha) + ")";
    }
  }
  return {};
}

std::string check_b_non_monotone() {
  const double b1 = branch_point(1.2, 0.0).b;
  const double b2 = branch_point(10.0, 0.0).b;
  const double b3 = branch_point(100.0, 0.0).b;
  if (b1 > b2 && b2 < b3) return {};
  return "expected b(1.2) > b(10) < b(100), got " + fmt(b1) + ", " + fmt(b2) + ", " + fmt(b3);
}

std::string check_branch_identities() {
  for (double alpha : {0.0, 0.5, 1.0, 5.0}) {
    for (double s : excess_log_spaced(1e-6, 1e4, 60)) {
      const BranchPoint pt = branch_point(s, alpha);
      const double lhs = (1.0 - pt.b) * (1.0 - pt.b);
      const double rhs = 2.0 * pt.sigma * (1.0 / pt.a - 1.0 / pt.b);
      if (std::abs(lhs - rhs) > 1e-10 * std::abs(lhs)) {
        return "compatibility identity failed at s = " + fmt(s);
      }
      const double scale = std::sqrt(2.0 * pt.sigma);
      if (std::abs(phi(pt.a, pt.b) - scale) > 1e-10 * scale) {
        return "phi(a, b) != sqrt(2 sigma) at s = " + fmt(s);
      }
      const double via_integral =
          pt.sigma * std::pow(1.0 + alpha * nonlocal_integral(pt.a, pt.b), 2);
      if (std::abs(via_integral - pt.lambda) > 1e-10 * pt.lambda) {
        return "lambda != sigma (1 + alpha I)^2 at s = " + fmt(s);
      }
    }
  }
  return {};
}

std::string check_phi_roundtrip() {
  for (double s : {1.01, 1.2, 2.0, 10.0, 100.0}) {
    const BranchPoint pt = branch_point(s, 0.0);
    for (int i = 1; i < 20; ++i) {
      const double x = i / 20.0;
      const double w = invert_phi(pt.a, pt.b, pt.sigma, x);
      const double x_back = phi(pt.a, w) / std::sqrt(2.0 * pt.sigma);
      if (std::abs(x_back - x) > 1e-12 * std::max(1.0, x)) {
        return "phi round trip drift " + fmt(std::abs(x_back - x)) + " at s = " + fmt(s);
      }
    }
  }
  return {};
}

std::string check_fold_criteria_increasing() {
  const auto ss = excess_log_spaced(1e-6, 1e6, 10000);
  double prev_base = fold_criterion_base(ss.front());
  double prev_coupling = fold_criterion_coupling(ss.front());
  for (size_t i = 1; i < ss.size(); ++i) {
    const double base = fold_criterion_base(ss[i]);
    const double coupling = fold_criterion_coupling(ss[i]);
    if (!(base > prev_base)) return "base fold term not increasing at s = " + fmt(ss[i]);
    if (!(coupling > prev_coupling)) {
      return "coupling fold term not increasing at s = " + fmt(ss[i]);
    }
    prev_base = base;
    prev_coupling = coupling;
  }
  return {};
}

std::string check_fold_sign_change() {
  for (double alpha : {0.0, 0.1, 1.0, 10.0}) {
    if (!(fold_criterion(1.0 + 1e-6, alpha) < 0.0)) {
      return "criterion not negative near 1 (alpha = " + fmt(alpha) + ")";
    }
    if (!(fold_criterion(1e6, alpha) > 0.0)) {
      return "criterion not positive at 1e6 (alpha = " + fmt(alpha) + ")";
    }
  }
  return {};
}

std::string check_pull_in_reference() {
  const double l0 = find_pull_in(0.0).lambda_star;
  const double l1 = find_pull_in(1.0).lambda_star;
  if (std::abs(l0 - 0.10871) > 1e-4) return "lambda*(0) = " + fmt(l0);
  if (std::abs(l1 - 2.38709) > 1e-4) return "lambda*(1) = " + fmt(l1);
  return {};
}

std::string check_pull_in_monotone() {
  double prev = -1.0;
  for (double alpha : {0.0, 0.25, 0.5, 1.0, 2.0}) {
    const double l = find_pull_in(alpha).lambda_star;
    if (!(l > prev)) return "lambda* not increasing at alpha = " + fmt(alpha);
    prev = l;
  }
  return {};
}

std::string check_pull_in_stationarity() {
  for (double alpha : {0.0, 1.0}) {
    const PullInSolution sol = find_pull_in(alpha);
    const double hstep = 1e-6 * sol.s_star;
    const double dl = (branch_point(sol.s_star + hstep, alpha).lambda -
                       branch_point(sol.s_star - hstep, alpha).lambda) /
                      (2.0 * hstep);
    if (std::abs(dl) > 1e-6 * sol.lambda_star) {
      return "lambda not stationary at s* (alpha = " + fmt(alpha) +
             "): dlambda/ds = " + fmt(dl);
    }
  }
  return {};
}

std::string check_trichotomy() {
  for (double alpha : {0.0, 1.0}) {
    const double lstar = find_pull_in(alpha).lambda_star;
    const size_t counts[3] = {
        solve_at_lambda(0.5 * lstar, alpha).roots.size(),
        solve_at_lambda(lstar, alpha).roots.size(),
        solve_at_lambda(1.5 * lstar, alpha).roots.size(),
    };
    if (counts[0] != 2 || counts[1] != 1 || counts[2] != 0) {
      return "root counts (" + fmt(counts[0]) + ", " + fmt(counts[1]) + ", " +
             fmt(counts[2]) + ") at alpha = " + fmt(alpha);
    }
  }
  return {};
}

std::string check_fold_bracket_ordering() {
  const PullInSolution sol = find_pull_in(0.0);
  double prev_width = 1e300;
  for (double ratio : {0.9, 0.99, 0.999}) {
    const SolveResult r = solve_at_lambda(ratio * sol.lambda_star, 0.0);
    if (r.roots.size() != 2) return "expected two roots at ratio " + fmt(ratio);
    const double s1 = r.roots[0].value();
    const double s2 = r.roots[1].value();
    if (!(s1 < sol.s_star && sol.s_star < s2)) {
      return "roots do not straddle s* at ratio " + fmt(ratio);
    }
    if (!(s2 - s1 < prev_width)) return "roots do not tighten toward the fold";
    prev_width = s2 - s1;
  }
  return {};
}

std::string check_shoot_equivalence(double log_term_bias) {
  double worst_boundary = 0.0;
  double worst_robin = 0.0;
  for (double alpha : {0.0, 1.0}) {
    for (double s : interior_log_spaced(1.01, 1000.0, 50)) {
      const BranchPoint pt =
          detail::branch_point_from_log_term(s, alpha, log_term(s) + log_term_bias);
      const oracle::ShootTrajectory traj = oracle::shoot(pt.a, pt.sigma, 4096);
      worst_boundary =
          std::max(worst_boundary, std::abs(traj.ws(traj.ws.size() - 1) - pt.b));
      worst_robin = std::max(worst_robin, oracle::robin_residual(traj));
    }
  }
  if (worst_boundary >= 1e-7 || worst_robin >= 1e-7) {
    return "worst boundary error " + fmt(worst_boundary) + ", worst Robin residual " +
           fmt(worst_robin);
  }
  return {};
}

std::string check_symmetric_extension() {
  for (double s : {1.5, 2.0, 10.0}) {
    const BranchPoint pt = branch_point(s, 0.0);
    const int n = 201;        // profile nodes; half side has 100 intervals
    const int steps = 1600;   // multiple of 100, so every 16th node aligns
    const SteadyProfile profile = reconstruct_profile(pt, n);
    const oracle::ShootTrajectory traj = oracle::shoot(pt.a, pt.sigma, steps);
    const int mid = (n - 1) / 2;
    const int per_node = steps / mid;
    for (int i = 0; i <= mid; ++i) {
      const double w_shoot = traj.ws(static_cast<Eigen::Index>(i) * per_node);
      const double err_right = std::abs(w_shoot - profile.ws(mid + i));
      const double err_left = std::abs(w_shoot - profile.ws(mid - i));  // reflection
      if (err_right > 1e-7 || err_left > 1e-7) {
        return "reflected trajectory mismatch " + fmt(std::max(err_right, err_left)) +
               " at s = " + fmt(s);
      }
    }
  }
  return {};
}

std::string check_profile_validity() {
  const double sample[10] = {1.2, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 5.0, 6.0, 7.0};
  for (int k = 0; k < 10; ++k) {
    const double alpha = (k % 2 == 0) ? 0.0 : 1.0;
    const BranchPoint pt = branch_point(sample[k], alpha);
    const SteadyProfile coarse = reconstruct_profile(pt, 501);
    const SteadyProfile fine = reconstruct_profile(pt, 1001);
    const double res_fine = oracle::ode_residual(fine);
    const double ratio = oracle::ode_residual(coarse) / res_fine;
    if (res_fine >= 1e-4) return "ODE residual " + fmt(res_fine) + " at s = " + fmt(sample[k]);
    if (ratio < 3.5 || ratio > 4.5) {
      return "halving factor " + fmt(ratio) + " at s = " + fmt(sample[k]);
    }
    const int n = static_cast<int>(fine.ws.size());
    for (int i = 0; i < n / 2; ++i) {
      if (std::abs(fine.ws(i) - fine.ws(n - 1 - i)) > 1e-12) {
        return "asymmetry at s = " + fmt(sample[k]);
      }
    }
    for (int i = 1; i < n - 1; ++i) {
      if (!(fine.ws(i - 1) + fine.ws(i + 1) - 2.0 * fine.ws(i) > 0.0)) {
        return "convexity violated at s = " + fmt(sample[k]);
      }
    }
    const double h = fine.xs(1) - fine.xs(0);
    const double wp_end =
        (3.0 * fine.ws(n - 1) - 4.0 * fine.ws(n - 2) + fine.ws(n - 3)) / (2.0 * h);
    if (std::abs(wp_end - (1.0 - pt.b)) > 1e-5) {
      return "Robin defect " + fmt(std::abs(wp_end - (1.0 - pt.b))) + " at s = " +
             fmt(sample[k]);
    }
  }
  return {};
}

std::string check_nonlocal_consistency() {
  const double sample[10] = {1.2, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 5.0, 6.0, 7.0};
  for (double s : sample) {
    const BranchPoint pt = branch_point(s, 1.0);
    const SteadyProfile profile = reconstruct_profile(pt, 2001);
    const double closed = nonlocal_integral(pt.a, pt.b);
    const double quad = oracle::quad_nonlocal(profile);
    if (std::abs(quad - closed) / closed >= 1e-6) {
      return "quadrature mismatch " + fmt(std::abs(quad - closed) / closed) +
             " at s = " + fmt(s);
    }
    const double rt = oracle::lambda_roundtrip(pt, 2001);
    if (rt >= 1e-5) return "lambda round trip " + fmt(rt) + " at s = " + fmt(s);
  }
  return {};
}

std::string check_proof_sample() {
  if (!(proof_sample_g(1.5) > 0.0)) {
    return "g(3/2) = " + fmt(proof_sample_g(1.5)) + " not positive";
  }
  return {};
}

std::string check_diagram_shape() {
  const DiagramTable table = diagram_sweep(0.0, 0.001, 0.999, 1000);
  double peak = 0.0;
  size_t peak_index = 0;
  for (size_t i = 1; i < table.rows.size(); ++i) {
    if (!(table.rows[i].t > table.rows[i - 1].t)) return "t not strictly increasing";
    if (!(table.rows[i].a > table.rows[i - 1].a)) return "a not increasing in t";
    if (table.rows[i].lambda > peak) {
      peak = table.rows[i].lambda;
      peak_index = i;
    }
  }
  if (std::abs(peak - 0.10871) > 1e-3) return "diagram lambda peak " + fmt(peak);
  // single-peaked: increasing up to the max, decreasing after
  for (size_t i = 1; i <= peak_index; ++i) {
    if (!(table.rows[i].lambda > table.rows[i - 1].lambda)) return "lambda not single-peaked";
  }
  for (size_t i = peak_index + 1; i < table.rows.size(); ++i) {
    if (!(table.rows[i].lambda < table.rows[i - 1].lambda)) return "lambda not single-peaked";
  }
  return {};
}

std::string check_dynamics_smoke() {
  using namespace dynamics;
  {
    SimParams params;
    params.nx = 101;
    params.t_end = 50.0;
    const SimOutcome out = simulate(0.2, 0.0, params);
    if (out.status != SimStatus::quenched) return "lambda = 0.2 did not quench";
    if (out.final_state.us.maxCoeff() < 0.99) {
      return "quench ended below threshold: " + fmt(out.final_state.us.maxCoeff());
    }
  }
  {
    SimParams params;
    params.nx = 101;
    params.t_end = 100.0;
    const SimOutcome out = simulate(0.05, 0.0, params);
    if (out.status != SimStatus::converged) return "lambda = 0.05 did not converge";
    if (!out.steady_gap || *out.steady_gap >= 1e-5) {
      return "steady gap " + fmt(out.steady_gap.value_or(-1.0));
    }
    const Eigen::ArrayXd& u = out.final_state.us;
    const Eigen::Index n = u.size();
    for (Eigen::Index i = 0; i < n / 2; ++i) {
      if (u(i) != u(n - 1 - i)) return "converged state lost symmetry";
    }
  }
  return {};
}

}  // namespace

std::vector<CheckResult> run_all(const Options& opts) {
  Harness h;
  h.run("branch_a_decreasing", check_a_decreasing);
  h.run("branch_lambda_limits", check_lambda_limits);
  h.run("branch_b_non_monotone", check_b_non_monotone);
  h.run("branch_identities", check_branch_identities);
  h.run("branch_phi_roundtrip", check_phi_roundtrip);
  h.run("fold_criteria_increasing", check_fold_criteria_increasing);
  h.run("fold_sign_change", check_fold_sign_change);
  h.run("fold_proof_sample", check_proof_sample);
  h.run("pull_in_reference_values", check_pull_in_reference);
  h.run("pull_in_monotone_in_alpha", check_pull_in_monotone);
  h.run("pull_in_stationarity", check_pull_in_stationarity);
  h.run("solve_trichotomy", check_trichotomy);
  h.run("fold_bracket_ordering", check_fold_bracket_ordering);
  h.run("shoot_equivalence",
        [&] { return check_shoot_equivalence(opts.log_term_bias); });
  h.run("shoot_symmetric_extension", check_symmetric_extension);
  h.run("profile_validity", check_profile_validity);
  h.run("nonlocal_consistency", check_nonlocal_consistency);
  h.run("diagram_shape", check_diagram_shape);
  if (opts.include_dynamics) {
    h.run("dynamics_smoke", check_dynamics_smoke);
  }
  return std::move(h.results);
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace mems::verify
