#include "mems/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "mems/branch.hpp"
#include "mems/pull_in.hpp"

namespace mems::dynamics {

namespace {

void validate_params(double lambda, double alpha) {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw std::domain_error("lambda must be finite and >= 0");
  }
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw std::domain_error("alpha must be finite and >= 0");
  }
}

// Time derivative of u into `out`, using scratch vector `g` for 1/(1-u).
// The Laplacian groups neighbours as (u[i-1] + u[i+1]) - 2 u[i]: addition
// commutes bitwise, so mirror-symmetric data stays symmetric to the last
// ulp no matter how long the run.
void rhs_into(const Eigen::ArrayXd& u, double lambda, double alpha, double h,
              Eigen::ArrayXd& g, Eigen::ArrayXd& out) {
  const Eigen::Index n = u.size();
  Eigen::ArrayXd v = 1.0 - u;
  if (v.minCoeff() <= kTouchdownGuard) {
    throw singularity_error("1 - u reached the touchdown guard");
  }
  g = v.inverse();

  out.segment(1, n - 2) =
      (u.head(n - 2) + u.tail(n - 2)) - 2.0 * u.segment(1, n - 2);
  // Robin ghost values: u' = -u at x = 1 and u' = u at x = -1, so the
  // ghost node is inner_neighbour - 2 h u_boundary on both sides.
  out(0) = 2.0 * (u(1) - (1.0 + h) * u(0));
  out(n - 1) = 2.0 * (u(n - 2) - (1.0 + h) * u(n - 1));
  out /= h * h;

  // Trapezoid of 1/(1-u), strict left-to-right accumulation.
  double acc = 0.5 * (g(0) + g(n - 1));
  for (Eigen::Index i = 1; i < n - 1; ++i) {
    acc += g(i);
  }
  const double q = acc * h;
  const double denom = 1.0 + alpha * q;
  const double coeff = lambda / (denom * denom);
  out += coeff * g.square();
}

// Classical 4th-order stepper with reusable scratch storage.
class Stepper {
 public:
  explicit Stepper(Eigen::Index n) : k1_(n), k2_(n), k3_(n), k4_(n), tmp_(n), g_(n) {}

  // Advances u by dt given the precomputed derivative k1 = du/dt at u.
  // Throws singularity_error if a stage state or the landing state reaches
  // the touchdown guard, leaving u untouched.
  void advance(Eigen::ArrayXd& u, const Eigen::ArrayXd& k1, double dt, double lambda,
               double alpha, double h) {
    const double before = u.abs().maxCoeff();
    tmp_ = u + (0.5 * dt) * k1;
    rhs_into(tmp_, lambda, alpha, h, g_, k2_);
    tmp_ = u + (0.5 * dt) * k2_;
    rhs_into(tmp_, lambda, alpha, h, g_, k3_);
    tmp_ = u + dt * k3_;
    rhs_into(tmp_, lambda, alpha, h, g_, k4_);
    tmp_ = u + (dt / 6.0) * (k1 + 2.0 * k2_ + 2.0 * k3_ + k4_);
    if ((1.0 - tmp_).minCoeff() <= kTouchdownGuard) {
      throw singularity_error("step landed past the touchdown guard");
    }
    // The floor of 1 keeps the guard quiet while u rises from 0; genuine
    // blow-ups overshoot it within a step.
    if (tmp_.abs().maxCoeff() > 10.0 * std::max(1.0, before)) {
      throw std::runtime_error("step: sup-norm grew by more than 10x (unstable)");
    }
    u.swap(tmp_);
  }

  Eigen::ArrayXd& k1() { return k1_; }

 private:
  Eigen::ArrayXd k1_, k2_, k3_, k4_, tmp_, g_;
};

}  // namespace

SimState initial_state(double lambda, double alpha, int nx) {
  validate_params(lambda, alpha);
  if (nx < 3 || nx % 2 == 0) {
    throw std::domain_error("nx must be odd and >= 3");
  }
  SimState state;
  state.time = 0.0;
  state.xs = symmetric_grid(nx);
  state.us = Eigen::ArrayXd::Zero(nx);
  state.lambda = lambda;
  state.alpha = alpha;
  return state;
}

SimState initial_state(double lambda, double alpha, const Eigen::ArrayXd& u0) {
  SimState state = initial_state(lambda, alpha, static_cast<int>(u0.size()));
  if ((u0 < 0.0).any() || (u0 >= 1.0).any()) {
    throw std::domain_error("initial profile must lie in [0, 1)");
  }
  state.us = u0;
  return state;
}

double grid_spacing(const SimState& state) {
  return 2.0 / static_cast<double>(state.xs.size() - 1);
}

Eigen::ArrayXd rhs(const SimState& state) {
  const Eigen::Index n = state.us.size();
  if (n < 3) {
    throw std::domain_error("rhs requires at least 3 nodes");
  }
  Eigen::ArrayXd g(n);
  Eigen::ArrayXd out(n);
  rhs_into(state.us, state.lambda, state.alpha, grid_spacing(state), g, out);
  return out;
}

double nonlocal_quadrature(const SimState& state) {
  const Eigen::Index n = state.us.size();
  const double h = grid_spacing(state);
  double acc = 0.5 * (1.0 / (1.0 - state.us(0)) + 1.0 / (1.0 - state.us(n - 1)));
  for (Eigen::Index i = 1; i < n - 1; ++i) {
    acc += 1.0 / (1.0 - state.us(i));
  }
  return acc * h;
}

SimState step(const SimState& state, double dt) {
  const double h = grid_spacing(state);
  if (!(dt > 0.0) || dt > kDtFactor * h * h * (1.0 + 1e-12)) {
    throw std::domain_error("dt must satisfy 0 < dt <= 0.4 h^2");
  }
  SimState next = state;
  Stepper stepper(state.us.size());
  Eigen::ArrayXd g(state.us.size());
  rhs_into(next.us, next.lambda, next.alpha, h, g, stepper.k1());
  stepper.advance(next.us, stepper.k1(), dt, next.lambda, next.alpha, h);
  next.time = state.time + dt;
  return next;
}

const char* to_string(SimStatus s) {
  switch (s) {
    case SimStatus::converged: return "converged";
    case SimStatus::quenched: return "quenched";
    case SimStatus::timed_out: return "timed_out";
  }
  return "unknown";
}

namespace {

// Sup-norm gap between a converged state and the analytic profile of the
// matching branch solution (first root = small-deflection branch).
std::optional<double> gap_to_analytic_branch(const SimState& state) {
  const SolveResult roots = solve_at_lambda(state.lambda, state.alpha);
  if (roots.roots.empty()) return std::nullopt;
  const BranchPoint pt = branch_point(roots.roots.front().value(), state.alpha);
  const SteadyProfile profile =
      reconstruct_profile(pt, static_cast<int>(state.us.size()));
  return (state.us - profile.us).abs().maxCoeff();
}

}  // namespace

SimOutcome simulate(double lambda, double alpha, const SimParams& params,
                    const Eigen::ArrayXd* u0, const Observer& observer) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error("simulate requires lambda > 0");
  }
  if (params.nx < 51 || params.nx % 2 == 0) {
    throw std::domain_error("simulate requires odd nx >= 51");
  }
  if (!(params.t_end > 0.0)) {
    throw std::domain_error("simulate requires t_end > 0");
  }

  SimState state = (u0 != nullptr) ? initial_state(lambda, alpha, *u0)
                                   : initial_state(lambda, alpha, params.nx);
  const double h = grid_spacing(state);
  const double dt_base = kDtFactor * h * h;
  const double quench_level = 1.0 - kQuenchDelta;

  Stepper stepper(state.us.size());
  Eigen::ArrayXd g(state.us.size());

  SimOutcome outcome;
  long next_snapshot = 0;
  const auto maybe_observe = [&]() {
    if (!observer || params.snapshot_dt <= 0.0) return;
    if (state.time >= next_snapshot * params.snapshot_dt) {
      observer(state);
      next_snapshot = static_cast<long>(std::floor(state.time / params.snapshot_dt)) + 1;
    }
  };
  if (observer && params.snapshot_dt > 0.0) {
    observer(state);
    next_snapshot = 1;
  }

  while (true) {
    if (state.us.maxCoeff() >= quench_level) {
      outcome.status = SimStatus::quenched;
      outcome.quench_time = state.time;
      break;
    }
    bool singular = false;
    try {
      rhs_into(state.us, lambda, alpha, h, g, stepper.k1());
    } catch (const singularity_error&) {
      singular = true;
    }
    if (singular) {
      // Touchdown outran the threshold between resolved boundaries;
      // declared at the last completed time (a lower bound).
      outcome.status = SimStatus::quenched;
      outcome.quench_time = state.time;
      break;
    }
    if (stepper.k1().abs().maxCoeff() < params.steady_tol) {
      outcome.status = SimStatus::converged;
      outcome.steady_gap = gap_to_analytic_branch(state);
      break;
    }
    if (state.time >= params.t_end) {
      outcome.status = SimStatus::timed_out;
      break;
    }

    // Step at the stability bound; near touchdown, halve until the stage
    // values stay clear of the guard so the quench threshold is crossed at
    // a resolved boundary.
    double dt = dt_base;
    bool advanced = false;
    for (int attempt = 0; attempt < 60; ++attempt) {
      try {
        stepper.advance(state.us, stepper.k1(), dt, lambda, alpha, h);
        state.time += dt;
        advanced = true;
        break;
      } catch (const singularity_error&) {
        dt *= 0.5;
      }
    }
    if (!advanced) {
      outcome.status = SimStatus::quenched;
      outcome.quench_time = state.time;
      break;
    }
    maybe_observe();
  }

  if (observer && params.snapshot_dt > 0.0) {
    observer(state);  // final state always recorded
  }
  outcome.final_state = std::move(state);
  return outcome;
}

SimOutcome simulate(double lambda, double alpha, int nx, double t_end) {
  SimParams params;
  params.nx = nx;
  params.t_end = t_end;
  return simulate(lambda, alpha, params);
}

}  // namespace mems::dynamics
