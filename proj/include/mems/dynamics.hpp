#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <stdexcept>

namespace mems::dynamics {

/// Thrown when 1 - u reaches the touchdown guard inside a right-hand-side
/// evaluation.
struct singularity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kTouchdownGuard = 1e-6;  // guard on 1 - u inside rhs
inline constexpr double kQuenchDelta = 1e-2;     // quench when max u >= 1 - delta
inline constexpr double kDtFactor = 0.4;         // stability bound dt <= 0.4 h^2

/// Method-of-lines state of the evolution problem on a uniform grid over
/// [-1, 1] with Robin boundary conditions.
struct SimState {
  double time = 0.0;
  Eigen::ArrayXd xs;
  Eigen::ArrayXd us;
  double lambda = 0.0;
  double alpha = 0.0;
};

/// Fresh state at t = 0 with u == 0 (nx odd, >= 3).
SimState initial_state(double lambda, double alpha, int nx);
/// Fresh state with a caller-supplied deflection profile in [0, 1).
SimState initial_state(double lambda, double alpha, const Eigen::ArrayXd& u0);

/// Grid spacing of a state.
double grid_spacing(const SimState& state);

/// Nodal time derivative: centered Laplacian with Robin ghost values plus
/// the nonlocal reaction term (trapezoid quadrature of 1/(1-u), fixed
/// left-to-right summation).
Eigen::ArrayXd rhs(const SimState& state);

/// Trapezoid quadrature of 1/(1-u) over the state's grid, the capacitance
/// coupling integral.
double nonlocal_quadrature(const SimState& state);

/// One explicit classical 4th-order step. Requires dt <= 0.4 h^2.
SimState step(const SimState& state, double dt);

enum class SimStatus { converged, quenched, timed_out };
const char* to_string(SimStatus s);

struct SimOutcome {
  SimStatus status = SimStatus::timed_out;
  SimState final_state;
  std::optional<double> quench_time;  // present iff quenched
  std::optional<double> steady_gap;   // present iff converged (sup-norm gap
                                      // to the analytic lower-branch profile)
};

using Observer = std::function<void(const SimState&)>;

struct SimParams {
  int nx = 401;              // odd, >= 51
  double t_end = 100.0;
  double steady_tol = 1e-8;  // converged when sup |du/dt| < steady_tol
  double snapshot_dt = 0.0;  // observer cadence in time units; 0 disables
};

/// Steps until quench (max u >= 1 - 1e-2), convergence, or t_end. Near
/// touchdown a step that trips the singularity guard is retried at half
/// the step size so the quench threshold is always crossed at a resolved
/// step boundary.
SimOutcome simulate(double lambda, double alpha, const SimParams& params,
                    const Eigen::ArrayXd* u0 = nullptr,
                    const Observer& observer = {});

/// Convenience overload with default parameters.
SimOutcome simulate(double lambda, double alpha, int nx, double t_end);

}  // namespace mems::dynamics
