#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "mems/dynamics.hpp"
#include "mems/pull_in.hpp"
#include "mems/verify.hpp"

namespace mems {

/// Shortest 17-significant-digit decimal form, locale-independent;
/// round-trips 64-bit floats exactly.
std::string format_double(double v);

/// CSV header `t,s,a,b,sigma,lambda` plus one row per diagram entry.
void write_diagram_csv(std::ostream& os, const DiagramTable& table);

/// CSV header `alpha,s_star,lambda_star,p_residual,iterations` plus one
/// row per solution.
void write_pullin_csv(std::ostream& os, const std::vector<PullInSolution>& sols);

nlohmann::ordered_json pullin_json(const PullInSolution& sol);

/// {alpha, lambda, classification, roots:[{s,a,b,sigma}], profiles:[{xs,ws,us}]}
nlohmann::ordered_json solve_json(const SolveResult& result,
                                  const std::vector<SteadyProfile>& profiles);

/// {status, quench_time?, steady_gap?}
nlohmann::ordered_json sim_summary_json(const dynamics::SimOutcome& outcome);

nlohmann::ordered_json verify_json(const std::vector<verify::CheckResult>& results);

/// One `t,max_u,u_mid,nonlocal_integral` CSV row for a simulation state.
std::string sim_series_row(const dynamics::SimState& state);
inline constexpr const char* kSimSeriesHeader = "t,max_u,u_mid,nonlocal_integral";

}  // namespace mems
