#include "mems/serialize.hpp"

#include <charconv>
#include <ostream>
#include <system_error>

namespace mems {

std::string format_double(double v) {
  char buf[40];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

nlohmann::ordered_json array_json(const Eigen::ArrayXd& values) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    arr.push_back(values(i));
  }
  return arr;
}

}  // namespace

void write_diagram_csv(std::ostream& os, const DiagramTable& table) {
  os << "t,s,a,b,sigma,lambda\n";
  for (const DiagramRow& row : table.rows) {
    os << format_double(row.t) << ',' << format_double(row.s) << ','
       << format_double(row.a) << ',' << format_double(row.b) << ','
       << format_double(row.sigma) << ',' << format_double(row.lambda) << '\n';
  }
}

void write_pullin_csv(std::ostream& os, const std::vector<PullInSolution>& sols) {
  os << "alpha,s_star,lambda_star,p_residual,iterations\n";
  for (const PullInSolution& sol : sols) {
    os << format_double(sol.alpha) << ',' << format_double(sol.s_star) << ','
       << format_double(sol.lambda_star) << ',' << format_double(sol.p_residual)
       << ',' << sol.iterations << '\n';
  }
}

nlohmann::ordered_json pullin_json(const PullInSolution& sol) {
  nlohmann::ordered_json j;
  j["alpha"] = sol.alpha;
  j["s_star"] = sol.s_star;
  j["lambda_star"] = sol.lambda_star;
  j["p_residual"] = sol.p_residual;
  j["iterations"] = sol.iterations;
  return j;
}

nlohmann::ordered_json solve_json(const SolveResult& result,
                                  const std::vector<SteadyProfile>& profiles) {
  nlohmann::ordered_json j;
  j["alpha"] = result.alpha;
  j["lambda"] = result.lambda;
  j["classification"] = to_string(result.classification);
  nlohmann::ordered_json roots = nlohmann::ordered_json::array();
  for (size_t i = 0; i < result.roots.size(); ++i) {
    nlohmann::ordered_json root;
    root["s"] = result.roots[i].value();
    if (i < profiles.size()) {
      root["a"] = profiles[i].a;
      root["b"] = profiles[i].b;
      root["sigma"] = profiles[i].sigma;
    }
    roots.push_back(std::move(root));
  }
  j["roots"] = std::move(roots);
  nlohmann::ordered_json profs = nlohmann::ordered_json::array();
  for (const SteadyProfile& p : profiles) {
    nlohmann::ordered_json prof;
    prof["xs"] = array_json(p.xs);
    prof["ws"] = array_json(p.ws);
    prof["us"] = array_json(p.us);
    profs.push_back(std::move(prof));
  }
  j["profiles"] = std::move(profs);
  return j;
}

nlohmann::ordered_json sim_summary_json(const dynamics::SimOutcome& outcome) {
  nlohmann::ordered_json j;
  j["status"] = dynamics::to_string(outcome.status);
  if (outcome.quench_time) {
    j["quench_time"] = *outcome.quench_time;
  }
  if (outcome.steady_gap) {
    j["steady_gap"] = *outcome.steady_gap;
  }
  return j;
}

nlohmann::ordered_json verify_json(const std::vector<verify::CheckResult>& results) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const verify::CheckResult& r : results) {
    nlohmann::ordered_json c;
    c["name"] = r.name;
    c["passed"] = r.passed;
    c["detail"] = r.detail;
    checks.push_back(std::move(c));
  }
  nlohmann::ordered_json j;
  j["checks"] = std::move(checks);
  j["all_passed"] = verify::all_passed(results);
  return j;
}

std::string sim_series_row(const dynamics::SimState& state) {
  const Eigen::Index mid = (state.us.size() - 1) / 2;
  std::string row = format_double(state.time);
  row += ',';
  row += format_double(state.us.maxCoeff());
  row += ',';
  row += format_double(state.us(mid));
  row += ',';
  row += format_double(dynamics::nonlocal_quadrature(state));
  return row;
}

}  // namespace mems
