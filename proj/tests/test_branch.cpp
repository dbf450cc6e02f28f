#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "golden/reference_values.hpp"
#include "mems/branch.hpp"

using namespace mems;

namespace {

std::vector<double> excess_log_spaced(double excess_lo, double hi, int n) {
  std::vector<double> out;
  const double llo = std::log(excess_lo);
  const double lhi = std::log(hi - 1.0);
  for (int i = 0; i < n; ++i) {
    out.push_back(1.0 + std::exp(llo + (lhi - llo) * i / (n - 1)));
  }
  return out;
}

}  // namespace

TEST_CASE("log_term matches the high-precision references") {
  CHECK(log_term(1.0) == 0.0);
  CHECK(log_term(2.0) == doctest::Approx(refvals::kLogTermAt2).epsilon(1e-15));
  CHECK(log_term(4.0) == doctest::Approx(refvals::kLogTermAt4).epsilon(1e-15));
}

TEST_CASE("log_term is continuous across the series switch") {
  // The series kicks in below 1e-8; both sides must agree there.
  for (double excess : {9.999e-9, 1.0001e-8, 1e-10, 1e-12}) {
    const double direct = std::log(std::sqrt(1.0 + excess) + std::sqrt(excess));
    CHECK(log_term_excess(excess) ==
          doctest::Approx(direct).epsilon(1e-9));  // naive form loses digits
    CHECK(log_term_excess(excess) ==
          doctest::Approx(std::sqrt(excess) * (1.0 - excess / 6.0)).epsilon(1e-12));
  }
}

TEST_CASE("log_term is positive and strictly increasing") {
  double prev = 0.0;
  for (double s : excess_log_spaced(1e-12, 1e9, 300)) {
    const double v = log_term(s);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("log_term rejects bad input") {
  CHECK_THROWS_AS(log_term(0.5), std::domain_error);
  CHECK_THROWS_AS(log_term(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  CHECK_THROWS_AS(log_term(std::numeric_limits<double>::infinity()), std::domain_error);
  CHECK_THROWS_AS(log_term_excess(-1e-3), std::domain_error);
}

TEST_CASE("ShootingCoord validates its invariants") {
  CHECK(ShootingCoord(2.0).value() == 2.0);
  CHECK_THROWS_AS(ShootingCoord(1.0), std::domain_error);
  CHECK_THROWS_AS(ShootingCoord(0.9), std::domain_error);
  CHECK_THROWS_AS(ShootingCoord(std::numeric_limits<double>::infinity()),
                  std::domain_error);
}

TEST_CASE("branch_point reproduces the frozen s = 2 values") {
  const BranchPoint pt = branch_point(2.0, 0.0);
  CHECK(pt.a == doctest::Approx(refvals::kBranchA_S2).epsilon(1e-14));
  CHECK(pt.b == doctest::Approx(refvals::kBranchB_S2).epsilon(1e-14));
  CHECK(pt.sigma == doctest::Approx(refvals::kBranchSigma_S2).epsilon(1e-14));
  CHECK(pt.lambda == pt.sigma);  // alpha = 0: identical expressions, bitwise

  const BranchPoint nl = branch_point(2.0, 1.0);
  CHECK(nl.lambda == doctest::Approx(refvals::kBranchLambda_S2_Alpha1).epsilon(1e-14));
  CHECK(branch_point(10.0, 1.0).lambda ==
        doctest::Approx(refvals::kBranchLambda_S10_Alpha1).epsilon(1e-14));
}

TEST_CASE("branch_point approaches the degenerate limits") {
  const BranchPoint near_one = branch_point(1.0 + 1e-9, 0.5);
  CHECK(near_one.a == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(near_one.b == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(near_one.lambda < 1e-4);

  const BranchPoint far = branch_point(1e6, 0.5);
  CHECK(far.a < 1e-5);
  CHECK(far.lambda < 1e-2);
}

TEST_CASE("branch_point invariants hold on a wide sample") {
  for (double alpha : {0.0, 0.5, 1.0, 5.0}) {
    for (double s : excess_log_spaced(1e-6, 1e5, 80)) {
      const BranchPoint pt = branch_point(s, alpha);
      CHECK(0.0 < pt.a);
      CHECK(pt.a < pt.b);
      CHECK(pt.b < 1.0);
      CHECK(pt.sigma > 0.0);
      CHECK(pt.lambda > 0.0);
      CHECK(pt.b / pt.a == doctest::Approx(s).epsilon(1e-13));
      const double lhs = (1.0 - pt.b) * (1.0 - pt.b);
      const double rhs = 2.0 * pt.sigma * (1.0 / pt.a - 1.0 / pt.b);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("a(s) is strictly decreasing and b(s) is not monotone") {
  double prev_a = 2.0;
  for (double s : excess_log_spaced(1e-9, 1e6, 500)) {
    const double a = branch_point(s, 0.0).a;
    CHECK(a < prev_a);
    prev_a = a;
  }
  const double b_small = branch_point(1.2, 0.0).b;
  const double b_mid = branch_point(10.0, 0.0).b;
  const double b_large = branch_point(100.0, 0.0).b;
  CHECK(b_small > b_mid);  // dips to an interior minimum, then recovers
  CHECK(b_mid < b_large);
}

TEST_CASE("branch_point rejects out-of-domain input") {
  CHECK_THROWS_AS(branch_point(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(branch_point(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(branch_point(2e12, 0.0), std::domain_error);  // above the clamp
  CHECK_THROWS_AS(branch_point(2.0, -0.1), std::domain_error);
  CHECK_THROWS_AS(branch_point(std::numeric_limits<double>::quiet_NaN(), 0.0),
                  std::domain_error);
  CHECK_THROWS_AS(branch_point(2.0, std::numeric_limits<double>::infinity()),
                  std::domain_error);
}

TEST_CASE("nonlocal_integral matches the frozen value and its limits") {
  const BranchPoint pt = branch_point(2.0, 0.0);
  CHECK(nonlocal_integral(pt.a, pt.b) ==
        doctest::Approx(refvals::kNonlocalI_S2).epsilon(1e-14));

  // b -> a+ tends to the constant-profile value 2/a.
  const double a = 0.5;
  CHECK(nonlocal_integral(a, a * (1.0 + 1e-7)) ==
        doctest::Approx(2.0 / a).epsilon(1e-6));

  // w < 1 pointwise, so the integral always exceeds the domain length.
  for (double s : {1.1, 2.0, 50.0}) {
    const BranchPoint p = branch_point(s, 0.0);
    CHECK(nonlocal_integral(p.a, p.b) > 2.0);
  }
}

TEST_CASE("nonlocal_integral rejects bad ordering") {
  CHECK_THROWS_AS(nonlocal_integral(0.5, 0.4), std::domain_error);
  CHECK_THROWS_AS(nonlocal_integral(0.5, 0.5), std::domain_error);
  CHECK_THROWS_AS(nonlocal_integral(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(nonlocal_integral(0.5, 1.0), std::domain_error);
}

TEST_CASE("phi fixed values and boundary identity") {
  CHECK(phi(0.5, 0.5) == 0.0);
  CHECK(phi(0.5, 0.75) == doctest::Approx(refvals::kPhi_A05_W075).epsilon(1e-14));

  for (double s : {1.05, 2.0, 30.0}) {
    const BranchPoint pt = branch_point(s, 0.0);
    CHECK(phi(pt.a, pt.b) ==
          doctest::Approx(std::sqrt(2.0 * pt.sigma)).epsilon(1e-12));
  }
}

TEST_CASE("phi is strictly increasing in w") {
  const double a = 0.3;
  double prev = -1.0;
  for (int i = 0; i <= 50; ++i) {
    const double w = a + (0.95 - a) * i / 50.0;
    const double v = phi(a, w);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("phi rejects w below a") {
  CHECK_THROWS_AS(phi(0.5, 0.4), std::domain_error);
  CHECK_THROWS_AS(phi(1.5, 1.6), std::domain_error);
  CHECK_THROWS_AS(phi(0.5, std::numeric_limits<double>::quiet_NaN()),
                  std::domain_error);
}

TEST_CASE("invert_phi endpoints and interior point") {
  const BranchPoint pt = branch_point(2.0, 0.0);
  CHECK(invert_phi(pt.a, pt.b, pt.sigma, 0.0) == pt.a);
  CHECK(invert_phi(pt.a, pt.b, pt.sigma, 1.0) == pt.b);

  const double w_half = invert_phi(pt.a, pt.b, pt.sigma, 0.5);
  CHECK(pt.a < w_half);
  CHECK(w_half < pt.b);
  CHECK(phi(pt.a, w_half) ==
        doctest::Approx(0.5 * std::sqrt(2.0 * pt.sigma)).epsilon(1e-12));
}

TEST_CASE("invert_phi round-trips phi to 1e-12 relative") {
  for (double s : {1.01, 1.2, 2.0, 10.0, 300.0}) {
    const BranchPoint pt = branch_point(s, 0.0);
    for (int i = 1; i < 16; ++i) {
      const double w_in = pt.a + (pt.b - pt.a) * i / 16.0;
      const double x = phi(pt.a, w_in) / std::sqrt(2.0 * pt.sigma);
      const double w_out = invert_phi(pt.a, pt.b, pt.sigma, x);
      CHECK(w_out == doctest::Approx(w_in).epsilon(1e-12));
    }
  }
}

TEST_CASE("invert_phi rejects inconsistent and invalid input") {
  const BranchPoint pt = branch_point(2.0, 0.0);
  CHECK_THROWS_AS(invert_phi(pt.a, pt.b, pt.sigma * 1.01, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(invert_phi(pt.a, pt.b, pt.sigma, -0.1), std::domain_error);
  CHECK_THROWS_AS(invert_phi(pt.a, pt.b, pt.sigma, 1.1), std::domain_error);
  CHECK_THROWS_AS(invert_phi(pt.b, pt.a, pt.sigma, 0.5), std::domain_error);
  CHECK_THROWS_AS(invert_phi(pt.a, pt.b, -1.0, 0.5), std::domain_error);
}

TEST_CASE("symmetric_grid is exactly symmetric with a zero midpoint") {
  const Eigen::ArrayXd xs = symmetric_grid(101);
  CHECK(xs(0) == -1.0);
  CHECK(xs(100) == 1.0);
  CHECK(xs(50) == 0.0);
  for (int i = 0; i < 50; ++i) {
    CHECK(xs(i) == -xs(100 - i));
  }
  CHECK_THROWS_AS(symmetric_grid(100), std::domain_error);
  CHECK_THROWS_AS(symmetric_grid(1), std::domain_error);
}

TEST_CASE("reconstruct_profile small-grid structure") {
  const BranchPoint pt = branch_point(2.0, 0.0);
  const SteadyProfile p = reconstruct_profile(pt, 5);
  CHECK(p.ws(0) == pt.b);
  CHECK(p.ws(4) == pt.b);
  CHECK(p.ws(2) == pt.a);
  CHECK(p.ws(1) == p.ws(3));  // mirror copy, bitwise
  CHECK(p.ws(1) == invert_phi(pt.a, pt.b, pt.sigma, 0.5));
}

TEST_CASE("reconstruct_profile satisfies the steady-profile invariants") {
  for (double s : {1.2, 2.0, 6.0}) {
    const BranchPoint pt = branch_point(s, 1.0);
    const SteadyProfile p = reconstruct_profile(pt, 201);
    const int n = 201;
    const int mid = 100;
    CHECK(p.ws(mid) == pt.a);
    CHECK(p.ws(0) == pt.b);
    CHECK(p.ws(n - 1) == pt.b);

    for (int i = 0; i < mid; ++i) {
      CHECK(std::abs(p.ws(i) - p.ws(n - 1 - i)) <= 1e-12);
    }
    for (int i = 1; i < n - 1; ++i) {
      CHECK(p.ws(i - 1) + p.ws(i + 1) - 2.0 * p.ws(i) > 0.0);  // strict convexity
    }
    for (int i = mid; i < n - 1; ++i) {
      CHECK(p.ws(i + 1) >= p.ws(i));  // nondecreasing on the right half
    }
    for (int i = 0; i < n; ++i) {
      CHECK(p.us(i) == 1.0 - p.ws(i));
      CHECK(p.us(i) > 0.0);
      CHECK(p.us(i) < 1.0);
    }
    // Deflection peaks at the center.
    CHECK(p.us.maxCoeff() == p.us(mid));

    // Second-order one-sided Robin defect at x = 1.
    const double h = p.xs(1) - p.xs(0);
    const double wp =
        (3.0 * p.ws(n - 1) - 4.0 * p.ws(n - 2) + p.ws(n - 3)) / (2.0 * h);
    CHECK(std::abs(wp - (1.0 - pt.b)) < 1e-3);
  }
}

TEST_CASE("reconstruct_profile rejects bad grid sizes") {
  const BranchPoint pt = branch_point(2.0, 0.0);
  CHECK_THROWS_AS(reconstruct_profile(pt, 4), std::domain_error);
  CHECK_THROWS_AS(reconstruct_profile(pt, 1), std::domain_error);
}
