#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fsgeo/analytic_families.hpp"
#include "fsgeo/entanglement.hpp"
#include "oracles.hpp"

using namespace fsgeo;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
}  // namespace

TEST_CASE("bloch divergence oracle is identically zero") {
  CHECK(bloch::divergence_cos_theta(kPi / 2.0) == 0.0);
  CHECK(bloch::divergence_cos_theta(0.3) == 0.0);
  CHECK(bloch::divergence_cos_theta(3.0) == 0.0);
  CHECK_THROWS_AS(bloch::divergence_cos_theta(0.0), OutOfDomain);
  CHECK_THROWS_AS(bloch::divergence_cos_theta(kPi), OutOfDomain);
}

TEST_CASE("e_of_theta endpoints, monotonicity and extended symmetry") {
  CHECK(two_qubit::e_of_theta(0.0) == 0.0);
  CHECK(two_qubit::e_of_theta(kPi / 4.0) == doctest::Approx(kLn2).epsilon(1e-15));
  CHECK(two_qubit::e_of_theta(kPi / 8.0) ==
        doctest::Approx(oracle::kEntropyAtPiOver8).epsilon(1e-12));

  double prev = -1.0;
  for (double theta = 0.0; theta <= kPi / 4.0 + 1e-12; theta += kPi / 80.0) {
    const double e = two_qubit::e_of_theta(theta);
    CHECK(e > prev);
    prev = e;
  }

  // The Schmidt spectrum is blind to theta <-> pi/2 - theta.
  for (const double theta : {0.1, 0.3, 0.6, 0.78}) {
    CHECK(std::abs(two_qubit::e_of_theta(theta) -
                   two_qubit::e_of_theta(kPi / 2.0 - theta)) < 1e-12);
  }
  CHECK_THROWS_AS(two_qubit::e_of_theta(-0.1), OutOfRange);
}

TEST_CASE("de_dtheta matches the slope of e_of_theta") {
  CHECK(std::abs(two_qubit::de_dtheta(kPi / 4.0)) < 1e-15);
  CHECK(two_qubit::de_dtheta(kPi / 8.0) ==
        doctest::Approx(oracle::kSlopeAtPiOver8).epsilon(1e-12));
  // = 2 sin(pi/4) log(1 + sqrt 2) at pi/8.
  CHECK(two_qubit::de_dtheta(kPi / 8.0) ==
        doctest::Approx(2.0 * std::sin(kPi / 4.0) * oracle::kLog1PlusSqrt2)
            .epsilon(1e-12));

  const double h = 1e-5;
  const double fd =
      (two_qubit::e_of_theta(0.5 + h) - two_qubit::e_of_theta(0.5 - h)) / (2.0 * h);
  CHECK(std::abs(two_qubit::de_dtheta(0.5) - fd) < 1e-8);

  for (double theta = 0.05; theta < kPi / 4.0; theta += 0.05) {
    CHECK(two_qubit::de_dtheta(theta) > 0.0);
  }
}

TEST_CASE("trace_w values and singular endpoints") {
  CHECK(two_qubit::trace_w(kPi / 8.0) ==
        doctest::Approx(oracle::kTraceWAtPiOver8).epsilon(1e-12));
  CHECK(two_qubit::trace_w(0.7) ==
        doctest::Approx(34.956692125858162).epsilon(1e-12));
  for (double theta = 0.05; theta < kPi / 4.0 - 0.01; theta += 0.05) {
    CHECK(two_qubit::trace_w(theta) > 0.0);
  }
  CHECK_THROWS_AS(two_qubit::trace_w(0.0), SingularPoint);
  CHECK_THROWS_AS(two_qubit::trace_w(kPi / 4.0), SingularPoint);
  CHECK_THROWS_AS(two_qubit::trace_w(0.7853981633974483), SingularPoint);
  CHECK_THROWS_AS(two_qubit::trace_w(0.9), SingularPoint);
}

TEST_CASE("omega_reduced and s_geo_reduced") {
  CHECK(two_qubit::omega_reduced(kPi / 8.0) ==
        doctest::Approx(oracle::kOmegaAtPiOver8).epsilon(1e-12));
  CHECK(two_qubit::s_geo_reduced(kPi / 8.0) ==
        doctest::Approx(oracle::kSGeoAtPiOver8).epsilon(1e-12));

  // omega shrinks (logarithmically) toward the product corner and blows up
  // at the maximally entangled end.
  CHECK(two_qubit::omega_reduced(1e-12) < two_qubit::omega_reduced(1e-6));
  CHECK(two_qubit::omega_reduced(1e-6) < two_qubit::omega_reduced(0.1));
  CHECK(two_qubit::omega_reduced(1e-12) < 0.25);
  CHECK(two_qubit::omega_reduced(kPi / 4.0 - 1e-6) > 1e6);
  CHECK(two_qubit::s_geo_reduced(1e-12) < two_qubit::s_geo_reduced(0.3));

  CHECK_THROWS_AS(two_qubit::omega_reduced(0.0), SingularPoint);
  CHECK_THROWS_AS(two_qubit::s_geo_reduced(kPi / 4.0), SingularPoint);
}

TEST_CASE("ds_geo_de coincides with trace_w in closed form") {
  CHECK(two_qubit::ds_geo_de(kPi / 8.0) ==
        doctest::Approx(oracle::kTraceWAtPiOver8).epsilon(1e-12));
  for (double theta = 0.01; theta < 0.7853; theta += 1e-3) {
    const double a = two_qubit::ds_geo_de(theta);
    const double b = two_qubit::trace_w(theta);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
  }

  // Chain-rule oracle: differentiate S_geo against e numerically.
  const double e0 = 0.4165;
  const double de = 1e-5;
  const double fd = (two_qubit::s_geo_reduced(two_qubit::theta_of_e(e0 + de)) -
                     two_qubit::s_geo_reduced(two_qubit::theta_of_e(e0 - de))) /
                    (2.0 * de);
  const double closed = two_qubit::ds_geo_de(two_qubit::theta_of_e(e0));
  CHECK(std::abs(fd - closed) / closed < 1e-5);
}

TEST_CASE("theta_of_e inverts the entropy curve") {
  CHECK(two_qubit::theta_of_e(0.0) < 1e-12);
  // The entropy is flat at its maximum, so the angle is resolvable only to
  // ~sqrt(tol); the defining contract |E(theta) - e| < 1e-12 still holds.
  const double top = two_qubit::theta_of_e(kLn2);
  CHECK(std::abs(top - kPi / 4.0) < 1e-6);
  CHECK(std::abs(two_qubit::e_of_theta(top) - kLn2) < 1e-12);
  CHECK(std::abs(two_qubit::theta_of_e(oracle::kEntropyAtPiOver8) - kPi / 8.0) < 1e-9);

  for (double e = 0.02; e < kLn2; e += 0.05) {
    const double theta = two_qubit::theta_of_e(e);
    CHECK(std::abs(two_qubit::e_of_theta(theta) - e) < 1e-12);
  }
  CHECK_THROWS_AS(two_qubit::theta_of_e(-0.01), OutOfRange);
  CHECK_THROWS_AS(two_qubit::theta_of_e(0.8), OutOfRange);
}

TEST_CASE("chart states carry exactly the closed-form entanglement") {
  const Bipartition bip(2, 2);
  for (const double theta : {0.05, 0.2, 0.39, 0.6, 0.78}) {
    for (const double phi : {0.0, 2.1}) {
      const PureState psi = two_qubit::schmidt_state({theta, phi});
      CHECK(std::abs(entanglement(psi, bip) - two_qubit::e_of_theta(theta)) < 1e-10);
    }
  }
}

TEST_CASE("numeric metric agrees with the closed form on a theta grid") {
  const Chart chart = two_qubit::schmidt_chart();
  for (double theta = 0.1; theta <= 0.7 + 1e-9; theta += 0.1) {
    const MetricData m = fs_metric(chart, (Eigen::VectorXd(2) << theta, 0.5).finished());
    const double g11 = 4.0 * std::pow(std::sin(theta) * std::cos(theta), 2);
    CHECK(std::abs(m.g()(0, 0) - 4.0) < 1e-6);
    CHECK(std::abs(m.g()(1, 1) - g11) < 1e-6);
    CHECK(std::abs(m.g()(0, 1)) < 1e-7);
  }
}

TEST_CASE("numeric divergence tracks trace_w across the Schmidt interval") {
  const Chart chart = two_qubit::schmidt_chart();
  const ScalarField field = two_qubit::entanglement_field();
  for (const double theta : {0.2, 0.35, 0.5, 0.65, 0.73}) {
    const double numeric =
        divergence_xi(chart, (Eigen::VectorXd(2) << theta, 0.0).finished(), field);
    const double analytic = two_qubit::trace_w(theta);
    CHECK(std::abs(numeric - analytic) / analytic < 1e-3);
  }
}
