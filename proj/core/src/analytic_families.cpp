#include "fsgeo/analytic_families.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fsgeo/entanglement.hpp"

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kHalfPi = std::numbers::pi / 2.0;
}  // namespace

namespace fsgeo::bloch {

Chart chart() {
  Chart c;
  c.n = 2;
  c.domain = {{0.0, kPi}, {-2.0 * kPi, 4.0 * kPi}};
  c.eval = [](const Eigen::VectorXd& x) {
    const double theta = x[0];
    const double phi = x[1];
    Eigen::VectorXcd amps(2);
    amps[0] = std::complex<double>(std::cos(0.5 * theta), 0.0);
    amps[1] = std::polar(std::sin(0.5 * theta), phi);
    return PureState(std::move(amps));
  };
  return c;
}

ScalarField cos_theta_field() {
  return [](const Eigen::VectorXd& x) { return std::cos(x[0]); };
}

double divergence_cos_theta(double theta) {
  if (!(theta > 0.0 && theta < kPi)) {
    throw OutOfDomain("divergence_cos_theta: theta " + std::to_string(theta) +
                      " at or beyond the poles");
  }
  // The flux sqrt(det g) xi^theta = -1 is constant, so the divergence is 0.
  return 0.0;
}

ReducedFamily reduced_family() {
  ReducedFamily family;
  family.chart = chart();
  family.field = cos_theta_field();
  family.level_bracket = {1e-3, kPi - 1e-3};
  return family;
}

}  // namespace fsgeo::bloch

namespace fsgeo::two_qubit {

PureState schmidt_state(const SchmidtPoint& p) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
  amps[0] = std::complex<double>(std::cos(p.theta), 0.0);
  amps[3] = std::polar(std::sin(p.theta), p.phi);
  return PureState(std::move(amps));
}

Chart schmidt_chart() {
  Chart c;
  c.n = 2;
  c.domain = {{0.0, kHalfPi}, {-2.0 * kPi, 4.0 * kPi}};
  c.eval = [](const Eigen::VectorXd& x) {
    return schmidt_state({x[0], x[1]});
  };
  return c;
}

ScalarField entanglement_field() {
  return [](const Eigen::VectorXd& x) {
    static const Bipartition bip(2, 2);
    return entanglement(schmidt_state({x[0], x[1]}), bip);
  };
}

double e_of_theta(double theta) {
  if (!(theta >= 0.0 && theta <= kHalfPi)) {
    throw OutOfRange("e_of_theta: theta " + std::to_string(theta) +
                     " outside [0, pi/2]");
  }
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  double e = 0.0;
  if (c2 > 0.0) e -= c2 * std::log(c2);
  if (s2 > 0.0) e -= s2 * std::log(s2);
  return e;
}

double de_dtheta(double theta) {
  if (!(theta > 0.0 && theta < kHalfPi)) {
    throw OutOfRange("de_dtheta: theta " + std::to_string(theta) +
                     " outside (0, pi/2)");
  }
  return 4.0 * std::sin(theta) * std::cos(theta) *
         std::log(std::cos(theta) / std::sin(theta));
}

namespace {

// log(cot theta) on the canonical interval, with typed errors at the
// singular endpoints (including arguments within round-off of them).
double log_cot_checked(double theta, const char* who) {
  if (!(theta > 0.0 && theta < kQuarterPi)) {
    throw SingularPoint(std::string(who) + ": theta " + std::to_string(theta) +
                        " at or outside the open interval (0, pi/4)");
  }
  const double log_cot = std::log(std::cos(theta) / std::sin(theta));
  if (!(log_cot > 1e-15)) {
    throw SingularPoint(std::string(who) +
                        ": theta within floating-point resolution of pi/4");
  }
  return log_cot;
}

}  // namespace

double trace_w(double theta) {
  const double log_cot = log_cot_checked(theta, "trace_w");
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double denom = 4.0 * s * s * c * c * log_cot * log_cot;
  if (!(denom > 1e-30)) {
    throw SingularPoint("trace_w: theta within floating-point resolution of an endpoint");
  }
  return 1.0 / denom;
}

double omega_reduced(double theta) {
  return 2.0 * kPi / log_cot_checked(theta, "omega_reduced");
}

double s_geo_reduced(double theta) {
  return std::log(2.0 * kPi) - std::log(log_cot_checked(theta, "s_geo_reduced"));
}

double ds_geo_de(double theta) {
  // Chain rule (dS_geo/dtheta) / (dE/dtheta); collapses to the trace_w form.
  const double log_cot = log_cot_checked(theta, "ds_geo_de");
  const double sc = std::sin(theta) * std::cos(theta);
  const double ds_dtheta = 1.0 / (sc * log_cot);
  const double de = 4.0 * sc * log_cot;
  if (!(std::abs(de) > 1e-300)) {
    throw SingularPoint("ds_geo_de: dE/dtheta vanishes");
  }
  return ds_dtheta / de;
}

double theta_of_e(double e) {
  if (!(e >= 0.0 && e <= std::numbers::ln2 + 1e-15)) {
    throw OutOfRange("theta_of_e: e " + std::to_string(e) + " outside [0, log 2]");
  }
  double lo = 0.0;
  double hi = kQuarterPi;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (e_of_theta(mid) < e) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ReducedFamily reduced_family() {
  ReducedFamily family;
  family.chart = schmidt_chart();
  family.field = entanglement_field();
  family.level_bracket = {1e-9, kQuarterPi};
  return family;
}

}  // namespace fsgeo::two_qubit
