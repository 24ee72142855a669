#pragma once

#include "fsgeo/chart_geometry.hpp"
#include "fsgeo/microcanonical.hpp"
#include "fsgeo/state_space.hpp"

namespace fsgeo::bloch {

/// |psi(theta, phi)> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, the round
/// unit sphere: g = diag(1, sin^2 theta). Domain theta in (0, pi), phi open.
Chart chart();

/// f(theta, phi) = cos(theta), the z-projection warm-up functional.
ScalarField cos_theta_field();

/// Closed-form divergence of xi for f = cos(theta): identically zero on the
/// open sphere. Throws OutOfDomain at the poles.
double divergence_cos_theta(double theta);

/// The parallels of the sphere as a reduced one-parameter family.
ReducedFamily reduced_family();

}  // namespace fsgeo::bloch

namespace fsgeo::two_qubit {

/// Schmidt angles; theta in (0, pi/4] labels the spectrum canonically.
struct SchmidtPoint {
  double theta = 0.0;
  double phi = 0.0;
};

/// cos(theta)|00> + e^{i phi} sin(theta)|11>.
PureState schmidt_state(const SchmidtPoint& p);

/// Two-coordinate Schmidt chart with g = diag(4, 4 sin^2 th cos^2 th).
/// The coordinate box extends theta over (0, pi/2) so that stencils near
/// pi/4 stay evaluable; the canonical spectrum labels live in (0, pi/4].
Chart schmidt_chart();

/// The entanglement functional pulled back to the Schmidt chart: evaluates
/// E(|psi(theta, phi)>) through the reduced-density route, not the closed
/// form, so chart-level numerics exercise the full pipeline.
ScalarField entanglement_field();

/// Binary entropy of cos^2(theta) in nats; accepts [0, pi/2] (the formula is
/// symmetric about pi/4, which extended-domain checks rely on).
double e_of_theta(double theta);

/// dE/dtheta = 4 sin(th) cos(th) log(cot th); positive on (0, pi/4), zero at pi/4.
double de_dtheta(double theta);

/// Weingarten trace 1 / (4 sin^2 th cos^2 th log^2(cot th)) on (0, pi/4).
/// Throws SingularPoint at (or numerically at) the endpoints.
double trace_w(double theta);

/// Level-set volume 2 pi / |log(cot th)| on (0, pi/4).
double omega_reduced(double theta);

/// log(2 pi) - log|log(cot th)|.
double s_geo_reduced(double theta);

/// dS_geo/de; algebraically identical to trace_w.
double ds_geo_de(double theta);

/// Inverse of e_of_theta on [0, pi/4] by bisection, |E(theta) - e| < 1e-12.
/// Throws OutOfRange for e outside [0, log 2].
double theta_of_e(double e);

/// The Schmidt family packaged for reduced level-set quadrature.
ReducedFamily reduced_family();

}  // namespace fsgeo::two_qubit
