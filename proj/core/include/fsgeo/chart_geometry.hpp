#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "fsgeo/errors.hpp"
#include "fsgeo/state_space.hpp"

namespace fsgeo {

/// Smooth parametrization x -> |psi(x)> over an open coordinate box.
/// eval must return normalized states everywhere on the domain and must be
/// smooth enough for second-order central differences to converge; it must
/// also be safe to call concurrently.
struct Chart {
  int n = 0;
  std::function<PureState(const Eigen::VectorXd&)> eval;
  std::vector<std::pair<double, double>> domain;

  bool contains(const Eigen::VectorXd& x) const;
};

using ScalarField = std::function<double(const Eigen::VectorXd&)>;

/// Default steps for first derivatives and for the outer stencil of the
/// divergence, plus the critical-point guard on the squared gradient norm.
inline constexpr double kDefaultStep = 1e-4;
inline constexpr double kDefaultOuterStep = 1e-3;
inline constexpr double kDefaultEpsilonGrad = 1e-10;

/// Fubini-Study metric components at a chart point. The inverse is computed
/// on request only and refused (SingularMetric) when the condition number
/// exceeds kMaxCondition or the metric is not positive definite.
class MetricData {
 public:
  MetricData(Eigen::MatrixXd g, double sqrt_det_g);

  const Eigen::MatrixXd& g() const noexcept { return g_; }
  double sqrt_det_g() const noexcept { return sqrt_det_; }
  Eigen::MatrixXd inverse() const;

  static constexpr double kMaxCondition = 1e12;

 private:
  Eigen::MatrixXd g_;
  double sqrt_det_;
};

/// Gradient of a scalar field with the index raised by the inverse metric.
struct Gradient {
  Eigen::VectorXd components;  // (grad f)^mu = g^{mu nu} d_nu f
  double norm_sq = 0.0;        // d_mu f g^{mu nu} d_nu f
};

/// Central-difference coordinate tangents |d_mu psi>, error O(h^2).
std::vector<Eigen::VectorXcd> chart_tangents(const Chart& chart,
                                             const Eigen::VectorXd& x,
                                             double h = kDefaultStep);

/// Central-difference partial derivatives of a scalar field on the chart.
Eigen::VectorXd field_partials(const Chart& chart, const ScalarField& field,
                               const Eigen::VectorXd& x, double h = kDefaultStep);

/// g_{mu nu} = 4 Re[<d_mu psi|d_nu psi> - <d_mu psi|psi><psi|d_nu psi>].
/// The projector term makes the components gauge invariant, so charts need
/// no phase fixing.
MetricData fs_metric(const Chart& chart, const Eigen::VectorXd& x,
                     double h = kDefaultStep);

Gradient scalar_gradient(const Chart& chart, const Eigen::VectorXd& x,
                         const ScalarField& field, double h = kDefaultStep);

/// xi = grad(f) / ||grad f||^2, the field transverse to the level sets with
/// df(xi) = 1. Throws VanishingGradient when ||grad f||^2 <= epsilon_grad
/// (critical point of the field).
Eigen::VectorXd xi_field(const Chart& chart, const Eigen::VectorXd& x,
                         const ScalarField& field, double h = kDefaultStep,
                         double epsilon_grad = kDefaultEpsilonGrad);

/// div xi = (1/sqrt(det g)) d_i (sqrt(det g) xi^i) by central differences of
/// the flux over step h2 (inner derivatives over h1). This is the Weingarten
/// trace (mean extrinsic curvature) of the level set through x.
double divergence_xi(const Chart& chart, const Eigen::VectorXd& x,
                     const ScalarField& field, double h1 = kDefaultStep,
                     double h2 = kDefaultOuterStep,
                     double epsilon_grad = kDefaultEpsilonGrad);

/// Certifies the split g = n (x) n + sigma with n_mu = d_mu f / ||grad f||:
/// returns max_mu |(sigma g^{-1} df)_mu|, which vanishes identically up to
/// round-off when the split is consistent.
double metric_split_residual(const Chart& chart, const Eigen::VectorXd& x,
                             const ScalarField& field, double h = kDefaultStep);

}  // namespace fsgeo
