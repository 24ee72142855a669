#include "fsgeo/chart_geometry.hpp"

#include <cmath>
#include <string>

namespace fsgeo {

namespace {

void require_stencil_inside(const Chart& chart, const Eigen::VectorXd& x, double h) {
  if (static_cast<int>(x.size()) != chart.n) {
    throw DimMismatch("chart point has wrong coordinate count");
  }
  for (int mu = 0; mu < chart.n; ++mu) {
    const auto& [lo, hi] = chart.domain[mu];
    if (!(x[mu] - h > lo && x[mu] + h < hi)) {
      throw OutOfDomain("stencil at coordinate " + std::to_string(mu) +
                        " leaves the open chart box");
    }
  }
}

}  // namespace

bool Chart::contains(const Eigen::VectorXd& x) const {
  if (static_cast<int>(x.size()) != n) return false;
  for (int mu = 0; mu < n; ++mu) {
    if (!(x[mu] > domain[mu].first && x[mu] < domain[mu].second)) return false;
  }
  return true;
}

MetricData::MetricData(Eigen::MatrixXd g, double sqrt_det_g)
    : g_(std::move(g)), sqrt_det_(sqrt_det_g) {}

Eigen::MatrixXd MetricData::inverse() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g_);
  if (es.info() != Eigen::Success) {
    throw SingularMetric("metric eigendecomposition failed");
  }
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > kMaxCondition) {
    throw SingularMetric("metric inversion refused: condition number beyond " +
                         std::to_string(kMaxCondition) +
                         " (chart contains degenerate directions)");
  }
  return es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

std::vector<Eigen::VectorXcd> chart_tangents(const Chart& chart,
                                             const Eigen::VectorXd& x, double h) {
  require_stencil_inside(chart, x, h);
  std::vector<Eigen::VectorXcd> tangents;
  tangents.reserve(chart.n);
  Eigen::VectorXd y = x;
  for (int mu = 0; mu < chart.n; ++mu) {
    y[mu] = x[mu] + h;
    const Eigen::VectorXcd plus = chart.eval(y).amplitudes();
    y[mu] = x[mu] - h;
    const Eigen::VectorXcd minus = chart.eval(y).amplitudes();
    y[mu] = x[mu];
    tangents.push_back((plus - minus) / (2.0 * h));
  }
  return tangents;
}

Eigen::VectorXd field_partials(const Chart& chart, const ScalarField& field,
                               const Eigen::VectorXd& x, double h) {
  require_stencil_inside(chart, x, h);
  Eigen::VectorXd partials(chart.n);
  Eigen::VectorXd y = x;
  for (int mu = 0; mu < chart.n; ++mu) {
    y[mu] = x[mu] + h;
    const double plus = field(y);
    y[mu] = x[mu] - h;
    const double minus = field(y);
    y[mu] = x[mu];
    partials[mu] = (plus - minus) / (2.0 * h);
  }
  return partials;
}

MetricData fs_metric(const Chart& chart, const Eigen::VectorXd& x, double h) {
  require_stencil_inside(chart, x, h);
  const Eigen::VectorXcd psi = chart.eval(x).amplitudes();
  const auto tangents = chart_tangents(chart, x, h);

  Eigen::VectorXcd projections(chart.n);  // <psi|d_mu psi>
  for (int mu = 0; mu < chart.n; ++mu) {
    projections[mu] = psi.dot(tangents[mu]);
  }

  Eigen::MatrixXd g(chart.n, chart.n);
  for (int mu = 0; mu < chart.n; ++mu) {
    for (int nu = 0; nu <= mu; ++nu) {
      const std::complex<double> full = tangents[mu].dot(tangents[nu]);
      const std::complex<double> gauge = std::conj(projections[mu]) * projections[nu];
      const double val = 4.0 * (full - gauge).real();
      g(mu, nu) = val;
      g(nu, mu) = val;
    }
  }

  const double det = g.determinant();
  return MetricData(std::move(g), std::sqrt(std::max(0.0, det)));
}

Gradient scalar_gradient(const Chart& chart, const Eigen::VectorXd& x,
                         const ScalarField& field, double h) {
  const Eigen::VectorXd partials = field_partials(chart, field, x, h);
  const Eigen::MatrixXd g_inv = fs_metric(chart, x, h).inverse();
  Gradient grad;
  grad.components = g_inv * partials;
  grad.norm_sq = partials.dot(grad.components);
  return grad;
}

Eigen::VectorXd xi_field(const Chart& chart, const Eigen::VectorXd& x,
                         const ScalarField& field, double h, double epsilon_grad) {
  const Gradient grad = scalar_gradient(chart, x, field, h);
  if (grad.norm_sq <= epsilon_grad) {
    throw VanishingGradient("xi_field: squared gradient norm " +
                            std::to_string(grad.norm_sq) +
                            " at a critical point of the field");
  }
  return grad.components / grad.norm_sq;
}

double divergence_xi(const Chart& chart, const Eigen::VectorXd& x,
                     const ScalarField& field, double h1, double h2,
                     double epsilon_grad) {
  require_stencil_inside(chart, x, h2 + h1);
  const double sqrt_det_center = fs_metric(chart, x, h1).sqrt_det_g();
  if (!(sqrt_det_center > 0.0)) {
    throw SingularMetric("divergence_xi: degenerate metric at the base point");
  }

  // flux_i(y) = sqrt(det g)(y) * xi^i(y)
  const auto flux = [&](const Eigen::VectorXd& y, int i) {
    const double sqrt_det = fs_metric(chart, y, h1).sqrt_det_g();
    const Eigen::VectorXd xi = xi_field(chart, y, field, h1, epsilon_grad);
    return sqrt_det * xi[i];
  };

  double div = 0.0;
  Eigen::VectorXd y = x;
  for (int i = 0; i < chart.n; ++i) {
    y[i] = x[i] + h2;
    const double plus = flux(y, i);
    y[i] = x[i] - h2;
    const double minus = flux(y, i);
    y[i] = x[i];
    div += (plus - minus) / (2.0 * h2);
  }
  return div / sqrt_det_center;
}

double metric_split_residual(const Chart& chart, const Eigen::VectorXd& x,
                             const ScalarField& field, double h) {
  const Eigen::VectorXd partials = field_partials(chart, field, x, h);
  const MetricData metric = fs_metric(chart, x, h);
  const Eigen::MatrixXd g_inv = metric.inverse();
  const double norm_sq = partials.dot(g_inv * partials);
  if (norm_sq <= kDefaultEpsilonGrad) {
    throw VanishingGradient("metric_split_residual: gradient vanishes");
  }
  const Eigen::VectorXd n_cov = partials / std::sqrt(norm_sq);
  const Eigen::MatrixXd sigma = metric.g() - n_cov * n_cov.transpose();
  // sigma is tangential: contracting it with the raised gradient must vanish.
  const Eigen::VectorXd residual = sigma * (g_inv * partials);
  return residual.cwiseAbs().maxCoeff();
}

}  // namespace fsgeo
