#include "fsgeo/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fsgeo {

HermitianMatrix::HermitianMatrix(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1) {
    throw DimMismatch("HermitianMatrix: matrix must be square and nonempty");
  }
}

double HermitianMatrix::hermiticity_residual() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

HermitianMatrix reduced_density(const PureState& psi, const Bipartition& bip) {
  if (psi.dim() != bip.dim()) {
    throw DimMismatch("reduced_density: state dim " + std::to_string(psi.dim()) +
                      " != bipartition dim " + std::to_string(bip.dim()));
  }
  const auto& a = psi.amplitudes();
  // View the amplitudes as a dim_a x dim_b matrix Psi (row-major composite
  // index), then rho_A = Psi Psi^dagger.
  Eigen::MatrixXcd rho(bip.dim_a, bip.dim_a);
  for (int i = 0; i < bip.dim_a; ++i) {
    for (int k = 0; k <= i; ++k) {
      std::complex<double> acc(0.0, 0.0);
      for (int j = 0; j < bip.dim_b; ++j) {
        acc += a[static_cast<Eigen::Index>(i) * bip.dim_b + j] *
               std::conj(a[static_cast<Eigen::Index>(k) * bip.dim_b + j]);
      }
      rho(i, k) = acc;
      rho(k, i) = std::conj(acc);
    }
  }
  return HermitianMatrix(std::move(rho));
}

Spectrum hermitian_eigenvalues(const HermitianMatrix& h) {
  const double residual = h.hermiticity_residual();
  if (residual > 1e-8) {
    throw NotHermitian("hermitian_eigenvalues: symmetry residual " +
                       std::to_string(residual) + " exceeds 1e-8");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.entries(),
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian_eigenvalues: eigensolver did not converge");
  }
  // Eigen returns ascending order.
  Spectrum s;
  s.eigenvalues = solver.eigenvalues().reverse();
  return s;
}

double von_neumann_entropy(const Spectrum& s) {
  double entropy = 0.0;
  for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
    double lambda = s.eigenvalues[k];
    if (lambda < -1e-12) {
      throw InvalidSpectrum("von_neumann_entropy: eigenvalue " +
                            std::to_string(lambda) + " below -1e-12");
    }
    if (lambda <= 0.0) continue;             // 0 log 0 = 0; clip tiny negatives
    if (lambda >= 1.0 - 1e-12) continue;     // 1 log 1 = 0; absorb round-off at the top
    entropy -= lambda * std::log(lambda);
  }
  return entropy;
}

double entanglement(const PureState& psi, const Bipartition& bip) {
  return von_neumann_entropy(hermitian_eigenvalues(reduced_density(psi, bip)));
}

Eigen::VectorXd schmidt_coefficients(const PureState& psi, const Bipartition& bip) {
  const Spectrum s = hermitian_eigenvalues(reduced_density(psi, bip));
  Eigen::VectorXd coeffs(s.eigenvalues.size());
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    coeffs[k] = std::sqrt(std::max(0.0, s.eigenvalues[k]));
  }
  return coeffs;
}

}  // namespace fsgeo
