#pragma once

#include <Eigen/Dense>

#include "fsgeo/errors.hpp"
#include "fsgeo/state_space.hpp"

namespace fsgeo {

/// Square complex matrix expected to be Hermitian. Squareness is enforced at
/// construction; the Hermiticity residual is checked by the eigensolver.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Eigen::MatrixXcd entries);

  const Eigen::MatrixXcd& entries() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

  /// max_ij |M - M^dagger|.
  double hermiticity_residual() const;

 private:
  Eigen::MatrixXcd m_;
};

/// Real eigenvalues in descending order.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
};

/// rho_A = Tr_B |psi><psi|, contracting the B factor of the composite index
/// i * dim_b + j. Result is Hermitian, unit trace, positive semidefinite.
HermitianMatrix reduced_density(const PureState& psi, const Bipartition& bip);

/// Descending eigenvalues. Throws NotHermitian when the symmetry residual
/// exceeds 1e-8.
Spectrum hermitian_eigenvalues(const HermitianMatrix& h);

/// -sum lambda log(lambda), natural log, 0 log 0 := 0. Eigenvalues within
/// 1e-12 of 0 or 1 contribute exactly zero (probability round-off at either
/// end of [0, 1]); anything below -1e-12 throws InvalidSpectrum.
double von_neumann_entropy(const Spectrum& s);

/// Bipartite entanglement entropy E([psi]) = S(rho_A), in nats. Invariant
/// under local unitaries and global phase.
double entanglement(const PureState& psi, const Bipartition& bip);

/// Descending nonnegative Schmidt coefficients; their squares are the
/// spectrum of rho_A and sum to 1.
Eigen::VectorXd schmidt_coefficients(const PureState& psi, const Bipartition& bip);

}  // namespace fsgeo
