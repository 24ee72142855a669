#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "fsgeo/errors.hpp"
#include "fsgeo/rng.hpp"

namespace fsgeo {

/// Normalized representative of a ray in a finite-dimensional Hilbert space.
/// Construction rejects vectors whose norm deviates from 1 by more than 1e-12;
/// use normalize() to build one from an arbitrary nonzero vector.
class PureState {
 public:
  explicit PureState(Eigen::VectorXcd amplitudes);

  const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
  Eigen::Index dim() const noexcept { return amps_.size(); }

 private:
  Eigen::VectorXcd amps_;
};

/// Tensor factorization H = H_A (x) H_B with dimensions (dim_a, dim_b).
/// Composite basis index convention: i * dim_b + j.
struct Bipartition {
  int dim_a = 1;
  int dim_b = 1;

  Bipartition(int a, int b);
  int dim() const noexcept { return dim_a * dim_b; }
};

/// v / ||v||. Throws ZeroVector when ||v|| < 1e-300.
PureState normalize(const Eigen::VectorXcd& v);

/// Haar-distributed pure state: normalized vector of iid standard complex
/// Gaussians drawn from the sampler's counter-keyed stream `sample_index`.
PureState haar_sample_at(Eigen::Index dim, const SeededSampler& sampler,
                         std::uint64_t sample_index);

/// Convenience form advancing the sampler's own counter.
PureState haar_sample(Eigen::Index dim, SeededSampler& sampler);

/// <a|b>, conjugate-linear in the first argument. Throws DimMismatch.
std::complex<double> overlap(const PureState& a, const PureState& b);

/// Fubini-Study geodesic distance, 2*acos(|<a|b>|). With this normalization a
/// single qubit lives on the unit round Bloch sphere and the distance equals
/// the great-circle angle.
double fs_distance(const PureState& a, const PureState& b);

}  // namespace fsgeo
