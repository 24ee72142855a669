#include "fsgeo/state_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fsgeo {

PureState::PureState(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() < 1) {
    throw DimMismatch("PureState: dimension must be >= 1");
  }
  const double norm = amps_.norm();
  if (std::abs(norm - 1.0) > 1e-12) {
    throw NotNormalized("PureState: vector norm " + std::to_string(norm) +
                        " deviates from 1 beyond 1e-12");
  }
}

Bipartition::Bipartition(int a, int b) : dim_a(a), dim_b(b) {
  if (a < 1 || b < 1) {
    throw DimMismatch("Bipartition: factor dimensions must be positive");
  }
}

PureState normalize(const Eigen::VectorXcd& v) {
  const double norm = v.norm();
  if (norm < 1e-300) {
    throw ZeroVector("normalize: input vector has zero norm");
  }
  return PureState(v / norm);
}

PureState haar_sample_at(Eigen::Index dim, const SeededSampler& sampler,
                         std::uint64_t sample_index) {
  if (dim < 1) {
    throw DimMismatch("haar_sample: dimension must be >= 1");
  }
  SampleRng rng = sampler.stream_at(sample_index);
  Eigen::VectorXcd z(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const auto [re, im] = rng.next_gaussian_pair();
    z[k] = std::complex<double>(re, im);
  }
  return normalize(z);
}

PureState haar_sample(Eigen::Index dim, SeededSampler& sampler) {
  return haar_sample_at(dim, sampler, sampler.counter++);
}

std::complex<double> overlap(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) {
    throw DimMismatch("overlap: states of dimension " + std::to_string(a.dim()) +
                      " and " + std::to_string(b.dim()));
  }
  return a.amplitudes().dot(b.amplitudes());
}

double fs_distance(const PureState& a, const PureState& b) {
  // |overlap| can exceed 1 by ~1e-16; clamp before acos.
  const double f = std::clamp(std::abs(overlap(a, b)), 0.0, 1.0);
  return 2.0 * std::acos(f);
}

}  // namespace fsgeo
