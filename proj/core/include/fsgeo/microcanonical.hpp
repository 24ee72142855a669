#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fsgeo/chart_geometry.hpp"
#include "fsgeo/entanglement.hpp"
#include "fsgeo/state_space.hpp"

namespace fsgeo {

/// Histogram binning request. Explicit edges win over bin_count; bin_count 0
/// selects the Freedman-Diaconis rule. When a support interval is given the
/// bins span it (instead of the sample range) and the outermost bins are
/// flagged as boundary bins.
struct BinningSpec {
  int bin_count = 0;
  std::vector<double> edges;
  std::optional<std::pair<double, double>> support;
};

/// Binned density-of-states estimate. Monte Carlo estimates integrate to 1
/// (probability-density convention); quadrature-built curves carry the raw
/// level-set volumes instead, which differ only by the constant absorbed into
/// the entropy offset.
struct OmegaEstimate {
  std::vector<double> bin_edges;         // size bins()+1
  std::vector<double> density;
  std::vector<double> std_error;         // sqrt(p(1-p)/N)/width per bin; 0 for quadrature
  std::vector<std::int64_t> counts;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  bool lo_boundary = false;              // first/last bin touches the declared support
  bool hi_boundary = false;
  int n_qubits = 0;                      // spin-chain metadata; 0 when not applicable
  int block_len = 0;

  std::size_t bins() const noexcept { return density.size(); }
  double bin_center(std::size_t k) const { return 0.5 * (bin_edges[k] + bin_edges[k + 1]); }
  double bin_width(std::size_t k) const { return bin_edges[k + 1] - bin_edges[k]; }
};

/// log-density curve with central-difference slopes. Bins with zero density
/// are absent (nullopt), never -inf; a missing neighbor leaves the slope
/// absent as well.
struct SGeoCurve {
  std::vector<double> e_centers;
  std::vector<std::optional<double>> s_geo;
  std::vector<std::optional<double>> ds_de;
};

/// n iid entanglement values of Haar states for the given bipartition.
/// Sample i is a pure function of (sampler.master_seed, sampler.counter + i),
/// so any worker count yields a bit-identical vector.
std::vector<double> sample_entanglement(const Bipartition& bip, std::int64_t n,
                                        const SeededSampler& sampler,
                                        int n_threads = 1);

/// Normalized histogram density with per-bin standard errors.
/// Throws EmptyInput / DegenerateSamples.
OmegaEstimate estimate_omega(std::span<const double> samples,
                             const BinningSpec& binning = {},
                             std::uint64_t seed = 0);

/// S_geo = log(density) at bin centers plus its finite-difference slope.
/// Requires at least three nonempty bins (TooFewBins otherwise).
SGeoCurve s_geo_curve(const OmegaEstimate& omega);

/// Two-coordinate chart whose scalar field depends on coordinate 0 only; the
/// level sets are the closed coordinate-1 orbits. level_bracket is a
/// coordinate-0 interval on which the field is strictly monotone.
struct ReducedFamily {
  Chart chart;
  ScalarField field;
  std::pair<double, double> level_bracket;
  double orbit_start = 0.0;
  double orbit_period = 2.0 * std::numbers::pi;
};

struct QuadratureOptions {
  double h1 = kDefaultStep;
  double h2 = kDefaultOuterStep;
  double epsilon_grad = kDefaultEpsilonGrad;
  double level_tol = 1e-12;
};

/// Coordinate-0 value whose level set carries field value e, by bisection on
/// the family's monotone bracket. Throws OutOfRange when e is not attained.
double level_coordinate(const ReducedFamily& family, double e,
                        const QuadratureOptions& opts = {});

/// omega(e) = integral over the level orbit of d(sigma_FS) / ||grad E||, by
/// the periodic trapezoid rule with n_phi nodes.
double omega_quadrature_reduced(const ReducedFamily& family, double e, int n_phi,
                                const QuadratureOptions& opts = {});

/// Microcanonical average of the Weingarten trace over the level orbit:
/// (1/omega) * integral of div(xi) d(sigma_FS)/||grad E||.
double average_trace_w(const ReducedFamily& family, double e, int n_phi,
                       const QuadratureOptions& opts = {});

/// Quadrature omega evaluated at the centers of the given bin edges, packed
/// as an OmegaEstimate (raw volumes, zero statistical error).
OmegaEstimate omega_quadrature_curve(const ReducedFamily& family,
                                     std::span<const double> e_edges, int n_phi,
                                     const QuadratureOptions& opts = {});

inline constexpr int kMaxChainQubits = 12;  // 2^12 = 4096 amplitudes, desk scale

/// Haar-state entanglement histogram for a chain of n_qubits spins cut after
/// block_len sites: bipartition (2^block_len, 2^(n_qubits - block_len)).
/// Throws TooLarge beyond kMaxChainQubits.
OmegaEstimate spin_chain_scan(int n_qubits, int block_len, std::int64_t n,
                              const SeededSampler& sampler,
                              const BinningSpec& binning = {}, int n_threads = 1);

}  // namespace fsgeo
