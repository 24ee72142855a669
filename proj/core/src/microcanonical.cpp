#include "fsgeo/microcanonical.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace fsgeo {

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

std::vector<double> build_edges(std::span<const double> samples,
                                const BinningSpec& binning) {
  if (!binning.edges.empty()) {
    if (binning.edges.size() < 2 ||
        !std::is_sorted(binning.edges.begin(), binning.edges.end()) ||
        std::adjacent_find(binning.edges.begin(), binning.edges.end()) !=
            binning.edges.end()) {
      throw OutOfRange("estimate_omega: explicit edges must be strictly increasing");
    }
    return binning.edges;
  }

  double lo, hi;
  if (binning.support) {
    lo = binning.support->first;
    hi = binning.support->second;
    if (!(hi > lo)) throw OutOfRange("estimate_omega: empty support interval");
  } else {
    const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
    lo = *mn;
    hi = *mx;
  }

  int bins = binning.bin_count;
  if (bins <= 0) {
    // Freedman-Diaconis width, with a sqrt(n) fallback when the IQR collapses.
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    const double n_cbrt = std::cbrt(static_cast<double>(samples.size()));
    double width = 2.0 * iqr / n_cbrt;
    if (!(width > 0.0)) {
      width = (hi - lo) / std::ceil(std::sqrt(static_cast<double>(samples.size())));
    }
    bins = static_cast<int>(std::clamp(std::ceil((hi - lo) / width), 1.0, 10000.0));
  }

  std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
  for (int k = 0; k <= bins; ++k) {
    edges[static_cast<std::size_t>(k)] =
        lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(bins);
  }
  return edges;
}

}  // namespace

std::vector<double> sample_entanglement(const Bipartition& bip, std::int64_t n,
                                        const SeededSampler& sampler,
                                        int n_threads) {
  if (n < 1) throw EmptyInput("sample_entanglement: n must be >= 1");
  std::vector<double> values(static_cast<std::size_t>(n));

  const auto worker = [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) {
      const PureState psi = haar_sample_at(
          bip.dim(), sampler, sampler.counter + static_cast<std::uint64_t>(i));
      values[static_cast<std::size_t>(i)] = entanglement(psi, bip);
    }
  };

  const int workers = std::clamp<int>(n_threads, 1, 256);
  if (workers == 1 || n < 2 * workers) {
    worker(0, n);
    return values;
  }

  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const std::int64_t chunk = (n + workers - 1) / workers;
  for (int t = 0; t < workers; ++t) {
    const std::int64_t begin = static_cast<std::int64_t>(t) * chunk;
    const std::int64_t end = std::min<std::int64_t>(begin + chunk, n);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        worker(begin, end);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return values;
}

OmegaEstimate estimate_omega(std::span<const double> samples,
                             const BinningSpec& binning, std::uint64_t seed) {
  if (samples.empty()) throw EmptyInput("estimate_omega: no samples");
  const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  if (!(*mx > *mn)) {
    throw DegenerateSamples("estimate_omega: all " + std::to_string(samples.size()) +
                            " samples equal " + std::to_string(*mn));
  }

  OmegaEstimate est;
  est.bin_edges = build_edges(samples, binning);
  const std::size_t bins = est.bin_edges.size() - 1;
  est.counts.assign(bins, 0);

  const double lo = est.bin_edges.front();
  const double hi = est.bin_edges.back();
  std::int64_t inside = 0;
  for (const double x : samples) {
    if (x < lo || x > hi) continue;  // outside an explicit range: dropped
    auto it = std::upper_bound(est.bin_edges.begin(), est.bin_edges.end(), x);
    std::size_t k = static_cast<std::size_t>(it - est.bin_edges.begin());
    k = (k == 0) ? 0 : k - 1;
    if (k >= bins) k = bins - 1;  // top edge closes the last bin
    est.counts[k]++;
    inside++;
  }
  if (inside == 0) {
    throw DegenerateSamples("estimate_omega: no samples inside the binning range");
  }

  est.density.resize(bins);
  est.std_error.resize(bins);
  const double n_in = static_cast<double>(inside);
  for (std::size_t k = 0; k < bins; ++k) {
    const double width = est.bin_width(k);
    const double p = static_cast<double>(est.counts[k]) / n_in;
    est.density[k] = p / width;
    est.std_error[k] = std::sqrt(p * (1.0 - p) / n_in) / width;
  }

  est.n_samples = static_cast<std::int64_t>(samples.size());
  est.seed = seed;
  if (binning.support) {
    est.lo_boundary = true;
    est.hi_boundary = true;
  }
  return est;
}

SGeoCurve s_geo_curve(const OmegaEstimate& omega) {
  const std::size_t bins = omega.bins();
  std::size_t nonempty = 0;
  for (std::size_t k = 0; k < bins; ++k) {
    if (omega.density[k] > 0.0) nonempty++;
  }
  if (nonempty < 3) {
    throw TooFewBins("s_geo_curve: " + std::to_string(nonempty) +
                     " nonempty bins, need at least 3");
  }

  SGeoCurve curve;
  curve.e_centers.resize(bins);
  curve.s_geo.assign(bins, std::nullopt);
  curve.ds_de.assign(bins, std::nullopt);
  for (std::size_t k = 0; k < bins; ++k) {
    curve.e_centers[k] = omega.bin_center(k);
    if (omega.density[k] > 0.0) curve.s_geo[k] = std::log(omega.density[k]);
  }

  for (std::size_t k = 0; k < bins; ++k) {
    if (!curve.s_geo[k]) continue;
    const bool at_left = (k == 0);
    const bool at_right = (k + 1 == bins);
    if (!at_left && !at_right) {
      if (curve.s_geo[k - 1] && curve.s_geo[k + 1]) {
        curve.ds_de[k] = (*curve.s_geo[k + 1] - *curve.s_geo[k - 1]) /
                         (curve.e_centers[k + 1] - curve.e_centers[k - 1]);
      }
    } else if (at_left && bins > 1 && curve.s_geo[1]) {
      curve.ds_de[k] =
          (*curve.s_geo[1] - *curve.s_geo[0]) / (curve.e_centers[1] - curve.e_centers[0]);
    } else if (at_right && bins > 1 && curve.s_geo[bins - 2]) {
      curve.ds_de[k] = (*curve.s_geo[bins - 1] - *curve.s_geo[bins - 2]) /
                       (curve.e_centers[bins - 1] - curve.e_centers[bins - 2]);
    }
  }
  return curve;
}

double level_coordinate(const ReducedFamily& family, double e,
                        const QuadratureOptions& opts) {
  const double phi = family.orbit_start + 0.5 * family.orbit_period;
  const auto value_at = [&](double t) {
    Eigen::VectorXd x(2);
    x << t, phi;
    return family.field(x);
  };

  double a = family.level_bracket.first;
  double b = family.level_bracket.second;
  double fa = value_at(a);
  double fb = value_at(b);
  if ((e - fa) * (e - fb) > 0.0) {
    throw OutOfRange("level_coordinate: level " + std::to_string(e) +
                     " outside the bracket range [" + std::to_string(std::min(fa, fb)) +
                     ", " + std::to_string(std::max(fa, fb)) + "]");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = value_at(mid);
    if (std::abs(fm - e) <= opts.level_tol || 0.5 * (b - a) < 1e-15) {
      return mid;
    }
    if ((fm - e) * (fa - e) > 0.0) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

namespace {

// Weight of one quadrature node on the level orbit: induced length density
// sqrt(sigma_11) divided by ||grad E||.
double orbit_weight(const ReducedFamily& family, const Eigen::VectorXd& x,
                    const QuadratureOptions& opts) {
  const MetricData metric = fs_metric(family.chart, x, opts.h1);
  const Eigen::VectorXd partials = field_partials(family.chart, family.field, x, opts.h1);
  const Eigen::MatrixXd g_inv = metric.inverse();
  const double norm_sq = partials.dot(g_inv * partials);
  if (norm_sq <= opts.epsilon_grad) {
    throw VanishingGradient("reduced quadrature: gradient vanishes on the orbit");
  }
  const double sigma11 =
      std::max(0.0, metric.g()(1, 1) - partials[1] * partials[1] / norm_sq);
  return std::sqrt(sigma11) / std::sqrt(norm_sq);
}

}  // namespace

double omega_quadrature_reduced(const ReducedFamily& family, double e, int n_phi,
                                const QuadratureOptions& opts) {
  if (n_phi < 2) throw OutOfRange("omega_quadrature_reduced: n_phi must be >= 2");
  const double t = level_coordinate(family, e, opts);
  const double dphi = family.orbit_period / n_phi;
  double acc = 0.0;
  Eigen::VectorXd x(2);
  for (int j = 0; j < n_phi; ++j) {
    x << t, family.orbit_start + j * dphi;
    acc += orbit_weight(family, x, opts);
  }
  return acc * dphi;
}

double average_trace_w(const ReducedFamily& family, double e, int n_phi,
                       const QuadratureOptions& opts) {
  if (n_phi < 2) throw OutOfRange("average_trace_w: n_phi must be >= 2");
  const double t = level_coordinate(family, e, opts);
  const double dphi = family.orbit_period / n_phi;
  double weighted = 0.0;
  double total = 0.0;
  Eigen::VectorXd x(2);
  for (int j = 0; j < n_phi; ++j) {
    x << t, family.orbit_start + j * dphi;
    const double w = orbit_weight(family, x, opts);
    const double div = divergence_xi(family.chart, x, family.field, opts.h1, opts.h2,
                                     opts.epsilon_grad);
    weighted += w * div;
    total += w;
  }
  return weighted / total;
}

OmegaEstimate omega_quadrature_curve(const ReducedFamily& family,
                                     std::span<const double> e_edges, int n_phi,
                                     const QuadratureOptions& opts) {
  if (e_edges.size() < 2) {
    throw OutOfRange("omega_quadrature_curve: need at least two edges");
  }
  OmegaEstimate est;
  est.bin_edges.assign(e_edges.begin(), e_edges.end());
  const std::size_t bins = est.bin_edges.size() - 1;
  est.counts.assign(bins, 0);
  est.std_error.assign(bins, 0.0);
  est.density.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    est.density[k] = omega_quadrature_reduced(family, est.bin_center(k), n_phi, opts);
  }
  return est;
}

OmegaEstimate spin_chain_scan(int n_qubits, int block_len, std::int64_t n,
                              const SeededSampler& sampler, const BinningSpec& binning,
                              int n_threads) {
  if (n_qubits > kMaxChainQubits) {
    throw TooLarge("spin_chain_scan: " + std::to_string(n_qubits) +
                   " qubits beyond the desk-scale cap of " +
                   std::to_string(kMaxChainQubits));
  }
  if (n_qubits < 2 || block_len < 1 || block_len >= n_qubits) {
    throw DimMismatch("spin_chain_scan: need 1 <= block_len < n_qubits");
  }
  const Bipartition bip(1 << block_len, 1 << (n_qubits - block_len));

  BinningSpec spec = binning;
  if (spec.edges.empty() && !spec.support) {
    const int smaller = std::min(block_len, n_qubits - block_len);
    spec.support = {0.0, smaller * std::numbers::ln2};
  }

  const std::vector<double> samples = sample_entanglement(bip, n, sampler, n_threads);
  OmegaEstimate est = estimate_omega(samples, spec, sampler.master_seed);
  est.n_qubits = n_qubits;
  est.block_len = block_len;
  return est;
}

}  // namespace fsgeo
