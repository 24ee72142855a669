// fsgeo: Fubini-Study geometry of bipartite entanglement.
//
// Subcommands:
//   sample-omega        Haar-sample entanglement values, histogram omega(e)
//   two-qubit-analytic  closed-form curves for the two-qubit Schmidt family
//   verify-identity     check dS_geo/de == <Tr W>_e on the Schmidt family
//   spin-chain          omega(e) scans for qubit chains, optional block sweep
//
// Exit codes: 0 success, 2 usage error, 3 numerical failure, 4 tolerance failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fsgeo/analytic_families.hpp"
#include "fsgeo/entanglement.hpp"
#include "fsgeo/microcanonical.hpp"
#include "fsgeo/state_space.hpp"
#include "run_io.hpp"

#ifndef FSGEO_VERSION
#define FSGEO_VERSION "0.0.0"
#endif

namespace {

using namespace fsgeo;
using cli::CsvRow;
using cli::format_double;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitTolerance = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ToleranceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

void write_omega_csv(const std::filesystem::path& path, const OmegaEstimate& est) {
  std::vector<CsvRow> rows;
  rows.reserve(est.bins());
  for (std::size_t k = 0; k < est.bins(); ++k) {
    rows.push_back({format_double(est.bin_edges[k]), format_double(est.bin_edges[k + 1]),
                    format_double(est.density[k]), format_double(est.std_error[k]),
                    std::to_string(est.counts[k])});
  }
  cli::write_csv_atomic(path, {"e_lo", "e_hi", "density", "std_error", "count"}, rows);
}

void write_sgeo_csv(const std::filesystem::path& path, const SGeoCurve& curve) {
  std::vector<CsvRow> rows;
  rows.reserve(curve.e_centers.size());
  for (std::size_t k = 0; k < curve.e_centers.size(); ++k) {
    rows.push_back({format_double(curve.e_centers[k]),
                    curve.s_geo[k] ? format_double(*curve.s_geo[k]) : "",
                    curve.ds_de[k] ? format_double(*curve.ds_de[k]) : ""});
  }
  cli::write_csv_atomic(path, {"e_center", "s_geo", "ds_de"}, rows);
}

double sample_mean(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

// ---------------------------------------------------------------- sample-omega

struct SampleOmegaOpts {
  int da = 0, db = 0;
  int n_qubits = 0, block = 0;
  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
  int bins = 0;
  std::string out = ".";
};

Bipartition resolve_bipartition(const SampleOmegaOpts& o) {
  const bool pair_ab = o.da > 0 || o.db > 0;
  const bool pair_chain = o.n_qubits > 0 || o.block > 0;
  if (pair_ab == pair_chain) {
    throw UsageError("give either --da/--db or --n-qubits/--block");
  }
  if (pair_ab) {
    if (o.da < 1 || o.db < 1) throw UsageError("--da and --db must both be positive");
    return Bipartition(o.da, o.db);
  }
  if (o.block < 1 || o.block >= o.n_qubits) {
    throw UsageError("--block must satisfy 1 <= block < n-qubits");
  }
  if (o.n_qubits > kMaxChainQubits) {
    throw TooLarge("sample-omega: --n-qubits beyond the desk-scale cap of " +
                   std::to_string(kMaxChainQubits));
  }
  return Bipartition(1 << o.block, 1 << (o.n_qubits - o.block));
}

int run_sample_omega(const SampleOmegaOpts& o) {
  Timer timer;
  const Bipartition bip = resolve_bipartition(o);
  const std::int64_t dim_product = static_cast<std::int64_t>(bip.dim_a) * bip.dim_b;
  if (dim_product > 4096) {
    throw TooLarge("sample-omega: Hilbert dimension " + std::to_string(dim_product) +
                   " beyond the desk-scale cap of 4096");
  }

  const SeededSampler sampler{o.seed, 0};
  const std::vector<double> samples =
      sample_entanglement(bip, o.samples, sampler, cli::worker_count());

  BinningSpec spec;
  spec.bin_count = o.bins;
  const int d_min = std::min(bip.dim_a, bip.dim_b);
  if (d_min > 1) spec.support = {{0.0, std::log(static_cast<double>(d_min))}};
  const OmegaEstimate est = estimate_omega(samples, spec, o.seed);

  const std::filesystem::path out_dir(o.out);
  std::filesystem::create_directories(out_dir);
  write_omega_csv(out_dir / "omega.csv", est);

  cli::RunManifest manifest;
  manifest.command = "sample-omega";
  manifest.parameters = {{"da", std::to_string(bip.dim_a)},
                         {"db", std::to_string(bip.dim_b)},
                         {"samples", std::to_string(o.samples)},
                         {"seed", std::to_string(o.seed)},
                         {"bins", std::to_string(o.bins)},
                         {"out", o.out}};
  manifest.seed = o.seed;
  manifest.n_samples = o.samples;
  manifest.version = FSGEO_VERSION;
  manifest.wall_time_s = timer.seconds();
  cli::write_manifest_atomic(out_dir / "manifest.json", manifest);

  std::cout << "sample-omega: " << o.samples << " samples, bipartition (" << bip.dim_a
            << ", " << bip.dim_b << "), " << est.bins() << " bins, mean e = "
            << format_double(sample_mean(samples)) << "\n"
            << "wrote " << (out_dir / "omega.csv").string() << " and manifest.json\n";
  return 0;
}

// --------------------------------------------------------- two-qubit-analytic

struct AnalyticOpts {
  double theta_min = 0.05;
  double theta_max = 0.78;
  int steps = 200;
  std::string out = ".";
};

int run_two_qubit_analytic(const AnalyticOpts& o) {
  Timer timer;
  constexpr double quarter_pi = std::numbers::pi / 4.0;
  if (!(o.theta_min > 0.0 && o.theta_min < o.theta_max && o.theta_max < quarter_pi)) {
    throw OutOfRange("two-qubit-analytic: grid must satisfy 0 < theta-min < theta-max < pi/4");
  }
  if (o.steps < 2) throw UsageError("--steps must be >= 2");

  std::vector<CsvRow> rows;
  rows.reserve(static_cast<std::size_t>(o.steps));
  for (int i = 0; i < o.steps; ++i) {
    const double theta =
        o.theta_min + (o.theta_max - o.theta_min) * static_cast<double>(i) /
                          static_cast<double>(o.steps - 1);
    rows.push_back({format_double(theta), format_double(two_qubit::e_of_theta(theta)),
                    format_double(two_qubit::de_dtheta(theta)),
                    format_double(two_qubit::trace_w(theta)),
                    format_double(two_qubit::omega_reduced(theta)),
                    format_double(two_qubit::s_geo_reduced(theta)),
                    format_double(two_qubit::ds_geo_de(theta))});
  }

  const std::filesystem::path out_dir(o.out);
  std::filesystem::create_directories(out_dir);
  cli::write_csv_atomic(out_dir / "analytic.csv",
                        {"theta", "e", "de_dtheta", "trace_w", "omega", "s_geo",
                         "ds_geo_de"},
                        rows);

  cli::RunManifest manifest;
  manifest.command = "two-qubit-analytic";
  manifest.parameters = {{"theta_min", format_double(o.theta_min)},
                         {"theta_max", format_double(o.theta_max)},
                         {"steps", std::to_string(o.steps)},
                         {"out", o.out}};
  manifest.version = FSGEO_VERSION;
  manifest.wall_time_s = timer.seconds();
  cli::write_manifest_atomic(out_dir / "manifest.json", manifest);

  std::cout << "two-qubit-analytic: " << o.steps << " rows on theta in ["
            << format_double(o.theta_min) << ", " << format_double(o.theta_max)
            << "], wrote " << (out_dir / "analytic.csv").string() << "\n";
  return 0;
}

// ------------------------------------------------------------ verify-identity

struct VerifyOpts {
  std::string theta_grid;  // comma-separated; empty = default grid
  double tolerance = 2e-3;
  int quadrature_points = 64;
  std::string out = ".";
};

std::vector<double> parse_theta_grid(const std::string& text) {
  if (text.empty()) {
    std::vector<double> grid;
    constexpr int n = 22;
    for (int i = 0; i < n; ++i) {
      grid.push_back(0.2 + (0.73 - 0.2) * static_cast<double>(i) / (n - 1));
    }
    return grid;
  }
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      grid.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("--theta-grid: cannot parse '" + item + "' as a number");
    }
  }
  if (grid.empty()) throw UsageError("--theta-grid: empty grid");
  return grid;
}

int run_verify_identity(const VerifyOpts& o) {
  Timer timer;
  constexpr double quarter_pi = std::numbers::pi / 4.0;
  const std::vector<double> grid = parse_theta_grid(o.theta_grid);
  if (!(o.tolerance > 0.0)) throw UsageError("--tolerance must be positive");
  if (o.quadrature_points < 2) throw UsageError("--quadrature-points must be >= 2");

  const ReducedFamily family = two_qubit::reduced_family();
  const Chart chart = two_qubit::schmidt_chart();
  const ScalarField field = two_qubit::entanglement_field();
  const QuadratureOptions qopts;
  // The divergence stencil must stay clear of the critical angle pi/4 and of
  // the product-state endpoint.
  const double guard = qopts.h2 + 2.0 * qopts.h1;

  std::vector<CsvRow> rows;
  int computed = 0, failed = 0, skipped = 0;
  double worst = 0.0;

  for (const double theta : grid) {
    std::string status = "ok";
    double e = 0.0, div_numeric = 0.0, tr_analytic = 0.0, avg_quad = 0.0,
           ds_de_quad = 0.0, rel = 0.0;
    try {
      if (!(theta > guard && theta < quarter_pi - guard)) {
        throw SingularPoint("stencil reaches a singular angle");
      }
      e = two_qubit::e_of_theta(theta);
      tr_analytic = two_qubit::trace_w(theta);

      Eigen::VectorXd x(2);
      x << theta, 0.0;
      div_numeric = divergence_xi(chart, x, field, qopts.h1, qopts.h2);
      avg_quad = average_trace_w(family, e, o.quadrature_points, qopts);

      // S_geo has a log-singular cusp at e = log 2; keep the derivative
      // stencil proportional to the distance from both range endpoints.
      const double de =
          std::min({1e-3, 0.05 * (std::numbers::ln2 - e), 0.05 * e});
      const double omega_hi =
          omega_quadrature_reduced(family, e + de, o.quadrature_points, qopts);
      const double omega_lo =
          omega_quadrature_reduced(family, e - de, o.quadrature_points, qopts);
      ds_de_quad = (std::log(omega_hi) - std::log(omega_lo)) / (2.0 * de);

      rel = std::max({std::abs(div_numeric - tr_analytic),
                      std::abs(avg_quad - tr_analytic),
                      std::abs(ds_de_quad - tr_analytic)}) /
            tr_analytic;
      worst = std::max(worst, rel);
      computed++;
      if (!(rel < o.tolerance)) {
        status = "fail";
        failed++;
      }
    } catch (const Error& err) {
      status = "singular";
      skipped++;
      std::cout << "theta=" << format_double(theta) << "  skipped: " << err.what()
                << "\n";
      rows.push_back({format_double(theta), "", "", "", "", "", "", status});
      continue;
    }
    std::cout << "theta=" << format_double(theta) << "  e=" << format_double(e)
              << "  div_xi=" << format_double(div_numeric)
              << "  trace_w=" << format_double(tr_analytic)
              << "  <TrW>_e=" << format_double(avg_quad)
              << "  dS/de=" << format_double(ds_de_quad)
              << "  rel_dev=" << format_double(rel) << "  " << status << "\n";
    rows.push_back({format_double(theta), format_double(e), format_double(div_numeric),
                    format_double(tr_analytic), format_double(avg_quad),
                    format_double(ds_de_quad), format_double(rel), status});
  }

  const std::filesystem::path out_dir(o.out);
  std::filesystem::create_directories(out_dir);
  cli::write_csv_atomic(out_dir / "identity.csv",
                        {"theta", "e", "div_xi_numeric", "trace_w_analytic",
                         "avg_trace_w_quad", "ds_de_quad", "max_rel_dev", "status"},
                        rows);

  cli::RunManifest manifest;
  manifest.command = "verify-identity";
  manifest.parameters = {{"theta_grid", o.theta_grid.empty() ? "default" : o.theta_grid},
                         {"tolerance", format_double(o.tolerance)},
                         {"quadrature_points", std::to_string(o.quadrature_points)},
                         {"out", o.out}};
  manifest.version = FSGEO_VERSION;
  manifest.wall_time_s = timer.seconds();
  cli::write_manifest_atomic(out_dir / "manifest.json", manifest);

  std::cout << "verify-identity: " << computed << " rows computed, " << skipped
            << " skipped as singular; max relative deviation "
            << format_double(worst) << " against tolerance "
            << format_double(o.tolerance) << "\n";
  if (computed == 0) {
    throw Error("verify-identity: no computable rows in the grid");
  }
  if (failed > 0) {
    throw ToleranceFailure("verify-identity: " + std::to_string(failed) +
                           " rows beyond tolerance");
  }
  return 0;
}

// ----------------------------------------------------------------- spin-chain

struct SpinChainOpts {
  int n_qubits = 0;
  int block = 0;
  bool block_sweep = false;
  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
  int bins = 0;
  std::string out = ".";
};

int run_spin_chain(const SpinChainOpts& o) {
  Timer timer;
  if (o.n_qubits < 2) throw UsageError("--n-qubits must be >= 2");
  if (o.n_qubits > kMaxChainQubits) {
    throw TooLarge("spin-chain: " + std::to_string(o.n_qubits) +
                   " qubits beyond the desk-scale cap of " +
                   std::to_string(kMaxChainQubits));
  }
  std::vector<int> blocks;
  if (o.block_sweep) {
    for (int l = 1; l <= o.n_qubits / 2; ++l) blocks.push_back(l);
  } else {
    if (o.block < 1 || o.block >= o.n_qubits) {
      throw UsageError("--block must satisfy 1 <= block < n-qubits (or use --block-sweep)");
    }
    blocks.push_back(o.block);
  }

  const std::filesystem::path out_dir(o.out);
  std::filesystem::create_directories(out_dir);
  const int workers = cli::worker_count();

  for (const int block : blocks) {
    const Bipartition bip(1 << block, 1 << (o.n_qubits - block));
    const SeededSampler sampler{o.seed, 0};
    const std::vector<double> samples =
        sample_entanglement(bip, o.samples, sampler, workers);

    BinningSpec spec;
    spec.bin_count = o.bins;
    spec.support = {{0.0, std::min(block, o.n_qubits - block) * std::numbers::ln2}};
    OmegaEstimate est = estimate_omega(samples, spec, o.seed);
    est.n_qubits = o.n_qubits;
    est.block_len = block;

    const std::string suffix = o.block_sweep ? "_l" + std::to_string(block) : "";
    write_omega_csv(out_dir / ("omega" + suffix + ".csv"), est);
    write_sgeo_csv(out_dir / ("sgeo" + suffix + ".csv"), s_geo_curve(est));

    std::cout << "spin-chain: N=" << o.n_qubits << " block=" << block << "  mean e = "
              << format_double(sample_mean(samples)) << " of max "
              << format_double(std::min(block, o.n_qubits - block) * std::numbers::ln2)
              << "\n";
  }

  cli::RunManifest manifest;
  manifest.command = "spin-chain";
  manifest.parameters = {{"n_qubits", std::to_string(o.n_qubits)},
                         {"block", o.block_sweep ? "sweep" : std::to_string(o.block)},
                         {"samples", std::to_string(o.samples)},
                         {"seed", std::to_string(o.seed)},
                         {"bins", std::to_string(o.bins)},
                         {"out", o.out}};
  manifest.seed = o.seed;
  manifest.n_samples = o.samples;
  manifest.version = FSGEO_VERSION;
  manifest.wall_time_s = timer.seconds();
  cli::write_manifest_atomic(out_dir / "manifest.json", manifest);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fubini-Study geometry of bipartite entanglement", "fsgeo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", FSGEO_VERSION);

  SampleOmegaOpts so;
  auto* sample_cmd =
      app.add_subcommand("sample-omega", "Histogram omega(e) from Haar samples");
  sample_cmd->add_option("--da", so.da, "dimension of subsystem A");
  sample_cmd->add_option("--db", so.db, "dimension of subsystem B");
  sample_cmd->add_option("--n-qubits", so.n_qubits, "chain length (alternative to --da/--db)");
  sample_cmd->add_option("--block", so.block, "block length for the chain cut");
  sample_cmd->add_option("--samples", so.samples, "number of Haar samples");
  sample_cmd->add_option("--seed", so.seed, "master seed");
  sample_cmd->add_option("--bins", so.bins, "bin count (0 = Freedman-Diaconis)");
  sample_cmd->add_option("--out", so.out, "output directory");

  AnalyticOpts ao;
  auto* analytic_cmd = app.add_subcommand(
      "two-qubit-analytic", "Closed-form curves for the two-qubit Schmidt family");
  analytic_cmd->add_option("--theta-min", ao.theta_min, "grid start, in (0, pi/4)");
  analytic_cmd->add_option("--theta-max", ao.theta_max, "grid end, in (0, pi/4)");
  analytic_cmd->add_option("--steps", ao.steps, "number of grid rows");
  analytic_cmd->add_option("--out", ao.out, "output directory");

  VerifyOpts vo;
  auto* verify_cmd = app.add_subcommand(
      "verify-identity", "Check dS_geo/de against the Weingarten trace");
  verify_cmd->add_option("--theta-grid", vo.theta_grid,
                         "comma-separated theta values (default: 22 points on [0.2, 0.73])");
  verify_cmd->add_option("--tolerance", vo.tolerance, "relative tolerance");
  verify_cmd->add_option("--quadrature-points", vo.quadrature_points,
                         "orbit quadrature nodes");
  verify_cmd->add_option("--out", vo.out, "output directory");

  SpinChainOpts co;
  auto* chain_cmd =
      app.add_subcommand("spin-chain", "omega(e) scans for qubit chains");
  chain_cmd->add_option("--n-qubits", co.n_qubits, "chain length (<= 12)")->required();
  chain_cmd->add_option("--block", co.block, "block length of subsystem A");
  chain_cmd->add_flag("--block-sweep", co.block_sweep, "sweep block = 1 .. n/2");
  chain_cmd->add_option("--samples", co.samples, "samples per block length");
  chain_cmd->add_option("--seed", co.seed, "master seed");
  chain_cmd->add_option("--bins", co.bins, "bin count (0 = Freedman-Diaconis)");
  chain_cmd->add_option("--out", co.out, "output directory");

  try {
    app.parse(argc, argv);
    if (*sample_cmd) return run_sample_omega(so);
    if (*analytic_cmd) return run_two_qubit_analytic(ao);
    if (*verify_cmd) return run_verify_identity(vo);
    if (*chain_cmd) return run_spin_chain(co);
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ToleranceFailure& e) {
    std::cerr << e.what() << "\n";
    return kExitTolerance;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
