#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fsgeo/entanglement.hpp"
#include "fsgeo/state_space.hpp"
#include "oracles.hpp"

using namespace fsgeo;

namespace {

PureState product_basis(int da, int db, int i, int j) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(da) * db);
  v[static_cast<Eigen::Index>(i) * db + j] = 1.0;
  return PureState(std::move(v));
}

PureState schmidt_pair(double theta, double phi = 0.0) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v[0] = std::cos(theta);
  v[3] = std::polar(std::sin(theta), phi);
  return PureState(std::move(v));
}

}  // namespace

TEST_CASE("reduced_density on product and Schmidt states") {
  const Bipartition bip(2, 2);

  const HermitianMatrix rho00 = reduced_density(product_basis(2, 2, 0, 0), bip);
  CHECK(std::abs(rho00.entries()(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(rho00.entries()(1, 1)) < 1e-15);
  CHECK(std::abs(rho00.entries()(0, 1)) < 1e-15);

  const HermitianMatrix rho_bell =
      reduced_density(schmidt_pair(std::numbers::pi / 4.0), bip);
  CHECK(std::abs(rho_bell.entries()(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(rho_bell.entries()(1, 1) - 0.5) < 1e-15);
  CHECK(std::abs(rho_bell.entries()(0, 1)) < 1e-15);

  const double theta = 0.7;
  const HermitianMatrix rho = reduced_density(schmidt_pair(theta, 1.3), bip);
  CHECK(std::abs(rho.entries()(0, 0).real() - std::cos(theta) * std::cos(theta)) < 1e-14);
  CHECK(std::abs(rho.entries()(1, 1).real() - std::sin(theta) * std::sin(theta)) < 1e-14);

  SeededSampler sampler{5, 0};
  CHECK_THROWS_AS(reduced_density(haar_sample(6, sampler), bip), DimMismatch);
}

TEST_CASE("partial trace matches operator expectation values") {
  // <psi| (M (x) 1) |psi> == Tr(rho_A M) for random Hermitian M.
  std::mt19937_64 rng(17);
  SeededSampler sampler{17, 0};
  const Bipartition bip(3, 4);
  for (int rep = 0; rep < 10; ++rep) {
    const PureState psi = haar_sample(12, sampler);
    const Eigen::MatrixXcd m = oracle::random_hermitian(rng, 3);

    Eigen::MatrixXcd m_ext = Eigen::MatrixXcd::Zero(12, 12);
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) {
        for (int j = 0; j < 4; ++j) {
          m_ext(i * 4 + j, k * 4 + j) = m(i, k);
        }
      }
    }
    const std::complex<double> lhs =
        psi.amplitudes().dot(m_ext * psi.amplitudes());
    const std::complex<double> rhs =
        (reduced_density(psi, bip).entries() * m).trace();
    CHECK(std::abs(lhs - rhs) < 1e-10);

    CHECK(std::abs(reduced_density(psi, bip).entries().trace().real() - 1.0) < 1e-12);
  }
}

TEST_CASE("hermitian_eigenvalues: diagonal and projector cases") {
  Eigen::MatrixXcd d(2, 2);
  d << 0.9, 0.0, 0.0, 0.1;
  const Spectrum s = hermitian_eigenvalues(HermitianMatrix(d));
  CHECK(s.eigenvalues[0] == doctest::Approx(0.9).epsilon(1e-14));
  CHECK(s.eigenvalues[1] == doctest::Approx(0.1).epsilon(1e-14));

  Eigen::MatrixXcd p(2, 2);
  p << 0.5, 0.5, 0.5, 0.5;
  const Spectrum sp = hermitian_eigenvalues(HermitianMatrix(p));
  CHECK(std::abs(sp.eigenvalues[0] - 1.0) < 1e-12);
  CHECK(std::abs(sp.eigenvalues[1]) < 1e-12);
}

TEST_CASE("hermitian_eigenvalues agrees with the characteristic-polynomial oracle") {
  std::mt19937_64 rng(29);
  for (const int n : {2, 4, 8}) {
    for (int rep = 0; rep < 5; ++rep) {
      const Eigen::MatrixXcd h = oracle::random_hermitian(rng, n);
      const Spectrum s = hermitian_eigenvalues(HermitianMatrix(h));
      const std::vector<double> reference = oracle::charpoly_eigenvalues(h);
      REQUIRE(static_cast<int>(reference.size()) == n);
      for (int k = 0; k < n; ++k) {
        CHECK(std::abs(s.eigenvalues[k] - reference[static_cast<std::size_t>(k)]) <
              1e-8);
      }
    }
  }
}

TEST_CASE("hermitian_eigenvalues rejects asymmetric input") {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, std::complex<double>(0.0, 1e-6), 0.0, 1.0;
  CHECK_THROWS_AS(hermitian_eigenvalues(HermitianMatrix(m)), NotHermitian);
  CHECK_THROWS_AS(HermitianMatrix(Eigen::MatrixXcd::Zero(2, 3)), DimMismatch);
}

TEST_CASE("von_neumann_entropy conventions") {
  Spectrum s;
  s.eigenvalues = Eigen::Vector2d(1.0, 0.0);
  CHECK(von_neumann_entropy(s) == 0.0);

  s.eigenvalues = Eigen::Vector2d(0.5, 0.5);
  CHECK(von_neumann_entropy(s) == doctest::Approx(std::numbers::ln2).epsilon(1e-15));

  const double c2 = std::cos(std::numbers::pi / 8) * std::cos(std::numbers::pi / 8);
  s.eigenvalues = Eigen::Vector2d(c2, 1.0 - c2);
  CHECK(von_neumann_entropy(s) ==
        doctest::Approx(oracle::kEntropyAtPiOver8).epsilon(1e-12));

  // Round-off clipping at both ends of [0, 1].
  s.eigenvalues = Eigen::Vector2d(1.0 + 5e-13, -5e-13);
  CHECK(von_neumann_entropy(s) == 0.0);

  s.eigenvalues = Eigen::Vector2d(1.0, -1e-6);
  CHECK_THROWS_AS(von_neumann_entropy(s), InvalidSpectrum);
}

TEST_CASE("entanglement of product, Bell and phase-dressed states") {
  const Bipartition bip(2, 2);
  CHECK(entanglement(product_basis(2, 2, 0, 1), bip) == 0.0);

  CHECK(entanglement(schmidt_pair(std::numbers::pi / 4.0), bip) ==
        doctest::Approx(std::numbers::ln2).epsilon(1e-12));

  // The relative phase never enters the spectrum of rho_A.
  const double reference = entanglement(schmidt_pair(0.6, 0.0), bip);
  for (const double phi : {0.4, 1.9, 3.3, 5.8}) {
    CHECK(entanglement(schmidt_pair(0.6, phi), bip) ==
          doctest::Approx(reference).epsilon(1e-12));
  }
}

TEST_CASE("entanglement is invariant under local unitaries") {
  std::mt19937_64 rng(31);
  SeededSampler sampler{31, 0};
  const Bipartition bip(3, 5);
  for (int rep = 0; rep < 8; ++rep) {
    const PureState psi = haar_sample(15, sampler);
    const Eigen::MatrixXcd ua = oracle::random_unitary(rng, 3);
    const Eigen::MatrixXcd ub = oracle::random_unitary(rng, 5);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(15, 15);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 5; ++j)
          for (int l = 0; l < 5; ++l) u(i * 5 + j, k * 5 + l) = ua(i, k) * ub(j, l);
    const PureState rotated = normalize(u * psi.amplitudes());
    CHECK(std::abs(entanglement(rotated, bip) - entanglement(psi, bip)) < 1e-9);
  }
}

TEST_CASE("entanglement bounds and Schmidt symmetry") {
  SeededSampler sampler{37, 0};
  for (const auto& [da, db] : {std::pair{2, 8}, {4, 4}, {3, 7}}) {
    const Bipartition bip(da, db);
    for (int rep = 0; rep < 10; ++rep) {
      const PureState psi = haar_sample(da * db, sampler);
      const double e = entanglement(psi, bip);
      CHECK(e >= 0.0);
      CHECK(e <= std::log(static_cast<double>(std::min(da, db))) + 1e-12);

      // Swapping the factors preserves the Schmidt spectrum.
      Eigen::VectorXcd swapped(da * db);
      for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j)
          swapped[static_cast<Eigen::Index>(j) * da + i] =
              psi.amplitudes()[static_cast<Eigen::Index>(i) * db + j];
      CHECK(std::abs(entanglement(PureState(swapped), Bipartition(db, da)) - e) <
            1e-10);
    }
  }
}

TEST_CASE("schmidt_coefficients") {
  const Bipartition bip(2, 2);
  const Eigen::VectorXd bell =
      schmidt_coefficients(schmidt_pair(std::numbers::pi / 4.0), bip);
  CHECK(bell[0] == doctest::Approx(std::numbers::sqrt2 / 2.0).epsilon(1e-12));
  CHECK(bell[1] == doctest::Approx(std::numbers::sqrt2 / 2.0).epsilon(1e-12));

  const Eigen::VectorXd product = schmidt_coefficients(product_basis(2, 2, 0, 0), bip);
  CHECK(product[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(product[1]) < 1e-7);  // sqrt of a ~1e-15 eigenvalue

  SeededSampler sampler{41, 0};
  const PureState psi = haar_sample(8, sampler);
  const Eigen::VectorXd coeffs = schmidt_coefficients(psi, Bipartition(2, 4));
  CHECK(coeffs.squaredNorm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(coeffs[0] >= coeffs[1]);
}
