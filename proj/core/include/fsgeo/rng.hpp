#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace fsgeo {

/// splitmix64 finalizer: full-avalanche 64-bit mix.
inline std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Counter-keyed random stream. The whole stream is a pure function of
/// (master_seed, sample_index): two streams built from the same key yield
/// bit-identical values no matter which thread draws them or in what order
/// the streams are created.
class SampleRng {
 public:
  SampleRng(std::uint64_t master_seed, std::uint64_t sample_index) noexcept
      : state_(mix64(mix64(master_seed) ^ mix64(sample_index ^ 0xD1B54A32D192ED03ull))) {}

  std::uint64_t next_u64() noexcept {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in (0, 1]; safe under log().
  double next_unit_open() noexcept { return 1.0 - next_unit(); }

  /// Box-Muller pair of independent standard normals.
  std::pair<double, double> next_gaussian_pair() noexcept {
    const double u1 = next_unit_open();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

 private:
  std::uint64_t state_;
};

/// Value-type sampler: a master seed plus a running counter. Workers get
/// duplicates covering disjoint index ranges; stream_at(i) is pure, so the
/// aggregate sample set never depends on the parallel schedule.
struct SeededSampler {
  std::uint64_t master_seed = 0;
  std::uint64_t counter = 0;

  SampleRng stream_at(std::uint64_t sample_index) const noexcept {
    return SampleRng(master_seed, sample_index);
  }

  SampleRng next_stream() noexcept { return stream_at(counter++); }
};

}  // namespace fsgeo
