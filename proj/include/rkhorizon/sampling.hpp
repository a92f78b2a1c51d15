#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rkhorizon/linalg.hpp"

namespace rkhorizon {

/// Deterministic 64-bit-seedable generator. mt19937_64 is fully specified
/// by the standard, and the uniform/gaussian mappings below are implemented
/// here rather than through std distributions, so identical seeds replay
/// identical streams everywhere.
class RngState {
 public:
  explicit RngState(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1), 53-bit resolution.
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; the second variate of each pair is
  /// cached, so calls alternate between two and zero uniform draws.
  double next_gaussian();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Row-selection distribution with probability ||a_i||^2 / ||A||_F^2.
/// Zero rows are excluded; cumulative holds partial sums of the squared
/// norms of the active rows only.
struct RowDistribution {
  Vector cumulative;
  double total = 0.0;
  std::vector<std::size_t> active_rows;
};

/// Throws AllZeroMatrix when every row is zero.
RowDistribution build_row_distribution(const DenseMatrix& a);

/// Draws exactly one uniform variate u in [0, total) and inverts the
/// cumulative sums by binary search.
std::size_t sample_row(const RowDistribution& dist, RngState& rng);

}  // namespace rkhorizon
