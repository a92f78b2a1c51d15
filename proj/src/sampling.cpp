#include "rkhorizon/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rkhorizon/errors.hpp"

namespace rkhorizon {

double RngState::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] keeps the log finite.
  const double u1 =
      static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  const double u2 = next_uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

RowDistribution build_row_distribution(const DenseMatrix& a) {
  RowDistribution dist;
  std::vector<double> sums;
  sums.reserve(a.rows());
  double total = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto row = a.row(i);
    double sq = 0.0;
    for (double v : row) sq += v * v;
    if (sq == 0.0) continue;
    total += sq;
    sums.push_back(total);
    dist.active_rows.push_back(i);
  }
  if (dist.active_rows.empty()) {
    throw AllZeroMatrix("build_row_distribution: all rows are zero");
  }
  dist.cumulative = Vector(std::move(sums));
  dist.total = total;
  return dist;
}

std::size_t sample_row(const RowDistribution& dist, RngState& rng) {
  const double u = rng.next_uniform() * dist.total;
  auto cum = dist.cumulative.entries();
  auto it = std::upper_bound(cum.begin(), cum.end(), u);
  std::size_t pos = static_cast<std::size_t>(it - cum.begin());
  if (pos >= dist.active_rows.size()) pos = dist.active_rows.size() - 1;
  return dist.active_rows[pos];
}

}  // namespace rkhorizon
