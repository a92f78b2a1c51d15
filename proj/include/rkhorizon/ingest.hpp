#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "rkhorizon/linalg.hpp"

namespace rkhorizon {

/// A LIBSVM dataset densified into (A, b): one sample per row, labels as
/// right-hand-side entries.
struct Dataset {
  DenseMatrix a;
  Vector b;
  std::string name;
  std::string source_path;
};

struct ParseOptions {
  std::optional<std::size_t> expected_dim;
  std::optional<std::size_t> max_rows;
  /// Refuse to densify beyond this many matrix entries.
  std::size_t dense_budget = 10'000'000;
};

/// Parses LIBSVM text: `<label> <index>:<value> ...` per line, 1-based
/// strictly increasing indices, '#' comment lines skipped. The feature
/// count is the maximum index seen or expected_dim, whichever is larger.
Dataset parse_libsvm_text(std::string_view text, const ParseOptions& opts = {},
                          std::string name = "");

Dataset parse_libsvm(const std::string& path, const ParseOptions& opts = {});

/// Serializes back to LIBSVM text, omitting zeros. Values are written with
/// shortest round-trip formatting, so parse(to_text(ds)) reproduces ds
/// exactly.
std::string to_libsvm_text(const Dataset& ds);

struct DatasetSummary {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 0;
  double sigma_min = 0.0;
  double frob_norm = 0.0;
  double contraction_ratio = 0.0;  // ||A||_F^2 / sigma_min^2
  double ls_residual = 0.0;        // ||A x_LS - b||
  double smallest_ball_radius = 0.0;
};

DatasetSummary summarize(const Dataset& ds);

std::string format_summary(const Dataset& ds, const DatasetSummary& s);

}  // namespace rkhorizon
