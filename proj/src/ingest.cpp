#include "rkhorizon/ingest.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "rkhorizon/errors.hpp"
#include "rkhorizon/solver.hpp"

namespace rkhorizon {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view tok, std::size_t line_no,
                    std::string_view line) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() ||
      !std::isfinite(value)) {
    throw MalformedLine(line_no, "line " + std::to_string(line_no) +
                                     ": bad number '" + std::string(tok) +
                                     "' in: " + std::string(line));
  }
  return value;
}

std::size_t parse_index(std::string_view tok, std::size_t line_no,
                        std::string_view line) {
  std::size_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || value == 0) {
    throw MalformedLine(line_no, "line " + std::to_string(line_no) +
                                     ": bad feature index '" +
                                     std::string(tok) +
                                     "' in: " + std::string(line));
  }
  return value;
}

struct SparseRow {
  double label = 0.0;
  std::vector<std::pair<std::size_t, double>> features;  // 1-based indices
};

}  // namespace

Dataset parse_libsvm_text(std::string_view text, const ParseOptions& opts,
                          std::string name) {
  std::vector<SparseRow> rows;
  std::size_t max_index = 0;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (opts.max_rows && rows.size() >= *opts.max_rows) break;

    SparseRow row;
    // Tokenize on whitespace runs; first token is the label.
    std::size_t i = 0;
    bool have_label = false;
    std::size_t prev_index = 0;
    while (i < line.size()) {
      while (i < line.size() && is_space(line[i])) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && !is_space(line[j])) ++j;
      const std::string_view tok = line.substr(i, j - i);
      i = j;

      if (!have_label) {
        row.label = parse_double(tok, line_no, raw);
        have_label = true;
        continue;
      }
      const std::size_t colon = tok.find(':');
      if (colon == std::string_view::npos || colon == 0 ||
          colon + 1 >= tok.size()) {
        throw MalformedLine(line_no, "line " + std::to_string(line_no) +
                                         ": expected index:value, got '" +
                                         std::string(tok) +
                                         "' in: " + std::string(raw));
      }
      const std::size_t index =
          parse_index(tok.substr(0, colon), line_no, raw);
      const double value = parse_double(tok.substr(colon + 1), line_no, raw);
      if (index <= prev_index) {
        throw NonIncreasingIndex(
            line_no, "line " + std::to_string(line_no) +
                         ": feature indices must be strictly increasing");
      }
      prev_index = index;
      max_index = std::max(max_index, index);
      row.features.emplace_back(index, value);
    }
    rows.push_back(std::move(row));
  }

  if (rows.empty()) {
    throw EmptyFile("parse_libsvm: no data lines");
  }

  std::size_t cols = max_index;
  if (opts.expected_dim) cols = std::max(cols, *opts.expected_dim);
  if (cols == 0) cols = 1;  // all rows featureless; keep a single zero column

  if (rows.size() * cols > opts.dense_budget) {
    throw DenseBudgetExceeded(
        "parse_libsvm: densified size " + std::to_string(rows.size()) + " x " +
        std::to_string(cols) + " exceeds budget " +
        std::to_string(opts.dense_budget));
  }

  Dataset ds;
  ds.name = std::move(name);
  ds.a = DenseMatrix(rows.size(), cols);
  ds.b = Vector(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    ds.b[r] = rows[r].label;
    for (const auto& [index, value] : rows[r].features) {
      ds.a(r, index - 1) = value;
    }
  }
  return ds;
}

Dataset parse_libsvm(const std::string& path, const ParseOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("parse_libsvm: cannot open " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  Dataset ds = parse_libsvm_text(buffer.str(), opts,
                                 std::filesystem::path(path).stem().string());
  ds.source_path = path;
  return ds;
}

namespace {

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::string to_libsvm_text(const Dataset& ds) {
  std::string out;
  for (std::size_t r = 0; r < ds.a.rows(); ++r) {
    out += shortest(ds.b[r]);
    auto row = ds.a.row(r);
    for (std::size_t c = 0; c < ds.a.cols(); ++c) {
      if (row[c] == 0.0) continue;
      out += ' ';
      out += std::to_string(c + 1);
      out += ':';
      out += shortest(row[c]);
    }
    out += '\n';
  }
  return out;
}

DatasetSummary summarize(const Dataset& ds) {
  LinearSystem sys(ds.a, ds.b);
  const SvdFactors& f = sys.svd();
  const Vector x_ls = min_norm_least_squares(f, sys.rhs());
  const Vector residual = multiply(sys.matrix(), x_ls) - sys.rhs();

  DatasetSummary s;
  s.rows = ds.a.rows();
  s.cols = ds.a.cols();
  s.rank = f.rank;
  s.sigma_min = f.sigma_min;
  s.frob_norm = std::sqrt(f.frob_sq);
  s.contraction_ratio = f.frob_sq / (f.sigma_min * f.sigma_min);
  s.ls_residual = norm(residual);
  s.smallest_ball_radius = s.ls_residual / f.sigma_min;
  return s;
}

std::string format_summary(const Dataset& ds, const DatasetSummary& s) {
  std::ostringstream out;
  out << "dataset: " << (ds.name.empty() ? "(unnamed)" : ds.name) << "\n";
  if (!ds.source_path.empty()) out << "source: " << ds.source_path << "\n";
  out << "samples (m): " << s.rows << "\n"
      << "features (n): " << s.cols << "\n"
      << "numerical rank: " << s.rank << "\n"
      << "sigma_min: " << shortest(s.sigma_min) << "\n"
      << "frobenius norm: " << shortest(s.frob_norm) << "\n"
      << "contraction ratio R: " << shortest(s.contraction_ratio) << "\n"
      << "least squares residual: " << shortest(s.ls_residual) << "\n"
      << "smallest ball radius: " << shortest(s.smallest_ball_radius) << "\n";
  return out.str();
}

}  // namespace rkhorizon
