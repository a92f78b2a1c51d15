#include "rkhorizon/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rkhorizon/errors.hpp"

namespace rkhorizon {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t stream) {
  // SplitMix64 finalizer over disjoint stream offsets.
  std::uint64_t z = base + stream * 0x9E3779B97F4A7C15ULL +
                    0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

std::string mode_name(ReferenceMode mode) {
  switch (mode) {
    case ReferenceMode::random: return "random";
    case ReferenceMode::lstsq: return "lstsq";
    case ReferenceMode::singular_vector: return "singular_vector";
  }
  return "random";
}

ReferenceMode mode_from_name(const std::string& name) {
  if (name == "random") return ReferenceMode::random;
  if (name == "lstsq") return ReferenceMode::lstsq;
  if (name == "singular_vector") return ReferenceMode::singular_vector;
  throw std::invalid_argument("unknown reference mode: " + name);
}

std::string x0_name(X0Mode mode) {
  switch (mode) {
    case X0Mode::random: return "random";
    case X0Mode::zero: return "zero";
    case X0Mode::in_row_space: return "in_row_space";
  }
  return "random";
}

X0Mode x0_from_name(const std::string& name) {
  if (name == "random") return X0Mode::random;
  if (name == "zero") return X0Mode::zero;
  if (name == "in_row_space") return X0Mode::in_row_space;
  throw std::invalid_argument("unknown x0 mode: " + name);
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  const json& sys = j.at("system");
  const std::string type = sys.at("type").get<std::string>();
  if (type == "synthetic" || type == "homogeneous") {
    cfg.system.kind =
        type == "synthetic" ? SystemKind::synthetic : SystemKind::homogeneous;
    cfg.system.synthetic.m = sys.at("m").get<std::size_t>();
    cfg.system.synthetic.n = sys.at("n").get<std::size_t>();
    cfg.system.synthetic.r = sys.at("rank").get<std::size_t>();
    cfg.system.synthetic.beta = sys.value("beta", 0.0);
    cfg.system.synthetic.seed = sys.value("seed", std::uint64_t{0});
  } else if (type == "libsvm") {
    cfg.system.kind = SystemKind::libsvm;
    cfg.system.libsvm_path = sys.at("path").get<std::string>();
    if (sys.contains("expected_dim")) {
      cfg.system.libsvm_dim = sys.at("expected_dim").get<std::size_t>();
    }
    if (sys.contains("max_rows")) {
      cfg.system.libsvm_max_rows = sys.at("max_rows").get<std::size_t>();
    }
  } else {
    throw std::invalid_argument("unknown system type: " + type);
  }

  if (j.contains("reference")) {
    const json& ref = j.at("reference");
    cfg.reference_mode = mode_from_name(ref.at("mode").get<std::string>());
    cfg.singular_index = ref.value("index", std::size_t{0});
  }
  cfg.x0_mode = x0_from_name(j.value("x0_mode", std::string("random")));
  cfg.runs = j.value("runs", std::size_t{20});
  cfg.max_iters = j.value("max_iters", std::size_t{1000});
  if (j.contains("checkpoints") && j.at("checkpoints").is_array()) {
    cfg.checkpoints.use_default = false;
    cfg.checkpoints.explicit_values =
        j.at("checkpoints").get<std::vector<std::size_t>>();
  }
  cfg.base_seed = j.value("base_seed", std::uint64_t{0});
  cfg.track_singular_indices =
      j.value("track_singular_indices", std::vector<std::size_t>{});
  cfg.output_dir = j.value("output_dir", std::string());
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json sys;
  switch (cfg.system.kind) {
    case SystemKind::synthetic:
    case SystemKind::homogeneous:
      sys["type"] = cfg.system.kind == SystemKind::synthetic ? "synthetic"
                                                             : "homogeneous";
      sys["m"] = cfg.system.synthetic.m;
      sys["n"] = cfg.system.synthetic.n;
      sys["rank"] = cfg.system.synthetic.r;
      sys["beta"] = cfg.system.synthetic.beta;
      sys["seed"] = cfg.system.synthetic.seed;
      break;
    case SystemKind::libsvm:
      sys["type"] = "libsvm";
      sys["path"] = cfg.system.libsvm_path;
      if (cfg.system.libsvm_dim) sys["expected_dim"] = *cfg.system.libsvm_dim;
      if (cfg.system.libsvm_max_rows) {
        sys["max_rows"] = *cfg.system.libsvm_max_rows;
      }
      break;
  }
  json j;
  j["system"] = sys;
  j["reference"] = {{"mode", mode_name(cfg.reference_mode)},
                    {"index", cfg.singular_index}};
  j["x0_mode"] = x0_name(cfg.x0_mode);
  j["runs"] = cfg.runs;
  j["max_iters"] = cfg.max_iters;
  if (cfg.checkpoints.use_default) {
    j["checkpoints"] = "default";
  } else {
    j["checkpoints"] = cfg.checkpoints.explicit_values;
  }
  j["base_seed"] = cfg.base_seed;
  j["track_singular_indices"] = cfg.track_singular_indices;
  j["output_dir"] = cfg.output_dir;
  return j;
}

BuiltSystem build_system(const SystemSource& source) {
  switch (source.kind) {
    case SystemKind::synthetic: {
      DenseMatrix a = gen_low_rank_gaussian(source.synthetic);
      SvdFactors f = svd(a);
      Vector b = gen_rhs_with_residual(a, f, source.synthetic.beta,
                                       source.synthetic.seed + 1);
      json prov = {{"type", "synthetic"},
                   {"m", source.synthetic.m},
                   {"n", source.synthetic.n},
                   {"rank", source.synthetic.r},
                   {"beta", source.synthetic.beta},
                   {"seed", source.synthetic.seed},
                   {"rhs_seed", source.synthetic.seed + 1}};
      return {LinearSystem(std::move(a), std::move(b), std::move(f)),
              std::move(prov)};
    }
    case SystemKind::homogeneous: {
      DenseMatrix a = gen_low_rank_gaussian(source.synthetic);
      Vector b(a.rows());
      json prov = {{"type", "homogeneous"},
                   {"m", source.synthetic.m},
                   {"n", source.synthetic.n},
                   {"rank", source.synthetic.r},
                   {"seed", source.synthetic.seed}};
      return {LinearSystem(std::move(a), std::move(b)), std::move(prov)};
    }
    case SystemKind::libsvm: {
      ParseOptions opts;
      opts.expected_dim = source.libsvm_dim;
      opts.max_rows = source.libsvm_max_rows;
      Dataset ds = parse_libsvm(source.libsvm_path, opts);
      json prov = {{"type", "libsvm"},
                   {"path", source.libsvm_path},
                   {"name", ds.name},
                   {"rows", ds.a.rows()},
                   {"cols", ds.a.cols()}};
      return {LinearSystem(std::move(ds.a), std::move(ds.b)),
              std::move(prov)};
    }
  }
  throw std::logic_error("build_system: unreachable");
}

namespace {

Vector resolve_x0(const LinearSystem& sys, X0Mode mode, const Vector& raw) {
  switch (mode) {
    case X0Mode::random: return raw;
    case X0Mode::zero: return Vector(sys.cols());
    case X0Mode::in_row_space: return project_row_space(sys.svd(), raw);
  }
  return raw;
}

void append_row(std::string& csv, std::size_t iteration,
                const std::string& series, double value,
                std::optional<double> stderr_value,
                std::optional<std::size_t> run_count) {
  csv += std::to_string(iteration);
  csv += ',';
  csv += series;
  csv += ',';
  csv += format_double(value);
  csv += ',';
  if (stderr_value) csv += format_double(*stderr_value);
  csv += ',';
  if (run_count) csv += std::to_string(*run_count);
  csv += '\n';
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw WriteFailure("cannot open " + path.string() + " for writing");
  }
  out << content;
  if (!out) {
    throw WriteFailure("failed writing " + path.string());
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.runs < 1) {
    throw std::invalid_argument("run_experiment: runs must be >= 1");
  }
  BuiltSystem built = build_system(cfg.system);
  const LinearSystem& sys = built.sys;
  const SvdFactors& f = sys.svd();

  const std::uint64_t ref_seed = derive_stream_seed(cfg.base_seed, 1);
  const ReferencePoints pts = gen_reference_points(
      sys.cols(), cfg.reference_mode, cfg.singular_index, sys, ref_seed);
  const Vector x0 = resolve_x0(sys, cfg.x0_mode, pts.x0);
  const ReferenceFrame frame = make_frame(sys, x0, pts.x_star);

  const std::vector<std::size_t> checkpoints =
      cfg.checkpoints.use_default ? default_checkpoints(cfg.max_iters)
                                  : cfg.checkpoints.explicit_values;

  std::vector<IterateTrace> traces;
  traces.reserve(cfg.runs);
  for (std::size_t i = 0; i < cfg.runs; ++i) {
    RkRunConfig rc;
    rc.seed = cfg.base_seed + i;
    rc.max_iters = cfg.max_iters;
    rc.checkpoints = checkpoints;
    rc.x0 = x0;
    traces.push_back(run_rk(sys, rc));
  }

  ExperimentResult result;
  result.checkpoints = checkpoints;
  result.errors = empirical_expectations(traces, frame);
  result.mse_bound = mse_bound_curve(sys, frame, checkpoints);
  result.mean_bound = mean_bound_curve(sys, frame, checkpoints);
  result.reference_ball = ball_for_reference(sys, frame);
  result.minimal_ball = smallest_ball(sys, x0);

  std::vector<Vector> mean_iterates;
  if (!cfg.track_singular_indices.empty()) {
    mean_iterates = exact_mean_iterates(sys, frame, checkpoints);
  }
  for (std::size_t j : cfg.track_singular_indices) {
    if (j < 1 || j > f.rank) {
      throw IndexOutOfRank("run_experiment: tracked index " +
                           std::to_string(j) + " outside [1, rank]");
    }
    Vector direction(sys.cols());
    for (std::size_t i = 0; i < sys.cols(); ++i) direction[i] = f.v(i, j - 1);

    CoefficientTrace trace;
    trace.j = j;
    const ProjectionStats stats =
        empirical_projection(traces, frame.center, direction);
    trace.empirical_mean = stats.mean;
    trace.empirical_stderr = stats.stderr_of_mean;
    trace.closed_form.reserve(checkpoints.size());
    trace.recursion.reserve(checkpoints.size());
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      trace.closed_form.push_back(
          expected_singular_coefficient(sys, frame, j, checkpoints[c]));
      double proj = 0.0;
      for (std::size_t i = 0; i < sys.cols(); ++i) {
        proj += (mean_iterates[c][i] - frame.center[i]) * direction[i];
      }
      trace.recursion.push_back(proj);
    }
    result.coefficients.push_back(std::move(trace));
  }

  // Long-form CSV: every empirical series carries stderr and run count.
  std::string csv = "iteration,series,value,stderr,run_count\n";
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    const std::size_t k = checkpoints[c];
    const double rms = result.errors.rms_error[c];
    const double rms_sq_se = result.errors.rms_sq_stderr[c];
    append_row(csv, k, "rms_error", rms,
               rms > 0.0 ? rms_sq_se / (2.0 * rms) : 0.0, cfg.runs);
    append_row(csv, k, "mse_empirical", rms * rms, rms_sq_se, cfg.runs);
    append_row(csv, k, "mean_error", result.errors.mean_error[c],
               result.errors.mean_stderr[c], cfg.runs);
    append_row(csv, k, "mse_bound", result.mse_bound.values[c], std::nullopt,
               std::nullopt);
    append_row(csv, k, "sqrt_mse_bound", std::sqrt(result.mse_bound.values[c]),
               std::nullopt, std::nullopt);
    append_row(csv, k, "mean_bound", result.mean_bound.values[c], std::nullopt,
               std::nullopt);
    append_row(csv, k, "mse_horizon", result.mse_bound.horizon, std::nullopt,
               std::nullopt);
    append_row(csv, k, "mean_horizon", result.mean_bound.horizon, std::nullopt,
               std::nullopt);
    for (const CoefficientTrace& t : result.coefficients) {
      const std::string suffix = "_j" + std::to_string(t.j);
      append_row(csv, k, "coeff_empirical" + suffix, t.empirical_mean[c],
                 t.empirical_stderr[c], cfg.runs);
      append_row(csv, k, "coeff_closed_form" + suffix, t.closed_form[c],
                 std::nullopt, std::nullopt);
      append_row(csv, k, "coeff_recursion" + suffix, t.recursion[c],
                 std::nullopt, std::nullopt);
    }
  }
  result.csv = std::move(csv);

  json sidecar;
  sidecar["config"] = config_to_json(cfg);
  sidecar["system"] = built.provenance;
  sidecar["system"]["rank"] = f.rank;
  sidecar["system"]["sigma_min"] = f.sigma_min;
  sidecar["system"]["frobenius_norm"] = std::sqrt(f.frob_sq);
  sidecar["system"]["contraction_ratio"] = sys.contraction_ratio();
  sidecar["frame"] = {
      {"x0_norm", norm(frame.x0)},
      {"x0_null_norm", norm(frame.x0_null)},
      {"residual_norm", frame.residual_norm},
  };
  sidecar["horizons"] = {{"mse", result.mse_bound.horizon},
                         {"mean", result.mean_bound.horizon}};
  sidecar["balls"] = {
      {"reference",
       {{"radius", result.reference_ball.radius}}},
      {"smallest",
       {{"radius", result.minimal_ball.radius}}},
  };
  sidecar["runs"] = cfg.runs;
  sidecar["checkpoint_count"] = checkpoints.size();
  result.sidecar = std::move(sidecar);

  if (!cfg.output_dir.empty()) {
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) {
      throw WriteFailure("cannot create " + cfg.output_dir + ": " +
                         ec.message());
    }
    write_text_file(fs::path(cfg.output_dir) / "experiment.csv", result.csv);
    write_text_file(fs::path(cfg.output_dir) / "experiment.json",
                    result.sidecar.dump(2) + "\n");
  }
  return result;
}

BallReport ball_report(const ExperimentConfig& cfg, std::size_t sample_count) {
  BuiltSystem built = build_system(cfg.system);
  const LinearSystem& sys = built.sys;
  const SvdFactors& f = sys.svd();

  const std::uint64_t ref_seed = derive_stream_seed(cfg.base_seed, 1);
  RngState rng(ref_seed);
  const Vector x0 =
      resolve_x0(sys, cfg.x0_mode, gaussian_vector(sys.cols(), rng));

  BallReport report;
  report.smallest = smallest_ball(sys, x0);

  const Vector x_ls = min_norm_least_squares(f, sys.rhs());
  const auto radius_for = [&](const Vector& x_star) {
    return ball_for_reference(sys, make_frame(sys, x0, x_star)).radius;
  };

  report.samples.push_back({"lstsq", radius_for(x_ls)});
  if (f.rank < sys.cols()) {
    const Vector y = project_null_space(f, gaussian_vector(sys.cols(), rng));
    report.samples.push_back({"lstsq+null", radius_for(x_ls + y)});
  }
  for (std::size_t i = 0; i < sample_count; ++i) {
    const Vector x_star = gaussian_vector(sys.cols(), rng);
    report.samples.push_back(
        {"random_" + std::to_string(i), radius_for(x_star)});
  }
  std::stable_sort(report.samples.begin(), report.samples.end(),
                   [](const BallSample& a, const BallSample& b) {
                     return a.radius < b.radius;
                   });
  report.minimum_attained = true;
  for (const BallSample& s : report.samples) {
    if (s.radius < report.smallest.radius - 1e-12) {
      report.minimum_attained = false;
      break;
    }
  }
  return report;
}

std::string render_ball_report(const BallReport& report) {
  std::ostringstream out;
  out << "smallest ball radius: " << format_double(report.smallest.radius)
      << "  (center = x0^n + x_LS)\n";
  out << "sampled reference points by radius:\n";
  for (const BallSample& s : report.samples) {
    out << "  " << s.label << ": " << format_double(s.radius) << "\n";
  }
  out << "minimum attained by least squares reference: "
      << (report.minimum_attained ? "yes" : "no") << "\n";
  return out.str();
}

json ball_report_to_json(const BallReport& report) {
  json j;
  j["smallest"] = {{"radius", report.smallest.radius}};
  json samples = json::array();
  for (const BallSample& s : report.samples) {
    samples.push_back({{"label", s.label}, {"radius", s.radius}});
  }
  j["samples"] = std::move(samples);
  j["minimum_attained"] = report.minimum_attained;
  return j;
}

void write_system_dir(const std::string& dir, const DenseMatrix& a,
                      const Vector& b, const json& provenance) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw WriteFailure("cannot create " + dir + ": " + ec.message());
  }

  std::string a_csv;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) a_csv += ',';
      a_csv += format_double(a(i, j));
    }
    a_csv += '\n';
  }
  std::string b_csv;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    b_csv += format_double(b[i]);
    b_csv += '\n';
  }

  json header = {{"rows", a.rows()},
                 {"cols", a.cols()},
                 {"matrix_csv", "A.csv"},
                 {"rhs_csv", "b.csv"},
                 {"provenance", provenance}};
  write_text_file(fs::path(dir) / "A.csv", a_csv);
  write_text_file(fs::path(dir) / "b.csv", b_csv);
  write_text_file(fs::path(dir) / "system.json", header.dump(2) + "\n");
}

namespace {

std::vector<double> parse_csv_numbers(const std::string& text,
                                      std::size_t expected) {
  std::vector<double> values;
  values.reserve(expected);
  const char* p = text.data();
  const char* end = p + text.size();
  while (p < end) {
    while (p < end && (*p == ',' || *p == '\n' || *p == '\r' || *p == ' ')) {
      ++p;
    }
    if (p >= end) break;
    double v = 0.0;
    const auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc{}) {
      throw std::runtime_error("system payload: bad number");
    }
    values.push_back(v);
    p = next;
  }
  if (values.size() != expected) {
    throw DimensionMismatch("system payload: expected " +
                            std::to_string(expected) + " numbers, found " +
                            std::to_string(values.size()));
  }
  return values;
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

LoadedSystem read_system_dir(const std::string& dir) {
  const fs::path base =
      fs::is_directory(dir) ? fs::path(dir) : fs::path(dir).parent_path();
  const fs::path header_path =
      fs::is_directory(dir) ? base / "system.json" : fs::path(dir);

  LoadedSystem loaded;
  loaded.header = json::parse(read_text_file(header_path));
  const std::size_t rows = loaded.header.at("rows").get<std::size_t>();
  const std::size_t cols = loaded.header.at("cols").get<std::size_t>();
  const std::string a_name =
      loaded.header.value("matrix_csv", std::string("A.csv"));
  const std::string b_name =
      loaded.header.value("rhs_csv", std::string("b.csv"));

  loaded.a = DenseMatrix(
      rows, cols, parse_csv_numbers(read_text_file(base / a_name), rows * cols));
  loaded.b = Vector(parse_csv_numbers(read_text_file(base / b_name), rows));
  return loaded;
}

}  // namespace rkhorizon
