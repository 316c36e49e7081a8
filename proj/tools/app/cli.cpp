// Copyright 2026 The hyperseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hyperseg/error.hpp"
#include "hyperseg/npy.hpp"
#include "hyperseg/parallel.hpp"
#include "hyperseg/pca.hpp"
#include "hyperseg/superpixel.hpp"
#include "render.hpp"

namespace fs = std::filesystem;

namespace hyperseg::app {

nlohmann::json to_json(const MetricsReport& r) {
  nlohmann::json j;
  j["ue"] = r.ue ? nlohmann::json(*r.ue) : nlohmann::json(nullptr);
  j["nmi"] = r.nmi;
  j["ari"] = r.ari;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["f1"] = r.f1;
  j["n_clusters"] = r.n_clusters;
  j["n_classes"] = r.n_classes;
  return j;
}

nlohmann::json to_json(const SegmentationConfig& c) {
  nlohmann::json j;
  j["superpixels"] = c.superpixels ? nlohmann::json(*c.superpixels) : nlohmann::json(nullptr);
  j["alpha"] = c.alpha;
  j["m"] = c.m;
  j["m_clust"] = c.m_clust;
  j["pre_bandwidth"] = c.pre_bandwidth;
  j["seg_bandwidth"] = c.seg_bandwidth ? nlohmann::json(*c.seg_bandwidth) : nlohmann::json(nullptr);
  j["quantile"] = c.quantile;
  j["bandwidth_samples"] = c.bandwidth_samples;
  j["small_region_threshold"] =
      c.small_region_threshold ? nlohmann::json(*c.small_region_threshold) : nlohmann::json(nullptr);
  j["seed"] = c.seed;
  j["use_pca"] = c.use_pca;
  j["variance_threshold"] = c.variance_threshold;
  j["scale_positions"] = c.scale_positions;
  j["features"] = to_string(c.features);
  j["slic_max_iters"] = c.slic_max_iters;
  j["slic_conv_tol"] = c.slic_conv_tol;
  return j;
}

nlohmann::json to_json(const NoiseSpec& s) {
  nlohmann::json j;
  j["kind"] = to_string(s.kind);
  switch (s.kind) {
    case NoiseKind::gaussian:
      j["sigma"] = s.sigma;
      j["pixel_fraction"] = s.pixel_fraction;
      break;
    case NoiseKind::impulsive:
      j["density"] = s.pixel_fraction;
      break;
    case NoiseKind::poisson:
    case NoiseKind::poisson_additive:
      j["lambda"] = s.lambda;
      break;
  }
  j["seed"] = s.seed;
  return j;
}

namespace {

// Input problems map to exit code 2, everything after loading to 3.
struct InputFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Preset {
  std::size_t superpixels;       // segmentation K
  std::size_t sp_superpixels;    // K for the superpixel-only command
  double m;
  double m_clust;
  double pre_bandwidth;
};

const std::map<std::string, Preset>& presets() {
  static const std::map<std::string, Preset> table = {
      {"salinas", {800, 1000, 0.4, 0.8, 0.1}},
      {"salinasA", {300, 500, 0.4, 0.8, 0.1}},
      {"paviaC", {2000, 2000, 0.4, 0.8, 0.1}},
      {"paviaU", {2000, 2000, 0.4, 0.8, 0.1}},
  };
  return table;
}

struct CubeOptions {
  std::string input;
  bool assume_normalized = false;
  std::string noise;  // empty = none
  double sigma = 0.0;
  double fraction = 0.1;
  double density = 0.1;
  double lambda = 5.5;
  std::uint64_t noise_seed = 0;
};

struct SegmentOptions {
  CubeOptions cube;
  std::string gt;
  std::string out = ".";
  std::string preset;
  std::size_t k = 0;
  double m = 0.4;
  double m_clust = 0.8;
  double pre_bandwidth = 0.1;
  std::string bandwidth = "auto";
  double quantile = 0.3;
  std::size_t samples = 500;
  std::size_t min_region = 0;
  double alpha = 60.0;
  std::string features = "spectral+superpixels";
  bool pca = false;
  double variance = 0.999;
  std::uint64_t seed = 0;
  std::string mode = "auto";
  std::vector<double> ladder;
  double b_fraction = 0.15;
  bool json = false;
};

struct SuperpixelOptions {
  CubeOptions cube;
  std::string gt;
  std::string out = ".";
  std::string preset;
  std::size_t k = 500;
  std::vector<double> m = {0.2};
  std::vector<double> m_clust = {0.8};
  double pre_bandwidth = 0.1;
  bool pca = false;
  double variance = 0.999;
  std::uint64_t seed = 0;
  double b_fraction = 0.15;
  bool json = false;
};

struct NoiseOptions {
  CubeOptions cube;
  std::string out = ".";
  bool json = false;
};

struct EvaluateOptions {
  std::string pred;
  std::string gt;
  std::string out;
  double b_fraction = 0.15;
  bool json = false;
};

void add_cube_options(CLI::App* cmd, CubeOptions& o, bool noise_required) {
  cmd->add_option("-i,--input", o.input, "Input cube (.npy, H x W x L)")->required();
  cmd->add_flag("--assume-normalized", o.assume_normalized,
                "Input already holds values in [0, 1]; skip percentile normalization");
  auto* kind = cmd->add_option("--kind", o.noise, "Noise: gaussian | impulsive | poisson | poisson-additive");
  if (noise_required) kind->required();
  cmd->add_option("--sigma", o.sigma, "Gaussian standard deviation");
  cmd->add_option("--fraction", o.fraction, "Fraction of pixels hit by gaussian noise");
  cmd->add_option("--density", o.density, "Impulsive noise density");
  cmd->add_option("--lambda", o.lambda, "Poisson photon scale");
  cmd->add_option("--noise-seed", o.noise_seed, "Noise RNG seed");
}

std::optional<NoiseSpec> noise_spec(const CubeOptions& o) {
  if (o.noise.empty()) return std::nullopt;
  NoiseSpec s;
  s.kind = noise_kind_from_string(o.noise);
  s.sigma = o.sigma;
  s.pixel_fraction = s.kind == NoiseKind::impulsive ? o.density : o.fraction;
  s.lambda = o.lambda;
  s.seed = o.noise_seed;
  s.validate();
  return s;
}

HyperCube load_input(const CubeOptions& o) {
  HyperCube raw;
  try {
    raw = load_cube(o.input);
  } catch (const Error& e) {
    throw InputFailure(e.what());
  }
  if (o.assume_normalized) {
    try {
      return HyperCube(raw.height(), raw.width(), raw.bands(),
                       std::vector<float>(raw.values().begin(), raw.values().end()), true, 1.0);
    } catch (const Error& e) {
      throw InputFailure(std::string("--assume-normalized: ") + e.what());
    }
  }
  try {
    return normalize(raw);
  } catch (const Error& e) {
    throw InputFailure(e.what());
  }
}

LabelMap load_truth(const std::string& path, const HyperCube& cube) {
  LabelMap gt;
  try {
    gt = load_labels(path);
  } catch (const Error& e) {
    throw InputFailure(e.what());
  }
  if (gt.height() != cube.height() || gt.width() != cube.width()) {
    std::ostringstream msg;
    msg << "ground truth is " << gt.height() << "x" << gt.width() << " but the cube is "
        << cube.height() << "x" << cube.width();
    throw InputFailure(msg.str());
  }
  return gt;
}

void prepare_out(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << j.dump(2) << '\n';
  if (!f) throw IoError("write failed for " + path.string());
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s = "hyperseg";
  for (const auto& a : args) s += " " + a;
  return s;
}

int run_segment(const SegmentOptions& o, const std::vector<std::string>& args, std::ostream& out) {
  SegmentationConfig config;
  config.alpha = o.alpha;
  if (o.k > 0) config.superpixels = o.k;
  config.m = o.m;
  config.m_clust = o.m_clust;
  config.pre_bandwidth = o.pre_bandwidth;
  config.quantile = o.quantile;
  config.bandwidth_samples = o.samples;
  if (o.min_region > 0) config.small_region_threshold = o.min_region;
  config.features = feature_set_from_string(o.features);
  config.use_pca = o.pca;
  config.variance_threshold = o.variance;
  config.seed = o.seed;
  if (o.bandwidth != "auto") {
    try {
      std::size_t used = 0;
      const double bw = std::stod(o.bandwidth, &used);
      if (used != o.bandwidth.size()) throw std::invalid_argument("trailing characters");
      config.seg_bandwidth = bw;
    } catch (const std::exception&) {
      throw InvalidArgument("--bandwidth must be a positive number or 'auto'");
    }
  }
  config.validate();
  const auto noise = noise_spec(o.cube);
  const bool oracle = o.mode == "oracle";
  if (oracle && o.gt.empty()) throw InvalidArgument("--mode oracle requires --gt");
  if (oracle && config.seg_bandwidth) throw InvalidArgument("--mode oracle searches the bandwidth; drop --bandwidth");

  const HyperCube clean = load_input(o.cube);
  std::optional<LabelMap> truth;
  if (!o.gt.empty()) truth = load_truth(o.gt, clean);

  nlohmann::json run;
  run["command"] = join_args(args);
  run["input"] = o.cube.input;
  run["ground_truth"] = o.gt.empty() ? nlohmann::json(nullptr) : nlohmann::json(o.gt);
  run["preset"] = o.preset.empty() ? nlohmann::json(nullptr) : nlohmann::json(o.preset);
  run["shape"] = {clean.height(), clean.width(), clean.bands()};
  run["normalization_scale"] = clean.scale();
  run["mode"] = o.mode;
  run["noise"] = noise ? to_json(*noise) : nlohmann::json(nullptr);

  const auto t0 = std::chrono::steady_clock::now();
  const HyperCube cube = noise ? apply_noise(clean, *noise) : clean;
  const PreparedScene scene = prepare_scene(cube, config);
  const double t_prepare = seconds_since(t0);

  SegmentationResult result;
  nlohmann::json trials = nlohmann::json::array();
  if (oracle) {
    const auto ladder = o.ladder.empty() ? default_oracle_ladder() : o.ladder;
    const OracleSearch search = oracle_search(scene, config, *truth, ladder);
    for (const auto& t : search.trials)
      trials.push_back({{"bandwidth", t.bandwidth}, {"nmi", t.nmi}, {"segments", t.segments}});
    result = search.result;
  } else {
    const double bw = config.seg_bandwidth ? *config.seg_bandwidth : auto_bandwidth(scene, config);
    result = segment_prepared(scene, config, bw);
  }
  const double t_total = seconds_since(t0);

  SegmentationConfig resolved = config;
  resolved.superpixels = scene.resolved_superpixels;
  resolved.seg_bandwidth = result.seg_bandwidth;
  resolved.small_region_threshold = result.small_region_threshold;
  run["config"] = to_json(resolved);
  run["bandwidth_mode"] = oracle ? "oracle" : (config.seg_bandwidth ? "fixed" : "auto");
  run["pre_clusters"] = scene.pre_clusters.cluster_count();
  run["superpixels"] = scene.superpixels.size();
  run["slic_iterations"] = scene.superpixels.iterations;
  run["spectral_dims"] = scene.spectral_dims;
  run["superpixel_dims"] = scene.superpixel_dims;
  run["region_clusters"] = result.region_clusters;
  run["segments"] = result.labels.count_labels();
  if (oracle) run["oracle_trials"] = trials;
  run["timing_seconds"] = {{"stage1", t_prepare}, {"total", t_total}};

  std::optional<MetricsReport> metrics;
  if (truth) {
    metrics = evaluate(result.labels, *truth, o.b_fraction);
    run["metrics"] = to_json(*metrics);
  }

  prepare_out(o.out);
  const fs::path dir(o.out);
  save_labels(dir / "labels.npy", result.labels);
  write_png(dir / "labels.png", result.labels.height(), result.labels.width(), colorize(result.labels));
  if (metrics) write_json(dir / "metrics.json", to_json(*metrics));
  write_json(dir / "run.json", run);

  if (o.json) {
    out << run.dump(2) << '\n';
  } else {
    out << "segments: " << result.labels.count_labels() << "  (superpixels " << scene.superpixels.size()
        << ", pre-clusters " << scene.pre_clusters.cluster_count() << ", bandwidth "
        << result.seg_bandwidth << ")\n";
    if (oracle) {
      for (const auto& t : trials)
        out << "  oracle bw=" << t["bandwidth"].get<double>() << " nmi=" << t["nmi"].get<double>()
            << " segments=" << t["segments"].get<std::size_t>() << '\n';
    }
    if (metrics) {
      out << std::fixed << std::setprecision(4) << "NMI " << metrics->nmi << "  ARI " << metrics->ari
          << "  F1 " << metrics->f1 << "  UE " << metrics->ue.value_or(0.0) << '\n';
      out.unsetf(std::ios::fixed);
    }
    out << "wrote " << (dir / "labels.npy").string() << '\n';
  }
  return kOk;
}

std::string format_number(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

int run_superpixels(const SuperpixelOptions& o, const std::vector<std::string>& args, std::ostream& out) {
  for (double m : o.m)
    if (!(m >= 0.0)) throw InvalidArgument("--m values must be >= 0");
  for (double mc : o.m_clust)
    if (!(mc >= 0.0)) throw InvalidArgument("--mclust values must be >= 0");
  if (o.k == 0) throw InvalidArgument("--k must be positive");
  if (!(o.pre_bandwidth > 0.0)) throw InvalidArgument("--pre-bandwidth must be positive");
  const auto noise = noise_spec(o.cube);

  const HyperCube clean = load_input(o.cube);
  std::optional<LabelMap> truth;
  if (!o.gt.empty()) truth = load_truth(o.gt, clean);
  const bool sweep = o.m.size() * o.m_clust.size() > 1;
  if (sweep && !truth) throw InvalidArgument("sweeping --m/--mclust requires --gt");

  const HyperCube cube = noise ? apply_noise(clean, *noise) : clean;
  Matrix spectra = spectra_matrix(cube);
  std::size_t dims = cube.bands();
  if (o.pca) {
    const PcaModel model = fit_pca(spectra, o.variance);
    spectra = apply_pca(spectra, model);
    dims = model.components.rows();
  }
  const ClusterModel pre = mean_shift(spectra, o.pre_bandwidth, o.seed);
  const AugmentedImage image = build_augmented_image(cube, pre);

  nlohmann::json run;
  run["command"] = join_args(args);
  run["input"] = o.cube.input;
  run["ground_truth"] = o.gt.empty() ? nlohmann::json(nullptr) : nlohmann::json(o.gt);
  run["preset"] = o.preset.empty() ? nlohmann::json(nullptr) : nlohmann::json(o.preset);
  run["shape"] = {cube.height(), cube.width(), cube.bands()};
  run["normalization_scale"] = clean.scale();
  run["noise"] = noise ? to_json(*noise) : nlohmann::json(nullptr);
  run["superpixels_requested"] = o.k;
  run["pre_bandwidth"] = o.pre_bandwidth;
  run["pre_clusters"] = pre.cluster_count();
  run["pre_cluster_dims"] = dims;
  run["seed"] = o.seed;
  run["b_fraction"] = o.b_fraction;

  prepare_out(o.out);
  const fs::path dir(o.out);
  nlohmann::json results = nlohmann::json::array();
  std::vector<std::vector<double>> ue(o.m_clust.size(), std::vector<double>(o.m.size(), 0.0));
  std::optional<SuperpixelSet> last;
  for (std::size_t r = 0; r < o.m_clust.size(); ++r) {
    for (std::size_t c = 0; c < o.m.size(); ++c) {
      SlicParams params;
      params.superpixels = o.k;
      params.m = o.m[c];
      params.m_clust = o.m_clust[r];
      SuperpixelSet set = slic(image, params);
      nlohmann::json entry = {{"m", params.m},
                              {"m_clust", params.m_clust},
                              {"superpixels", set.size()},
                              {"iterations", set.iterations}};
      if (truth) {
        ue[r][c] = undersegmentation_error(set.label_map(), *truth, o.b_fraction);
        entry["ue"] = ue[r][c];
      }
      results.push_back(entry);
      if (!o.json) {
        out << "m=" << params.m << " m_clust=" << params.m_clust << " superpixels=" << set.size();
        if (truth) out << " UE=" << std::fixed << std::setprecision(4) << ue[r][c] << std::defaultfloat;
        out << '\n';
      }
      last = std::move(set);
    }
  }
  run["results"] = results;

  if (sweep) {
    std::ofstream csv(dir / "ue_sweep.csv", std::ios::trunc);
    if (!csv) throw IoError("cannot write " + (dir / "ue_sweep.csv").string());
    csv << "m_clust";
    for (double m : o.m) csv << ",m=" << format_number(m);
    csv << '\n' << std::setprecision(6);
    for (std::size_t r = 0; r < o.m_clust.size(); ++r) {
      csv << format_number(o.m_clust[r]);
      for (std::size_t c = 0; c < o.m.size(); ++c) csv << ',' << ue[r][c];
      csv << '\n';
    }
  } else {
    const LabelMap labels = last->label_map();
    save_labels(dir / "superpixels.npy", labels);
    write_png(dir / "superpixels.png", labels.height(), labels.width(), boundary_overlay(cube, labels));
    if (truth) write_json(dir / "metrics.json", to_json(evaluate(labels, *truth, o.b_fraction)));
  }
  write_json(dir / "run.json", run);
  if (o.json) out << run.dump(2) << '\n';
  return kOk;
}

int run_noise(const NoiseOptions& o, const std::vector<std::string>& args, std::ostream& out) {
  const auto spec = noise_spec(o.cube);
  const HyperCube clean = load_input(o.cube);
  const HyperCube noisy = apply_noise(clean, *spec);
  prepare_out(o.out);
  const fs::path dir(o.out);
  save_cube(dir / "cube.npy", noisy);
  nlohmann::json prov = {{"command", join_args(args)},
                         {"input", o.cube.input},
                         {"normalization_scale", clean.scale()},
                         {"assume_normalized", o.cube.assume_normalized},
                         {"noise", to_json(*spec)},
                         {"output", (dir / "cube.npy").string()}};
  write_json(dir / "noise.json", prov);
  if (o.json)
    out << prov.dump(2) << '\n';
  else
    out << "wrote " << (dir / "cube.npy").string() << " (" << to_string(spec->kind) << ")\n";
  return kOk;
}

int run_evaluate(const EvaluateOptions& o, std::ostream& out) {
  LabelMap pred, truth;
  try {
    pred = load_labels(o.pred);
    truth = load_labels(o.gt);
  } catch (const Error& e) {
    throw InputFailure(e.what());
  }
  if (pred.height() != truth.height() || pred.width() != truth.width())
    throw InputFailure("prediction and ground truth differ in shape");
  const MetricsReport report = evaluate(pred, truth, o.b_fraction);
  const nlohmann::json j = to_json(report);
  if (!o.out.empty()) {
    prepare_out(o.out);
    write_json(fs::path(o.out) / "metrics.json", j);
  }
  if (o.json) {
    out << j.dump(2) << '\n';
  } else {
    out << std::fixed << std::setprecision(4) << "UE " << report.ue.value_or(0.0) << "\nNMI "
        << report.nmi << "\nARI " << report.ari << "\nprecision " << report.precision << "\nrecall "
        << report.recall << "\nF1 " << report.f1 << '\n'
        << std::defaultfloat << "clusters " << report.n_clusters << "\nclasses " << report.n_classes
        << '\n';
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unsupervised hyperspectral segmentation", "hyperseg"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = default)");

  std::vector<std::string> preset_names;
  for (const auto& [name, _] : presets()) preset_names.push_back(name);

  SegmentOptions seg;
  auto* seg_cmd = app.add_subcommand("segment", "Region segmentation of a cube");
  add_cube_options(seg_cmd, seg.cube, false);
  seg_cmd->add_option("--gt", seg.gt, "Ground-truth labels (.npy, 0 = unlabeled)");
  seg_cmd->add_option("-o,--out", seg.out, "Output directory");
  seg_cmd->add_option("--preset", seg.preset, "Dataset preset")->check(CLI::IsMember(preset_names));
  auto* seg_k = seg_cmd->add_option("--k", seg.k, "Superpixel count (default: from image size)");
  auto* seg_m = seg_cmd->add_option("--m", seg.m, "Spatial weight");
  auto* seg_mc = seg_cmd->add_option("--mclust", seg.m_clust, "Cluster-spectrum weight");
  auto* seg_pre = seg_cmd->add_option("--pre-bandwidth", seg.pre_bandwidth, "Pre-clustering bandwidth");
  seg_cmd->add_option("--bandwidth", seg.bandwidth, "Region bandwidth: value or 'auto'");
  seg_cmd->add_option("--quantile", seg.quantile, "Quantile for the automatic bandwidth");
  seg_cmd->add_option("--bandwidth-samples", seg.samples, "Sample size for the automatic bandwidth");
  seg_cmd->add_option("--min-region", seg.min_region, "Smallest kept region in pixels (default ceil(S^2/4))");
  seg_cmd->add_option("--alpha", seg.alpha, "Pixels per 100 superpixels when --k is absent");
  seg_cmd->add_option("--features", seg.features, "spectral | superpixels | spectral+superpixels");
  seg_cmd->add_flag("--pca", seg.pca, "Reduce spectra with PCA");
  seg_cmd->add_option("--variance", seg.variance, "Retained PCA variance");
  seg_cmd->add_option("--seed", seg.seed, "Mean-shift seed");
  seg_cmd->add_option("--mode", seg.mode, "auto | oracle")->check(CLI::IsMember({"auto", "oracle"}));
  seg_cmd->add_option("--ladder", seg.ladder, "Oracle bandwidths (comma separated)")->delimiter(',');
  seg_cmd->add_option("--b-fraction", seg.b_fraction, "UE overlap tolerance");
  seg_cmd->add_flag("--json", seg.json, "Print run.json to stdout");

  SuperpixelOptions sp;
  auto* sp_cmd = app.add_subcommand("superpixels", "Augmented superpixels and UE sweeps");
  add_cube_options(sp_cmd, sp.cube, false);
  sp_cmd->add_option("--gt", sp.gt, "Ground-truth labels (.npy)");
  sp_cmd->add_option("-o,--out", sp.out, "Output directory");
  sp_cmd->add_option("--preset", sp.preset, "Dataset preset")->check(CLI::IsMember(preset_names));
  auto* sp_k = sp_cmd->add_option("--k", sp.k, "Superpixel count");
  sp_cmd->add_option("--m", sp.m, "Spatial weight(s), comma separated")->delimiter(',');
  sp_cmd->add_option("--mclust", sp.m_clust, "Cluster-spectrum weight(s), comma separated")->delimiter(',');
  auto* sp_pre = sp_cmd->add_option("--pre-bandwidth", sp.pre_bandwidth, "Pre-clustering bandwidth");
  sp_cmd->add_flag("--pca", sp.pca, "Reduce spectra with PCA before pre-clustering");
  sp_cmd->add_option("--variance", sp.variance, "Retained PCA variance");
  sp_cmd->add_option("--seed", sp.seed, "Mean-shift seed");
  sp_cmd->add_option("--b-fraction", sp.b_fraction, "UE overlap tolerance");
  sp_cmd->add_flag("--json", sp.json, "Print run.json to stdout");

  NoiseOptions nz;
  auto* nz_cmd = app.add_subcommand("noise", "Add synthetic noise to a cube");
  add_cube_options(nz_cmd, nz.cube, true);
  nz_cmd->add_option("-o,--out", nz.out, "Output directory");
  nz_cmd->add_flag("--json", nz.json, "Print provenance JSON to stdout");

  EvaluateOptions ev;
  auto* ev_cmd = app.add_subcommand("evaluate", "Score a label map against ground truth");
  ev_cmd->add_option("--pred", ev.pred, "Predicted labels (.npy)")->required();
  ev_cmd->add_option("--gt", ev.gt, "Ground-truth labels (.npy)")->required();
  ev_cmd->add_option("-o,--out", ev.out, "Directory for metrics.json");
  ev_cmd->add_option("--b-fraction", ev.b_fraction, "UE overlap tolerance");
  ev_cmd->add_flag("--json", ev.json, "Print metrics JSON to stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  // preset values apply unless the flag was given explicitly
  if (!seg.preset.empty()) {
    const Preset& p = presets().at(seg.preset);
    if (seg_k->count() == 0) seg.k = p.superpixels;
    if (seg_m->count() == 0) seg.m = p.m;
    if (seg_mc->count() == 0) seg.m_clust = p.m_clust;
    if (seg_pre->count() == 0) seg.pre_bandwidth = p.pre_bandwidth;
  }
  if (!sp.preset.empty()) {
    const Preset& p = presets().at(sp.preset);
    if (sp_k->count() == 0) sp.k = p.sp_superpixels;
    if (sp_pre->count() == 0) sp.pre_bandwidth = p.pre_bandwidth;
  }
  if (threads > 0) set_thread_limit(threads);

  try {
    if (*seg_cmd) return run_segment(seg, args, out);
    if (*sp_cmd) return run_superpixels(sp, args, out);
    if (*nz_cmd) return run_noise(nz, args, out);
    if (*ev_cmd) return run_evaluate(ev, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputFailure& e) {
    err << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    err << "pipeline error: " << e.what() << '\n';
    return kPipeline;
  }
  return kUsage;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace hyperseg::app
