// Copyright 2026 The cepfilt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch front-end: simulate / filter / evaluate / sweep-all.

#include <CLI11.hpp>

#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "cepfilt/cepstral.h"
#include "cepfilt/config.h"
#include "cepfilt/errors.h"
#include "cepfilt/experiment.h"
#include "cepfilt/export.h"
#include "cepfilt/pipeline.h"
#include "cepfilt/signal_io.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

fs::path sibling(const fs::path& out, const std::string& suffix) {
  return out.parent_path() / (out.stem().string() + suffix);
}

int cmd_simulate(const fs::path& config_path, const fs::path& out_dir) {
  const auto config = cepfilt::KeyValueConfig::load(config_path);
  const auto spec = cepfilt::experiment_from(config, /*require_pipeline=*/false);
  const auto rows = cepfilt::run_simulate(spec, out_dir);
  std::cout << "wrote " << rows.size() * 3 << " WAVs and "
            << (out_dir / "manifest.csv").string() << '\n';
  return 0;
}

int cmd_filter(const fs::path& in, const fs::path& config_path,
               const fs::path& out, const std::string& corners_path,
               bool export_cepstra) {
  const auto config = cepfilt::KeyValueConfig::load(config_path);
  const cepfilt::PipelineConfig cfg = cepfilt::pipeline_config_from(config);
  const cepfilt::TimeSignal signal = cepfilt::load_wav(in);

  std::vector<cepfilt::CornerSample> corners;
  const auto result =
      cepfilt::filter_audio(signal, cfg, corners_path.empty() ? nullptr : &corners);

  if (!out.parent_path().empty()) fs::create_directories(out.parent_path());
  cepfilt::save_wav(result.audio, out);
  cepfilt::write_spectrogram_png(result.before.magnitude, sibling(out, "_before.png"));
  cepfilt::write_grid_csv(result.before.magnitude, sibling(out, "_before.csv"));
  cepfilt::write_spectrogram_png(result.after.magnitude, sibling(out, "_after.png"));
  cepfilt::write_grid_csv(result.after.magnitude, sibling(out, "_after.csv"));
  if (export_cepstra) {
    const auto before = cepfilt::cepstrogram_forward(result.before, cfg.log_floor);
    const auto after = cepfilt::cepstrogram_forward(result.after, cfg.log_floor);
    cepfilt::write_cepstrogram_png(before.values, sibling(out, "_before_cepstrum.png"));
    cepfilt::write_grid_csv(before.values, sibling(out, "_before_cepstrum.csv"));
    cepfilt::write_cepstrogram_png(after.values, sibling(out, "_after_cepstrum.png"));
    cepfilt::write_grid_csv(after.values, sibling(out, "_after_cepstrum.csv"));
  }
  if (!corners_path.empty()) {
    cepfilt::write_corner_trajectory_csv(corners, corners_path);
  }
  std::cout << "wrote " << out.string() << '\n';
  return 0;
}

int cmd_evaluate(const fs::path& manifest_path, const fs::path& config_path,
                 const fs::path& out) {
  const auto config = cepfilt::KeyValueConfig::load(config_path);
  const cepfilt::PipelineConfig cfg = cepfilt::pipeline_config_from(config);
  const auto manifest = cepfilt::read_manifest(manifest_path);
  const auto rows = cepfilt::run_evaluate(manifest, cfg);
  if (!out.parent_path().empty()) fs::create_directories(out.parent_path());
  cepfilt::write_metrics_csv(rows, out);
  cepfilt::write_summary_csv(cepfilt::summarize(rows), sibling(out, "_summary.csv"));
  std::cout << "wrote " << rows.size() << " metric rows to " << out.string() << '\n';
  return 0;
}

int cmd_sweep_all(const fs::path& config_path, const fs::path& out_dir) {
  const auto config = cepfilt::KeyValueConfig::load(config_path);
  const auto spec = cepfilt::experiment_from(config, /*require_pipeline=*/true);
  const auto result = cepfilt::run_sweep_all(spec, out_dir);
  std::cout << "wrote " << result.metrics.size() << " metric rows to "
            << (out_dir / "metrics.csv").string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cepstral adaptive filtering of multi-path artefacts"};
  app.require_subcommand(1);

  std::string config, out, in, manifest, corners;
  bool export_cepstra = false;

  auto* simulate = app.add_subcommand("simulate", "Synthesize R/A/B triples");
  simulate->add_option("--config", config, "key=value config file")->required();
  simulate->add_option("--out", out, "output directory")->required();

  auto* filter = app.add_subcommand("filter", "Filter one WAV file");
  filter->add_option("--in", in, "input WAV")->required();
  filter->add_option("--config", config, "key=value config file")->required();
  filter->add_option("--out", out, "output WAV")->required();
  filter->add_option("--corners", corners, "write the corner trajectory CSV");
  filter->add_flag("--export-cepstra", export_cepstra,
                   "also export before/after cepstrograms");

  auto* evaluate = app.add_subcommand("evaluate", "Compute metrics for a manifest");
  evaluate->add_option("--manifest", manifest, "manifest CSV")->required();
  evaluate->add_option("--config", config, "key=value config file")->required();
  evaluate->add_option("--out", out, "metrics CSV")->required();

  auto* sweep = app.add_subcommand("sweep-all", "simulate + evaluate");
  sweep->add_option("--config", config, "key=value config file")->required();
  sweep->add_option("--out", out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*simulate) return cmd_simulate(config, out);
    if (*filter) return cmd_filter(in, config, out, corners, export_cepstra);
    if (*evaluate) return cmd_evaluate(manifest, config, out);
    if (*sweep) return cmd_sweep_all(config, out);
  } catch (const cepfilt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
