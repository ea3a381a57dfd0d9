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

#ifndef CEPFILT_EXPERIMENT_H_
#define CEPFILT_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cepfilt/config.h"
#include "cepfilt/metrics.h"
#include "cepfilt/motion_sim.h"
#include "cepfilt/pipeline.h"

namespace cepfilt {

// Either a WAV file or seeded broadband noise.
struct SourceSpec {
  std::string id;
  std::optional<std::filesystem::path> wav;
  std::uint64_t seed = 0;
};

struct ExperimentSpec {
  std::vector<SourceSpec> sources;
  MotionScenario base;
  // Unset: place the closest approach mid-way through the retained segment.
  std::optional<double> r0;
  std::vector<double> velocities;
  // Length of generated noise sources after the pre-roll is trimmed.
  double duration = 10.0;
  int sample_rate = 32000;
  PipelineConfig pipeline;
  bool has_pipeline = false;
};

// Reads an experiment from config keys:
//   sources = a.wav, b.wav        WAV paths (optional)
//   noise_sources = 5             number of seeded noise sources (default 0)
//   seed = 1                      first noise seed; source i uses seed + i
//   duration, sample_rate, velocities (default 10..100 step 10),
//   r0 (number or "auto", default auto) and the scenario keys.
// Pipeline keys are parsed when present (required by evaluate/sweep-all).
// Throws ConfigError when no source is configured.
ExperimentSpec experiment_from(const KeyValueConfig& config,
                               bool require_pipeline);

// Samples dropped from the start of every synthesized signal so that both
// propagation paths are fully populated, and the number kept after them.
struct TrimPlan {
  std::size_t pre_roll = 0;
  std::size_t retained = 0;
};

// Pre-roll (samples) needed at speed v so that the reflected path, which
// arrives last, already carries source audio at the first retained sample.
std::size_t required_pre_roll(const ExperimentSpec& spec, double v,
                              std::size_t retained);

// One plan for all velocities of a source: the largest pre-roll wins. Noise
// sources keep `duration` seconds; WAV sources keep what is left of
// `source_length` after the pre-roll.
TrimPlan plan_trim(const ExperimentSpec& spec, const SourceSpec& source,
                   std::size_t source_length);

// Full-length source for `source` (WAVs are resampled to spec.sample_rate;
// noise is generated long enough to cover the sweep's pre-roll).
TimeSignal materialize_source(const ExperimentSpec& spec,
                              const SourceSpec& source);

// Triple at velocity v, trimmed per `plan`. The returned scenario's r0 is the
// range at the first retained sample.
SimulatedTriple simulate_trimmed(const TimeSignal& full_source,
                                 const ExperimentSpec& spec, double v,
                                 const TrimPlan& plan);

struct ManifestRow {
  std::string source_id;
  double velocity = 0.0;
  std::filesystem::path reference;
  std::filesystem::path direct;
  std::filesystem::path combined;
};

// Writes <out>/<source>_v<vel>_{ref,direct,combined}.wav and
// <out>/manifest.csv. Returns the manifest rows in (source, velocity) order.
std::vector<ManifestRow> run_simulate(const ExperimentSpec& spec,
                                      const std::filesystem::path& out_dir);

void write_manifest(const std::vector<ManifestRow>& rows,
                    const std::filesystem::path& path);
std::vector<ManifestRow> read_manifest(const std::filesystem::path& path);

struct MetricRow {
  std::string source_id;
  double velocity = 0.0;
  char variant = 'A';  // 'A' direct path, 'B' direct + reflected
  bool filtered = false;
  MetricReport report;
};

// For one (R, A, B) triple: rows (R,A), (R,A'), (R,B), (R,B').
std::vector<MetricRow> evaluate_triple(const std::string& source_id,
                                       double velocity,
                                       const TimeSignal& reference,
                                       const TimeSignal& direct,
                                       const TimeSignal& combined,
                                       const PipelineConfig& cfg);

std::vector<MetricRow> run_evaluate(const std::vector<ManifestRow>& manifest,
                                    const PipelineConfig& cfg);

struct SummaryRow {
  double velocity = 0.0;
  char variant = 'A';
  bool filtered = false;
  double snr_db = 0.0;
  double lsd = 0.0;
  double is_distance = 0.0;
  std::size_t num_sources = 0;
};

// Per-velocity means across sources, ordered by velocity, variant, filtered.
std::vector<SummaryRow> summarize(const std::vector<MetricRow>& rows);

void write_metrics_csv(const std::vector<MetricRow>& rows,
                       const std::filesystem::path& path);
void write_summary_csv(const std::vector<SummaryRow>& rows,
                       const std::filesystem::path& path);

struct SweepResult {
  std::vector<ManifestRow> manifest;
  std::vector<MetricRow> metrics;
  std::vector<SummaryRow> summary;
};

// simulate + evaluate into `out_dir` (manifest.csv, metrics.csv,
// summary.csv and the WAV triples).
SweepResult run_sweep_all(const ExperimentSpec& spec,
                          const std::filesystem::path& out_dir);

// Worker count from CEPFILT_WORKERS, else the hardware concurrency.
unsigned worker_count();

}  // namespace cepfilt

#endif  // CEPFILT_EXPERIMENT_H_
