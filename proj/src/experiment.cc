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

#include "cepfilt/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "cepfilt/errors.h"
#include "cepfilt/signal_io.h"
#include "cepfilt/spectral.h"

namespace cepfilt {
namespace {

constexpr double kPreRollMargin = 0.01;  // seconds

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string velocity_tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// Runs fn(i) for i in [0, n) on up to worker_count() threads. The first
// exception thrown by any task is rethrown after all workers stop.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, worker_count()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

TimeSignal slice(const TimeSignal& s, std::size_t first, std::size_t count) {
  TimeSignal out;
  out.sample_rate = s.sample_rate;
  out.samples.assign(s.samples.begin() + static_cast<std::ptrdiff_t>(first),
                     s.samples.begin() + static_cast<std::ptrdiff_t>(first + count));
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

unsigned worker_count() {
  if (const char* env = std::getenv("CEPFILT_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentSpec experiment_from(const KeyValueConfig& config,
                               bool require_pipeline) {
  ExperimentSpec spec;
  if (config.has("sources")) {
    for (const std::string& path : config.string_list("sources")) {
      SourceSpec s;
      s.wav = path;
      s.id = std::filesystem::path(path).stem().string();
      spec.sources.push_back(s);
    }
  }
  const long long noise = config.integer_or("noise_sources", 0);
  if (noise < 0) throw ConfigError("noise_sources must be >= 0");
  const long long seed = config.integer_or("seed", 1);
  for (long long i = 0; i < noise; ++i) {
    SourceSpec s;
    s.seed = static_cast<std::uint64_t>(seed + i);
    s.id = "noise" + std::to_string(s.seed);
    spec.sources.push_back(s);
  }
  if (spec.sources.empty()) {
    throw ConfigError("no sources configured (set 'sources' and/or 'noise_sources')");
  }

  spec.base = scenario_from(config);
  if (const auto r0 = config.get("r0"); r0 && *r0 != "auto") {
    spec.r0 = config.number("r0");
  }
  spec.velocities = config.has("velocities") ? config.number_list("velocities")
                                             : default_velocities();
  if (spec.velocities.empty()) throw ConfigError("velocity list is empty");
  for (double v : spec.velocities) {
    if (!(v > 0.0)) throw ConfigError("velocities must be positive");
  }
  spec.duration = config.number_or("duration", 10.0);
  if (!(spec.duration > 0.0)) throw ConfigError("duration must be positive");
  spec.sample_rate = static_cast<int>(config.integer_or("sample_rate", 32000));
  if (spec.sample_rate <= 0) throw ConfigError("sample_rate must be positive");

  if (require_pipeline) {
    spec.pipeline = pipeline_config_from(config);
    spec.has_pipeline = true;
  }
  return spec;
}

std::size_t required_pre_roll(const ExperimentSpec& spec, double v,
                              std::size_t retained) {
  const double fs = spec.sample_rate;
  const double range =
      spec.r0.value_or(-v * static_cast<double>(retained) / (2.0 * fs));
  const double delay = std::hypot(range, spec.base.z_s + spec.base.z_r) / spec.base.c;
  return static_cast<std::size_t>(std::ceil((delay + kPreRollMargin) * fs));
}

TrimPlan plan_trim(const ExperimentSpec& spec, const SourceSpec& source,
                   std::size_t source_length) {
  TrimPlan plan;
  if (source.wav) {
    // Requirements only shrink as the retained part shortens, so sizing the
    // pre-roll against the whole file is always sufficient.
    for (double v : spec.velocities) {
      plan.pre_roll = std::max(plan.pre_roll, required_pre_roll(spec, v, source_length));
    }
    if (plan.pre_roll >= source_length) {
      throw std::runtime_error("source '" + source.id +
                               "' is too short for the requested geometry");
    }
    plan.retained = source_length - plan.pre_roll;
  } else {
    plan.retained = static_cast<std::size_t>(
        std::llround(spec.duration * static_cast<double>(spec.sample_rate)));
    for (double v : spec.velocities) {
      plan.pre_roll = std::max(plan.pre_roll, required_pre_roll(spec, v, plan.retained));
    }
  }
  return plan;
}

TimeSignal materialize_source(const ExperimentSpec& spec,
                              const SourceSpec& source) {
  if (source.wav) {
    TimeSignal s = load_wav(*source.wav);
    return resample(s, spec.sample_rate);
  }
  const TrimPlan plan = plan_trim(spec, source, 0);
  const double seconds = static_cast<double>(plan.pre_roll + plan.retained) /
                         static_cast<double>(spec.sample_rate);
  return generate_broadband(seconds, spec.sample_rate, source.seed);
}

SimulatedTriple simulate_trimmed(const TimeSignal& full_source,
                                 const ExperimentSpec& spec, double v,
                                 const TrimPlan& plan) {
  if (plan.pre_roll + plan.retained > full_source.size()) {
    throw std::invalid_argument("trim plan exceeds the source length");
  }
  const double fs = full_source.sample_rate;
  const double range_at_start =
      spec.r0.value_or(-v * static_cast<double>(plan.retained) / (2.0 * fs));
  MotionScenario scenario = spec.base;
  scenario.v_s = v;
  scenario.r0 = range_at_start - v * static_cast<double>(plan.pre_roll) / fs;

  const SimulatedTriple full = synthesize_triple(full_source, scenario);
  SimulatedTriple out;
  out.reference = slice(full.reference, plan.pre_roll, plan.retained);
  out.direct = slice(full.direct, plan.pre_roll, plan.retained);
  out.combined = slice(full.combined, plan.pre_roll, plan.retained);
  out.scenario = scenario;
  out.scenario.r0 = range_at_start;
  return out;
}

std::vector<ManifestRow> run_simulate(const ExperimentSpec& spec,
                                      const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::size_t nv = spec.velocities.size();
  std::vector<ManifestRow> rows(spec.sources.size() * nv);
  for (std::size_t si = 0; si < spec.sources.size(); ++si) {
    const SourceSpec& source = spec.sources[si];
    const TimeSignal full = materialize_source(spec, source);
    const TrimPlan plan = plan_trim(spec, source, full.size());
    parallel_for(nv, [&](std::size_t vi) {
      const double v = spec.velocities[vi];
      const SimulatedTriple triple = simulate_trimmed(full, spec, v, plan);
      const std::string stem = source.id + "_v" + velocity_tag(v);
      ManifestRow row;
      row.source_id = source.id;
      row.velocity = v;
      row.reference = out_dir / (stem + "_ref.wav");
      row.direct = out_dir / (stem + "_direct.wav");
      row.combined = out_dir / (stem + "_combined.wav");
      save_wav(triple.reference, row.reference);
      save_wav(triple.direct, row.direct);
      save_wav(triple.combined, row.combined);
      rows[si * nv + vi] = row;
    });
  }
  write_manifest(rows, out_dir / "manifest.csv");
  return rows;
}

void write_manifest(const std::vector<ManifestRow>& rows,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  // Paths are stored relative to the manifest so output trees can move.
  const std::filesystem::path base =
      path.parent_path().empty() ? "." : path.parent_path();
  const auto rel = [&](const std::filesystem::path& p) {
    return p.lexically_proximate(base).generic_string();
  };
  out << "source_id,velocity,ref_path,direct_path,combined_path\n";
  for (const ManifestRow& r : rows) {
    out << r.source_id << ',' << format_number(r.velocity) << ','
        << rel(r.reference) << ',' << rel(r.direct) << ',' << rel(r.combined)
        << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<ManifestRow> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest: " + path.string());
  const std::filesystem::path base = path.parent_path();
  std::vector<ManifestRow> rows;
  std::string line;
  bool header = true;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("source_id", 0) == 0) continue;
    }
    const auto cells = split_csv_line(line);
    if (cells.size() != 5) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_number) +
                               ": expected 5 columns");
    }
    ManifestRow row;
    row.source_id = cells[0];
    try {
      row.velocity = std::stod(cells[1]);
    } catch (const std::exception&) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_number) +
                               ": bad velocity '" + cells[1] + "'");
    }
    const auto resolve = [&](const std::string& p) {
      std::filesystem::path fp(p);
      if (fp.is_relative()) fp = base / fp;
      return fp;
    };
    row.reference = resolve(cells[2]);
    row.direct = resolve(cells[3]);
    row.combined = resolve(cells[4]);
    rows.push_back(row);
  }
  return rows;
}

std::vector<MetricRow> evaluate_triple(const std::string& source_id,
                                       double velocity,
                                       const TimeSignal& reference,
                                       const TimeSignal& direct,
                                       const TimeSignal& combined,
                                       const PipelineConfig& cfg) {
  if (reference.size() != direct.size() || reference.size() != combined.size() ||
      reference.sample_rate != direct.sample_rate ||
      reference.sample_rate != combined.sample_rate) {
    throw std::runtime_error("triple for '" + source_id +
                             "' has mismatched lengths or sample rates");
  }
  const Spectrogram r = stft(reference, cfg.stft);
  const Spectrogram a = stft(direct, cfg.stft);
  const Spectrogram b = stft(combined, cfg.stft);
  const Spectrogram a_f = filter_spectrogram(a, cfg);
  const Spectrogram b_f = filter_spectrogram(b, cfg);

  const auto row = [&](char variant, bool filtered, const Spectrogram& test) {
    MetricRow m;
    m.source_id = source_id;
    m.velocity = velocity;
    m.variant = variant;
    m.filtered = filtered;
    m.report = evaluate(r.magnitude, test.magnitude);
    return m;
  };
  return {row('A', false, a), row('A', true, a_f), row('B', false, b),
          row('B', true, b_f)};
}

std::vector<MetricRow> run_evaluate(const std::vector<ManifestRow>& manifest,
                                    const PipelineConfig& cfg) {
  std::vector<std::vector<MetricRow>> per_row(manifest.size());
  parallel_for(manifest.size(), [&](std::size_t i) {
    const ManifestRow& m = manifest[i];
    for (const auto& p : {m.reference, m.direct, m.combined}) {
      if (!std::filesystem::exists(p)) {
        throw std::runtime_error("missing file referenced by manifest: " + p.string());
      }
    }
    per_row[i] = evaluate_triple(m.source_id, m.velocity, load_wav(m.reference),
                                 load_wav(m.direct), load_wav(m.combined), cfg);
  });
  std::vector<MetricRow> rows;
  rows.reserve(manifest.size() * 4);
  for (auto& block : per_row) {
    rows.insert(rows.end(), block.begin(), block.end());
  }
  return rows;
}

std::vector<SummaryRow> summarize(const std::vector<MetricRow>& rows) {
  std::map<std::tuple<double, char, bool>, SummaryRow> groups;
  for (const MetricRow& r : rows) {
    SummaryRow& s = groups[{r.velocity, r.variant, r.filtered}];
    s.velocity = r.velocity;
    s.variant = r.variant;
    s.filtered = r.filtered;
    s.snr_db += r.report.snr_db;
    s.lsd += r.report.lsd;
    s.is_distance += r.report.is_distance;
    ++s.num_sources;
  }
  std::vector<SummaryRow> out;
  out.reserve(groups.size());
  for (auto& [key, s] : groups) {
    const auto n = static_cast<double>(s.num_sources);
    s.snr_db /= n;
    s.lsd /= n;
    s.is_distance /= n;
    out.push_back(s);
  }
  return out;
}

void write_metrics_csv(const std::vector<MetricRow>& rows,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "source_id,velocity,variant,filtered_flag,snr_db,lsd,is,F,T\n";
  for (const MetricRow& r : rows) {
    out << r.source_id << ',' << format_number(r.velocity) << ',' << r.variant
        << ',' << (r.filtered ? 1 : 0) << ',' << format_number(r.report.snr_db)
        << ',' << format_number(r.report.lsd) << ','
        << format_number(r.report.is_distance) << ',' << r.report.num_bins << ','
        << r.report.num_frames << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_summary_csv(const std::vector<SummaryRow>& rows,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "velocity,variant,filtered_flag,snr_db,lsd,is,num_sources\n";
  for (const SummaryRow& r : rows) {
    out << format_number(r.velocity) << ',' << r.variant << ','
        << (r.filtered ? 1 : 0) << ',' << format_number(r.snr_db) << ','
        << format_number(r.lsd) << ',' << format_number(r.is_distance) << ','
        << r.num_sources << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

SweepResult run_sweep_all(const ExperimentSpec& spec,
                          const std::filesystem::path& out_dir) {
  if (!spec.has_pipeline) {
    throw ConfigError("sweep-all requires the pipeline configuration keys");
  }
  SweepResult result;
  result.manifest = run_simulate(spec, out_dir);
  result.metrics = run_evaluate(result.manifest, spec.pipeline);
  result.summary = summarize(result.metrics);
  write_metrics_csv(result.metrics, out_dir / "metrics.csv");
  write_summary_csv(result.summary, out_dir / "summary.csv");
  return result;
}

}  // namespace cepfilt
