#pragma once

#include <string>
#include <vector>

#include "chemo/config_file.hpp"
#include "chemo/diagnostics.hpp"

namespace chemo {

// One sweep axis: a config key path ("section.key", e.g. "model.chi") and
// the raw values substituted at that key.
struct SweepAxis {
  std::string path;
  std::vector<std::string> values;
};

struct SweepSpec {
  ConfigDoc base;            // config document without the [sweep] section
  std::string base_dir;      // for relative tabulated paths
  std::vector<SweepAxis> axes;
  int parallelism = 1;
  std::size_t budget = 10000;
  std::string output_dir;

  std::size_t total_points() const;
  void validate() const;
};

SweepSpec parse_sweep_spec(const ConfigDoc& doc, const std::string& base_dir);
SweepSpec load_sweep_spec(const std::string& path);

struct SweepPoint {
  std::size_t index = 0;
  std::vector<std::string> axis_values;
  RunRecord record;
  double margin_local = 0.0;
  double margin_nonlocal = 0.0;
  std::string error;  // non-empty when the run failed
};

struct SweepResult {
  std::vector<std::string> axis_paths;
  std::vector<SweepPoint> points;        // ordered by index
  double uniform_eta_hat = 0.0;          // min eta_hat over Persistent points
  std::size_t persistent_count = 0;

  // Fixed header: index, axis paths, margins, classification, eta_hat,
  // m1_eventual, m2_eventual. Byte-stable regardless of parallelism.
  std::string phase_csv() const;
  JValue summary_json() const;
};

// Runs the cartesian product over the axes (last axis fastest), in a
// worker pool of the spec's parallelism (overridable); results are merged
// in index order so the output is independent of the worker count.
SweepResult run_sweep(const SweepSpec& spec, int parallelism_override = 0);

// Builds the config for one point (also used to re-run a point in isolation).
RunConfig sweep_point_config(const SweepSpec& spec,
                             const std::vector<std::size_t>& axis_index);

}  // namespace chemo
