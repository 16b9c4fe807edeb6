#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chemo/coefficient.hpp"
#include "chemo/grid.hpp"
#include "chemo/initial_data.hpp"
#include "chemo/params.hpp"

namespace chemo {

enum class Scheme { kImex, kFullyExplicit };

const char* to_string(Scheme scheme);

// Settings for the empirical persistence classifier. The tail of a run is
// either the trailing `window` time units (when window > 0) or the last
// (1 - settle_fraction) of the run.
struct PersistenceSettings {
  double eta_floor = 1e-6;
  double settle_fraction = 0.5;
  double window = 0.0;

  void validate() const;
};

struct RunConfig {
  ModelParams params;
  CoefficientSet coeffs;  // a0, a1, a2
  GridDomain domain;
  InitialSpec initial = UniformInit{};
  double t_start = 0.0;
  double t_end = 1.0;
  double dt_max = 0.05;
  double cfl_safety = 0.9;
  Scheme scheme = Scheme::kImex;
  double record_every = 0.0;  // 0: pick (t_end - t_start)/100
  double blowup_threshold = 1e6;
  PersistenceSettings persistence;
  // Optional (q, C_{q+1}) pairs for condition H1; the constants are
  // user-supplied, never computed here.
  std::vector<std::pair<double, double>> c_gamma_table;

  void validate() const;  // throws ConfigError
  double effective_record_every() const;

  // Canonical flat rendering of every field; equal configs produce equal
  // text. Basis of the provenance hash embedded in artifacts.
  std::string canonical_text() const;
  std::string hash() const;  // 16 hex chars, FNV-1a over canonical_text
};

std::string fnv1a_hex(const std::string& bytes);

}  // namespace chemo
