#pragma once

#include <vector>

#include "chemo/jout.hpp"
#include "chemo/run_config.hpp"
#include "chemo/state.hpp"

namespace chemo {

// Approximation of an entire solution by pullback: the same initial data
// is imposed at start times -n for increasing depths n and integrated to
// t = 0. Decreasing sup-gaps between consecutive states at 0 indicate
// convergence; eta_entire is the floor of u at t = 0 from the deepest run.
struct PullbackResult {
  std::string config_hash;
  std::vector<double> depths;
  std::vector<State> states_at_zero;
  std::vector<double> cauchy_gaps;  // size = depths.size() - 1
  double eta_entire = 0.0;
  bool gaps_decreasing = false;
  double final_gap = 0.0;

  JValue to_json(bool include_fields = true) const;
};

// Requires strictly increasing positive depths and initial data with a
// strictly positive u floor; the config's time window is overridden to
// [-n, 0] per depth.
PullbackResult run_pullback(const RunConfig& base,
                            const std::vector<double>& depths);

}  // namespace chemo
