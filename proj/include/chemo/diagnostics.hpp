#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chemo/grid.hpp"
#include "chemo/jout.hpp"
#include "chemo/run_config.hpp"
#include "chemo/state.hpp"

namespace chemo {

// Scalar diagnostics of one state. CSV column order is fixed:
// t,mass,u_min,u_max,v_min,v_max,grad_v_max,lap_v_max
struct Snapshot {
  double t = 0.0;
  double mass = 0.0;
  double u_min = 0.0;
  double u_max = 0.0;
  double v_min = 0.0;
  double v_max = 0.0;
  double grad_v_max = 0.0;
  double lap_v_max = 0.0;
};

Snapshot take_snapshot(const State& state, const GridDomain& domain);
// Same, also reporting the cell index attaining min u.
Snapshot take_snapshot(const State& state, const GridDomain& domain,
                       int* u_min_cell);

extern const char* const kSnapshotCsvHeader;
std::string snapshot_csv_row(const Snapshot& s);

enum class RunOutcome {
  kPersistent,
  kExtinctionSuspect,
  kBlowUp,
  kConverged,
  kUndetermined,
};

const char* to_string(RunOutcome outcome);

struct Classification {
  RunOutcome outcome = RunOutcome::kUndetermined;
  double eta_hat = 0.0;       // tail floor of min_x u
  double tau_hat = 0.0;       // earliest time after which u_min stays >= eta_hat
  double tail_min = 0.0;      // ExtinctionSuspect: min over tail of u_min
  double t_blow = 0.0;        // BlowUp
  double steady_error = 0.0;  // Converged
  std::string note;

  JValue to_json() const;
};

// Convergence probe handed to the classifier when a constant-coefficient
// steady state exists: the final state is compared against (u*, v*).
struct SteadyProbe {
  double u_star = 0.0;
  double v_star = 0.0;
  const State* final_state = nullptr;
};

// Empirical persistence classifier. The tail is the trailing part of the
// run selected by `settings`; eta_hat is the tail floor of u_min. Throws
// InsufficientTail with fewer than 10 tail snapshots. When `probe` is
// given and the final state sits within 1e-4 of the steady state, the
// verdict is Converged regardless of eta_hat.
Classification persistence_verdict(const std::vector<Snapshot>& snapshots,
                                   double t_start, double t_end,
                                   const PersistenceSettings& settings,
                                   const SteadyProbe* probe = nullptr);

struct BoundChecks {
  bool mass_envelope_ok = false;
  double m1_eventual = 0.0;  // max tail mass
  double m2_eventual = 0.0;  // max tail sup-norm of u
  double envelope_m0 = 0.0;
  double envelope_rate = 0.0;   // a0_sup
  double envelope_slope = 0.0;  // margin / |Omega|

  JValue to_json() const;
};

struct RunRecord {
  std::string config_hash;
  std::vector<Snapshot> snapshots;
  std::vector<int> u_min_cells;  // argmin cell per snapshot
  Classification classification;
  std::optional<BoundChecks> bound_checks;
  State final_state;
  GridDomain domain;
  double h2_margin_local = 0.0;
  double h2_margin_nonlocal = 0.0;
  std::string notes;

  std::string snapshots_csv() const;
  JValue to_json(bool include_fields = true) const;
};

// Compares the recorded mass trajectory against the logistic envelope
// started from the first snapshot's mass (5% slack for discretization);
// also reports the eventual mass/sup bounds over the classifier tail.
// `rate` and `slope` are the envelope ODE parameters; slope must be > 0.
BoundChecks bound_check(const RunRecord& record, double rate, double slope,
                        const PersistenceSettings& settings, double t_start,
                        double t_end);

}  // namespace chemo
