#include "chemo/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "chemo/errors.hpp"
#include "chemo/hypothesis.hpp"
#include "chemo/operators.hpp"

namespace chemo {

const char* const kSnapshotCsvHeader =
    "t,mass,u_min,u_max,v_min,v_max,grad_v_max,lap_v_max";

Snapshot take_snapshot(const State& state, const GridDomain& domain) {
  int ignored;
  return take_snapshot(state, domain, &ignored);
}

Snapshot take_snapshot(const State& state, const GridDomain& domain,
                       int* u_min_cell) {
  Snapshot s;
  s.t = state.time;
  s.mass = nonlocal_mass(state.u, domain);
  s.u_min = state.u[0];
  s.u_max = state.u[0];
  *u_min_cell = 0;
  for (int i = 0; i < domain.num_cells(); ++i) {
    if (state.u[i] < s.u_min) {
      s.u_min = state.u[i];
      *u_min_cell = i;
    }
    s.u_max = std::max(s.u_max, state.u[i]);
  }
  s.v_min = *std::min_element(state.v.begin(), state.v.end());
  s.v_max = *std::max_element(state.v.begin(), state.v.end());
  s.grad_v_max = max_face_gradient(state.v, domain);
  Field lap(state.v.size());
  laplacian_neumann(state.v, domain, lap);
  double m = 0.0;
  for (double x : lap) m = std::max(m, std::abs(x));
  s.lap_v_max = m;
  return s;
}

std::string snapshot_csv_row(const Snapshot& s) {
  std::string row = format_g17(s.t);
  for (double v : {s.mass, s.u_min, s.u_max, s.v_min, s.v_max, s.grad_v_max,
                   s.lap_v_max}) {
    row += ',';
    row += format_g17(v);
  }
  return row;
}

const char* to_string(RunOutcome outcome) {
  switch (outcome) {
    case RunOutcome::kPersistent: return "Persistent";
    case RunOutcome::kExtinctionSuspect: return "ExtinctionSuspect";
    case RunOutcome::kBlowUp: return "BlowUp";
    case RunOutcome::kConverged: return "Converged";
    case RunOutcome::kUndetermined: return "Undetermined";
  }
  return "?";
}

JValue Classification::to_json() const {
  JValue j = JValue::object();
  j.set("outcome", to_string(outcome));
  switch (outcome) {
    case RunOutcome::kPersistent:
      j.set("eta_hat", eta_hat);
      j.set("tau_hat", tau_hat);
      break;
    case RunOutcome::kExtinctionSuspect:
      j.set("tail_min", tail_min);
      break;
    case RunOutcome::kBlowUp:
      j.set("t_blow", t_blow);
      break;
    case RunOutcome::kConverged:
      j.set("steady_error", steady_error);
      j.set("eta_hat", eta_hat);
      break;
    case RunOutcome::kUndetermined:
      break;
  }
  if (!note.empty()) j.set("note", note);
  return j;
}

namespace {

size_t tail_begin_index(const std::vector<Snapshot>& snapshots, double t_start,
                        double t_end, const PersistenceSettings& settings) {
  double tail_from;
  if (settings.window > 0.0)
    tail_from = t_end - settings.window;
  else
    tail_from = t_start + settings.settle_fraction * (t_end - t_start);
  size_t k = 0;
  while (k < snapshots.size() && snapshots[k].t < tail_from) ++k;
  return k;
}

}  // namespace

Classification persistence_verdict(const std::vector<Snapshot>& snapshots,
                                   double t_start, double t_end,
                                   const PersistenceSettings& settings,
                                   const SteadyProbe* probe) {
  settings.validate();
  Classification cls;

  if (probe && probe->final_state) {
    double err = 0.0;
    for (double u : probe->final_state->u)
      err = std::max(err, std::abs(u - probe->u_star));
    for (double v : probe->final_state->v)
      err = std::max(err, std::abs(v - probe->v_star));
    if (err < 1e-4) {
      cls.outcome = RunOutcome::kConverged;
      cls.steady_error = err;
      // still report the tail floor when there is a usable tail
      size_t k = tail_begin_index(snapshots, t_start, t_end, settings);
      if (snapshots.size() - k >= 1) {
        double eta = snapshots[k].u_min;
        for (size_t i = k; i < snapshots.size(); ++i)
          eta = std::min(eta, snapshots[i].u_min);
        cls.eta_hat = eta;
      }
      return cls;
    }
  }

  const size_t k = tail_begin_index(snapshots, t_start, t_end, settings);
  const size_t n_tail = snapshots.size() - k;
  if (n_tail < 10)
    throw InsufficientTail("persistence verdict needs at least 10 tail "
                           "snapshots, got " + std::to_string(n_tail));

  double eta_hat = snapshots[k].u_min;
  double tail_u_max = snapshots[k].u_max;
  for (size_t i = k; i < snapshots.size(); ++i) {
    eta_hat = std::min(eta_hat, snapshots[i].u_min);
    tail_u_max = std::max(tail_u_max, snapshots[i].u_max);
  }

  if (eta_hat >= settings.eta_floor) {
    cls.outcome = RunOutcome::kPersistent;
    cls.eta_hat = eta_hat;
    // earliest time after which u_min never dips below eta_hat again
    double tau_hat = snapshots.front().t;
    for (size_t i = snapshots.size(); i-- > 0;) {
      if (snapshots[i].u_min < eta_hat) {
        tau_hat = i + 1 < snapshots.size() ? snapshots[i + 1].t : t_end;
        break;
      }
    }
    cls.tau_hat = tau_hat;
    return cls;
  }

  cls.outcome = RunOutcome::kExtinctionSuspect;
  cls.tail_min = eta_hat;
  cls.note = tail_u_max >= 10.0 * settings.eta_floor
                 ? "localized: tail u_max stays at " + format_g17(tail_u_max)
                 : "global: tail u_max down to " + format_g17(tail_u_max);
  return cls;
}

JValue BoundChecks::to_json() const {
  JValue j = JValue::object();
  j.set("mass_envelope_ok", mass_envelope_ok);
  j.set("m1_eventual", m1_eventual);
  j.set("m2_eventual", m2_eventual);
  j.set("envelope_m0", envelope_m0);
  j.set("envelope_rate", envelope_rate);
  j.set("envelope_slope", envelope_slope);
  return j;
}

BoundChecks bound_check(const RunRecord& record, double rate, double slope,
                        const PersistenceSettings& settings, double t_start,
                        double t_end) {
  if (!(slope > 0.0))
    throw HypothesisViolated("bound check requires a positive nonlocal margin");
  if (record.snapshots.empty())
    throw PreconditionViolated("bound check needs at least one snapshot");

  BoundChecks b;
  b.envelope_m0 = record.snapshots.front().mass;
  b.envelope_rate = rate;
  b.envelope_slope = slope;
  b.mass_envelope_ok = true;
  for (const Snapshot& s : record.snapshots) {
    double cap =
        logistic_closed_form(rate, slope, b.envelope_m0, s.t - t_start);
    if (s.mass > cap * 1.05) {
      b.mass_envelope_ok = false;
      break;
    }
  }

  size_t k = tail_begin_index(record.snapshots, t_start, t_end, settings);
  if (k >= record.snapshots.size()) k = record.snapshots.size() - 1;
  for (size_t i = k; i < record.snapshots.size(); ++i) {
    b.m1_eventual = std::max(b.m1_eventual, record.snapshots[i].mass);
    b.m2_eventual = std::max(b.m2_eventual, record.snapshots[i].u_max);
  }
  return b;
}

std::string RunRecord::snapshots_csv() const {
  std::string out = kSnapshotCsvHeader;
  out += '\n';
  for (const Snapshot& s : snapshots) {
    out += snapshot_csv_row(s);
    out += '\n';
  }
  return out;
}

JValue RunRecord::to_json(bool include_fields) const {
  JValue j = JValue::object();
  j.set("config_hash", config_hash);
  j.set("classification", classification.to_json());
  if (bound_checks)
    j.set("bound_checks", bound_checks->to_json());
  else
    j.set("bound_checks", JValue());
  j.set("h2_margin_local", h2_margin_local);
  j.set("h2_margin_nonlocal", h2_margin_nonlocal);
  if (!notes.empty()) j.set("notes", notes);

  JValue snaps = JValue::array();
  for (size_t i = 0; i < snapshots.size(); ++i) {
    const Snapshot& s = snapshots[i];
    JValue row = JValue::array();
    for (double v : {s.t, s.mass, s.u_min, s.u_max, s.v_min, s.v_max,
                     s.grad_v_max, s.lap_v_max})
      row.push(v);
    if (i < u_min_cells.size()) row.push(u_min_cells[i]);
    snaps.push(std::move(row));
  }
  JValue snap_block = JValue::object();
  snap_block.set("columns",
                 std::string(kSnapshotCsvHeader) + ",u_min_cell");
  snap_block.set("rows", std::move(snaps));
  j.set("snapshots", std::move(snap_block));

  if (include_fields) {
    JValue fin = JValue::object();
    fin.set("time", final_state.time);
    fin.set("u", JValue::array_of(final_state.u));
    fin.set("v", JValue::array_of(final_state.v));
    j.set("final_state", std::move(fin));
  }
  return j;
}

}  // namespace chemo
