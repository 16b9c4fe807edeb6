#include "chemo/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "chemo/errors.hpp"
#include "chemo/hypothesis.hpp"
#include "chemo/stepper.hpp"

namespace chemo {

namespace {

constexpr double kDtCollapse = 1e-12;

void describe_tail_minimum(RunRecord& rec, const GridDomain& dom) {
  if (rec.snapshots.empty()) return;
  size_t best = 0;
  for (size_t i = 1; i < rec.snapshots.size(); ++i)
    if (rec.snapshots[i].u_min < rec.snapshots[best].u_min) best = i;
  const int cell = rec.u_min_cells[best];
  const int i = cell % dom.cells[0];
  const int j = dom.dimension == 2 ? cell / dom.cells[0] : 0;
  std::string loc = "x=" + format_g17(dom.center(0, i));
  if (dom.dimension == 2) loc += ", y=" + format_g17(dom.center(1, j));
  rec.notes = "minimum of u over all snapshots: " +
              format_g17(rec.snapshots[best].u_min) + " at t=" +
              format_g17(rec.snapshots[best].t) + ", " + loc;
}

}  // namespace

RunRecord simulate(const RunConfig& config, const std::vector<Monitor>& monitors) {
  config.validate();
  const GridDomain& dom = config.domain;

  RunRecord rec;
  rec.config_hash = config.hash();
  rec.domain = dom;

  HypothesisReport h2 = check_h2(config.params, config.coeffs, dom,
                                 config.t_start, config.t_end);
  rec.h2_margin_local = h2.margin_local;
  rec.h2_margin_nonlocal = h2.margin_nonlocal;

  State state = make_initial_data(config.initial, dom, config.t_start);
  StencilWorkspace ws(dom);

  const double record_every = config.effective_record_every();
  const double t_span = config.t_end - config.t_start;

  auto record = [&](const State& s) {
    int cell = 0;
    Snapshot snap = take_snapshot(s, dom, &cell);
    rec.snapshots.push_back(snap);
    rec.u_min_cells.push_back(cell);
    for (const Monitor& m : monitors) m(s, snap);
  };

  record(state);

  bool blew_up = sup_norm(state.u) > config.blowup_threshold;
  double t_blow = config.t_start;
  int next_record = 1;
  long steps_total = 0, steps_reduced = 0;

  if (!blew_up) {
    double t = config.t_start;
    while (t < config.t_end) {
      const double t_next_record =
          std::min(config.t_end, config.t_start + next_record * record_every);
      double dt = stable_dt(state, dom, config.params, config.coeffs, t,
                            config.dt_max, config.cfl_safety, config.scheme, ws);
      if (dt < kDtCollapse) {
        blew_up = true;  // step collapse counts as the blow-up proxy
        t_blow = t;
        record(state);
        break;
      }
      bool hit_record = false;
      if (t + dt >= t_next_record - 1e-14 * std::max(1.0, std::abs(t_next_record))) {
        dt = t_next_record - t;
        hit_record = true;
      }
      StepOutcome out = step(state, t, dt, config.params, config.coeffs, dom,
                             config.scheme, config.blowup_threshold, ws);
      out.flags.dt_reduced = dt < config.cfl_safety * config.dt_max && !hit_record;
      ++steps_total;
      if (out.flags.dt_reduced) ++steps_reduced;
      state = std::move(out.state);
      t = hit_record ? t_next_record : t + dt;
      state.time = t;
      if (hit_record) {
        record(state);
        ++next_record;
      }
      if (out.flags.blowup_detected) {
        blew_up = true;
        t_blow = t;
        if (!hit_record) record(state);
        break;
      }
    }
  }

  rec.final_state = state;
  describe_tail_minimum(rec, dom);
  if (steps_reduced > 0)
    rec.notes += "; stability limits reduced dt on " +
                 std::to_string(steps_reduced) + " of " +
                 std::to_string(steps_total) + " steps";

  if (blew_up) {
    rec.classification.outcome = RunOutcome::kBlowUp;
    rec.classification.t_blow = t_blow;
  } else {
    std::optional<std::pair<double, double>> steady =
        t_span > 0.0 ? try_steady_state(config.params, config.coeffs, dom)
                     : std::nullopt;
    SteadyProbe probe;
    const SteadyProbe* probe_ptr = nullptr;
    if (steady) {
      probe.u_star = steady->first;
      probe.v_star = steady->second;
      probe.final_state = &rec.final_state;
      probe_ptr = &probe;
    }
    try {
      rec.classification =
          persistence_verdict(rec.snapshots, config.t_start, config.t_end,
                              config.persistence, probe_ptr);
    } catch (const InsufficientTail&) {
      rec.classification.outcome = RunOutcome::kUndetermined;
      rec.classification.note = "tail too short to classify";
    }
  }

  if (rec.h2_margin_nonlocal > 0.0 && t_span > 0.0) {
    CoefficientExtrema e0 = coefficient_extrema(config.coeffs[0], dom,
                                                config.t_start, config.t_end);
    rec.bound_checks = bound_check(
        rec, e0.a_sup, rec.h2_margin_nonlocal / dom.measure(),
        config.persistence, config.t_start, config.t_end);
  }

  return rec;
}

}  // namespace chemo
