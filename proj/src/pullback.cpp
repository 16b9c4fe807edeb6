#include "chemo/pullback.hpp"

#include <algorithm>

#include "chemo/errors.hpp"
#include "chemo/simulate.hpp"

namespace chemo {

PullbackResult run_pullback(const RunConfig& base,
                            const std::vector<double>& depths) {
  if (depths.empty()) throw ConfigError("pullback: need at least one depth");
  for (size_t i = 0; i < depths.size(); ++i) {
    if (!(depths[i] > 0.0))
      throw ConfigError("pullback: depths must be positive");
    if (i > 0 && !(depths[i] > depths[i - 1]))
      throw ConfigError("pullback: depths must be strictly increasing");
  }

  {  // the pulled-back data must have a strictly positive u floor
    State probe = make_initial_data(base.initial, base.domain, 0.0);
    double floor = *std::min_element(probe.u.begin(), probe.u.end());
    if (!(floor > 0.0))
      throw PreconditionViolated("pullback: initial u must be strictly positive");
  }

  PullbackResult result;
  result.config_hash = base.hash();
  result.depths = depths;

  for (double depth : depths) {
    RunConfig cfg = base;
    cfg.t_start = -depth;
    cfg.t_end = 0.0;
    RunRecord rec = simulate(cfg);
    if (rec.classification.outcome == RunOutcome::kBlowUp)
      throw Error("pullback: run from depth " + format_g17(depth) + " blew up");
    result.states_at_zero.push_back(rec.final_state);
  }

  for (size_t i = 0; i + 1 < result.states_at_zero.size(); ++i)
    result.cauchy_gaps.push_back(
        sup_distance(result.states_at_zero[i], result.states_at_zero[i + 1]));

  const Field& deepest_u = result.states_at_zero.back().u;
  result.eta_entire = *std::min_element(deepest_u.begin(), deepest_u.end());

  result.gaps_decreasing = !result.cauchy_gaps.empty();
  for (size_t i = 0; i + 1 < result.cauchy_gaps.size(); ++i)
    if (!(result.cauchy_gaps[i + 1] < result.cauchy_gaps[i]))
      result.gaps_decreasing = false;
  result.final_gap =
      result.cauchy_gaps.empty() ? 0.0 : result.cauchy_gaps.back();
  return result;
}

JValue PullbackResult::to_json(bool include_fields) const {
  JValue j = JValue::object();
  j.set("config_hash", config_hash);
  j.set("depths", JValue::array_of(depths));
  j.set("cauchy_gaps", JValue::array_of(cauchy_gaps));
  j.set("eta_entire", eta_entire);
  j.set("gaps_decreasing", gaps_decreasing);
  j.set("final_gap", final_gap);
  if (include_fields) {
    JValue states = JValue::array();
    for (const State& s : states_at_zero) {
      JValue st = JValue::object();
      st.set("time", s.time);
      st.set("u", JValue::array_of(s.u));
      st.set("v", JValue::array_of(s.v));
      states.push(std::move(st));
    }
    j.set("states_at_zero", std::move(states));
  }
  return j;
}

}  // namespace chemo
