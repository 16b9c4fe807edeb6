#pragma once

#include <functional>
#include <vector>

#include "chemo/diagnostics.hpp"
#include "chemo/run_config.hpp"

namespace chemo {

using Monitor = std::function<void(const State&, const Snapshot&)>;

// Drives stable_dt + step from t_start to t_end, snapshotting every
// record_every time units (landing on the recording instants exactly) and
// once more at the end. Stops early with a BlowUp classification when the
// threshold trips or dt collapses below 1e-12. The returned record embeds
// the H2 margins and, when the nonlocal margin is positive, the mass
// envelope checks.
RunRecord simulate(const RunConfig& config,
                   const std::vector<Monitor>& monitors = {});

}  // namespace chemo
