#pragma once

#include "chemo/coefficient.hpp"
#include "chemo/grid.hpp"
#include "chemo/params.hpp"
#include "chemo/run_config.hpp"
#include "chemo/state.hpp"
#include "chemo/tridiag.hpp"

namespace chemo {

struct StepFlags {
  bool ok = true;
  bool dt_reduced = false;
  bool blowup_detected = false;
};

struct StepOutcome {
  State state;
  double dt_used = 0.0;
  StepFlags flags;
};

// Reusable buffers plus the coefficients of the current implicit-diffusion
// factorization (rebuilt when dt changes). One workspace serves one run at
// a time; distinct runs need distinct workspaces.
class StencilWorkspace {
 public:
  explicit StencilWorkspace(const GridDomain& domain);

  const GridDomain& domain() const { return domain_; }

  Field a0, a1, a2;   // coefficient samples at the step's start time
  Field chem;         // chemotaxis term
  Field lap;          // explicit Laplacian scratch
  Field u_star;       // post-advection/reaction stage
  Field rhs;          // implicit solve right-hand side
  Field sweep;        // ADI intermediate
  std::vector<double> line_in, line_out;  // strided gather/scatter
  TridiagScratch tri;

  // Fills a0/a1/a2 at time t. Constant coefficient sets are filled once
  // and reused, and repeated calls at the same t are skipped, so a
  // workspace must not be shared across different coefficient sets.
  void evaluate_coefficients(const CoefficientSet& coeffs, double t);

 private:
  GridDomain domain_;
  bool constants_cached_ = false;
  bool have_last_t_ = false;
  double last_t_ = 0.0;
};

// Largest stable step at the current state, never above dt_max:
//   cfl_safety * min(dt_max, advective CFL, reaction limit,
//                    [explicit only] diffusion limits for u and v).
// The reaction limit uses the spatial sup of |a_i| at the current time; all
// denominators carry a machine floor so inactive limits drop out.
double stable_dt(const State& state, const GridDomain& domain,
                 const ModelParams& params, const CoefficientSet& coeffs,
                 double t, double dt_max, double cfl_safety, Scheme scheme,
                 StencilWorkspace& ws);

// One step of the first-order splitting:
//   1. explicit chemotaxis + logistic reaction on u, with the nonlocal
//      integral frozen at the step start;
//   2. implicit (backward Euler) diffusion solve for u — tridiagonal in
//      1D, factored direction sweeps in 2D;
//   3. v-update with implicit diffusion + decay and explicit source:
//      (tau/dt + lambda - Lap) v_new = (tau/dt) v_old + mu u_new.
// Fully explicit mode folds the diffusion terms into stage 1 instead.
// Undershoots below -1e-13 * ||u||_inf raise PositivityViolation; smaller
// ones are clamped to zero. Sets the blow-up flag when ||u_new||_inf
// exceeds blowup_threshold.
StepOutcome step(const State& state, double t, double dt,
                 const ModelParams& params, const CoefficientSet& coeffs,
                 const GridDomain& domain, Scheme scheme,
                 double blowup_threshold, StencilWorkspace& ws);

}  // namespace chemo
