#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "chemo/diagnostics.hpp"
#include "chemo/grid.hpp"
#include "chemo/params.hpp"
#include "chemo/run_config.hpp"

namespace chemo {

// Sampled Neumann heat kernel eigenmode exp(-(k pi/L)^2 t) cos(k pi x/L).
Field heat_eigenmode_solution(int k, double t, const GridDomain& domain);
// 2D tensor product of per-axis modes.
Field heat_eigenmode_solution(int kx, int ky, double t, const GridDomain& domain);

// Exact solution of the chi = 0 spatially homogeneous system with constant
// coefficients: u follows the logistic closed form, v integrates
// tau v' = -lambda v + mu u(t) by adaptive quadrature of the integrating-
// factor formula (absolute tolerance 1e-10). Requires a1 + a2 |Omega| > 0.
std::pair<double, double> decoupled_homogeneous_solution(
    const ModelParams& params, double a0, double a1, double a2, double measure,
    double u0, double v0, double t);

// Independent reference: the same problem on a refine_space-times finer
// grid, integrated fully explicitly with dt = refine_time * the explicit
// diffusion limit of the fine grid, then restricted back to the original
// grid by exact cell averaging. Throws BudgetExceeded above 2^18 fine
// cells. Deliberately a different integrator from the main path.
RunRecord brute_force_reference(const RunConfig& config, int refine_space,
                                double refine_time = 1.0 / 64.0);

// Exact block average of a fine cell-centered field onto the coarse grid;
// fine cell counts must be integer multiples of the coarse ones.
Field restrict_by_averaging(const Field& fine, const GridDomain& fine_domain,
                            const GridDomain& coarse_domain);

struct OracleCaseResult {
  std::string name;
  std::string quantity;
  std::string config_hash;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

// Runs the standard oracle suite against the goldens file. With
// `regenerate`, measured values are written back and diffs reported.
// Returns true when every case passes.
bool run_oracle_suite(const std::string& goldens_path, bool regenerate,
                      std::ostream& out,
                      std::vector<OracleCaseResult>* results = nullptr);

}  // namespace chemo
