#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chemo/coefficient.hpp"
#include "chemo/grid.hpp"
#include "chemo/jout.hpp"
#include "chemo/params.hpp"

namespace chemo {

inline constexpr int kDefaultTimeSamples = 401;

// Coefficient extrema over a time window and the closed domain,
// approximated by exhaustive sampling at the grid node lattice (boundary
// included) and uniformly spaced time levels; exact for constants.
struct CoefficientExtrema {
  double a_inf = 0.0;
  double a_sup = 0.0;
  std::vector<double> t_samples;  // sampled times, ascending
  std::vector<double> inf_t;      // inf over x at each sampled time
  std::vector<double> sup_t;      // sup over x at each sampled time
  int n_space = 0;

  void validate() const;
};

CoefficientExtrema coefficient_extrema(const CoefficientField& coeff,
                                       const GridDomain& domain, double t_a,
                                       double t_b,
                                       int n_time_samples = kDefaultTimeSamples);

// Shared second condition of H1 and H2:
//   inf_t ( a1_inf(t) - |Omega| * neg(a2_inf(t)) )
double nonlocal_margin(const CoefficientExtrema& a1,
                       const CoefficientExtrema& a2, double measure);

struct HypothesisReport {
  std::string which;  // "H1" or "H2"
  bool satisfied = false;
  double margin_local = 0.0;
  double margin_nonlocal = 0.0;
  bool tau_is_one = true;    // H2 only
  bool domain_convex = true; // rectangles always
  std::string notes;
  // echoed inputs
  double chi = 0.0, mu = 0.0, tau = 0.0;
  int dimension = 1;
  double measure = 0.0;
  double a1_inf = 0.0;
  std::vector<std::pair<double, double>> c_gamma_table;  // H1 only

  JValue to_json() const;
};

HypothesisReport check_h2(const ModelParams& params, const CoefficientSet& coeffs,
                          const GridDomain& domain, double t_a, double t_b,
                          int n_time_samples = kDefaultTimeSamples);

HypothesisReport check_h1(const ModelParams& params, const CoefficientSet& coeffs,
                          const GridDomain& domain, double t_a, double t_b,
                          const std::vector<std::pair<double, double>>& c_gamma_table,
                          int n_time_samples = kDefaultTimeSamples);

struct TheoreticalBounds {
  double m_tilde_1 = 0.0;  // asymptotic cap on the total mass
  double m1 = 0.0;         // m_tilde_1 + 1
  std::optional<std::pair<double, double>> steady_state;  // (u*, v*)

  JValue to_json() const;
};

// Mass cap |Omega| a0_sup / inf_t(a1_inf(t) - |Omega| neg(a2_inf(t))).
// Throws HypothesisViolated when the denominator is not positive. Attaches
// the constant-coefficient steady state when one exists.
TheoreticalBounds mass_bound_m_tilde(const ModelParams& params,
                                     const CoefficientSet& coeffs,
                                     const GridDomain& domain, double t_a,
                                     double t_b,
                                     int n_time_samples = kDefaultTimeSamples);

// Closed-form solution of y' = y (rate - slope * y), y(0) = m0, at time t.
double logistic_closed_form(double rate, double slope, double m0, double t);

// Envelope y(t) for the total mass: y' = y (a0_sup - (c/|Omega|) y) with
// c the nonlocal margin. Requires c > 0.
double logistic_mass_envelope(const CoefficientSet& coeffs,
                              const GridDomain& domain, double t_a, double t_b,
                              double m0, double t,
                              int n_time_samples = kDefaultTimeSamples);

// (u*, v*) = (a0/(a1 + a2 |Omega|), (mu/lambda) u*) for constant
// coefficients; throws NotConstantCoefficients / DegenerateDenominator.
std::pair<double, double> constant_coeff_steady_state(const ModelParams& params,
                                                      const CoefficientSet& coeffs,
                                                      const GridDomain& domain);

// Steady state when all coefficients are constant and the denominator is
// positive, otherwise nullopt. Never throws.
std::optional<std::pair<double, double>> try_steady_state(
    const ModelParams& params, const CoefficientSet& coeffs,
    const GridDomain& domain);

}  // namespace chemo
