#include "chemo/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chemo/errors.hpp"

namespace chemo {

namespace {

double neg_part(double a) { return a < 0.0 ? -a : 0.0; }

}  // namespace

void CoefficientExtrema::validate() const {
  for (size_t k = 0; k < t_samples.size(); ++k) {
    if (!(a_inf <= inf_t[k] && inf_t[k] <= sup_t[k] && sup_t[k] <= a_sup))
      throw Error("coefficient extrema tables are inconsistent");
  }
}

CoefficientExtrema coefficient_extrema(const CoefficientField& coeff,
                                       const GridDomain& domain, double t_a,
                                       double t_b, int n_time_samples) {
  domain.validate();
  if (!(t_b >= t_a)) throw ConfigError("extrema: empty time window");

  CoefficientExtrema ex;
  ex.n_space = domain.num_cells();

  if (coeff.is_constant()) {
    double c = coeff.constant_value();
    ex.a_inf = ex.a_sup = c;
    ex.t_samples = {t_a};
    ex.inf_t = {c};
    ex.sup_t = {c};
    return ex;
  }

  int nt = coeff.time_dependent() ? std::max(2, n_time_samples) : 1;
  if (t_b == t_a) nt = 1;

  // Extrema are taken over the closed domain, so sample the node lattice
  // (grid faces including the boundary) rather than the cell centers.
  const int nx = domain.cells[0] + 1;
  const int ny = domain.dimension == 2 ? domain.cells[1] + 1 : 1;
  ex.n_space = nx * ny;
  ex.a_inf = std::numeric_limits<double>::infinity();
  ex.a_sup = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < nt; ++k) {
    double t = nt == 1 ? t_a : t_a + (t_b - t_a) * k / (nt - 1);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < ny; ++j) {
      const double y = domain.dimension == 2 ? j * domain.spacing(1) : 0.0;
      for (int i = 0; i < nx; ++i) {
        const double v = coeff.evaluate(t, i * domain.spacing(0), y);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    ex.t_samples.push_back(t);
    ex.inf_t.push_back(lo);
    ex.sup_t.push_back(hi);
    ex.a_inf = std::min(ex.a_inf, lo);
    ex.a_sup = std::max(ex.a_sup, hi);
  }
  return ex;
}

double nonlocal_margin(const CoefficientExtrema& a1,
                       const CoefficientExtrema& a2, double measure) {
  // Combine the per-time tables on the union of both sample sets; a
  // constant coefficient contributes the same value at every time.
  auto inf_at = [](const CoefficientExtrema& ex, size_t k) {
    return ex.inf_t.size() == 1 ? ex.inf_t[0] : ex.inf_t[k];
  };
  size_t n = std::max(a1.inf_t.size(), a2.inf_t.size());
  double margin = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < n; ++k)
    margin = std::min(margin, inf_at(a1, k) - measure * neg_part(inf_at(a2, k)));
  return margin;
}

JValue HypothesisReport::to_json() const {
  JValue j = JValue::object();
  j.set("which", which);
  j.set("satisfied", satisfied);
  j.set("margin_local", margin_local);
  j.set("margin_nonlocal", margin_nonlocal);
  if (which == "H2") {
    j.set("tau_is_one", tau_is_one);
    j.set("domain_convex", domain_convex);
  }
  JValue inputs = JValue::object();
  inputs.set("chi", chi);
  inputs.set("mu", mu);
  inputs.set("tau", tau);
  inputs.set("dimension", dimension);
  inputs.set("measure", measure);
  inputs.set("a1_inf", a1_inf);
  if (!c_gamma_table.empty()) {
    JValue table = JValue::array();
    for (const auto& [q, c] : c_gamma_table) {
      JValue row = JValue::object();
      row.set("q", q);
      row.set("c", c);
      table.push(std::move(row));
    }
    inputs.set("c_gamma_table", std::move(table));
  }
  j.set("inputs", std::move(inputs));
  j.set("notes", notes);
  return j;
}

namespace {

HypothesisReport base_report(const ModelParams& params, const CoefficientSet& coeffs,
                             const GridDomain& domain, double t_a, double t_b,
                             int n_time_samples) {
  HypothesisReport rep;
  rep.chi = params.chi;
  rep.mu = params.mu;
  rep.tau = params.tau;
  rep.dimension = params.dimension;
  rep.measure = domain.measure();
  CoefficientExtrema e1 =
      coefficient_extrema(coeffs[1], domain, t_a, t_b, n_time_samples);
  CoefficientExtrema e2 =
      coefficient_extrema(coeffs[2], domain, t_a, t_b, n_time_samples);
  rep.a1_inf = e1.a_inf;
  rep.margin_nonlocal = nonlocal_margin(e1, e2, domain.measure());
  return rep;
}

}  // namespace

HypothesisReport check_h2(const ModelParams& params, const CoefficientSet& coeffs,
                          const GridDomain& domain, double t_a, double t_b,
                          int n_time_samples) {
  params.validate();
  HypothesisReport rep =
      base_report(params, coeffs, domain, t_a, t_b, n_time_samples);
  rep.which = "H2";
  rep.margin_local =
      rep.a1_inf - params.dimension * params.mu * std::abs(params.chi) / 4.0;
  rep.tau_is_one = params.tau == 1.0;
  rep.domain_convex = true;  // rectangles only
  rep.satisfied = rep.margin_local > 0.0 && rep.margin_nonlocal > 0.0 &&
                  rep.tau_is_one && rep.domain_convex;
  if (!rep.tau_is_one)
    rep.notes = "H2 requires tau = 1; this configuration has tau = " +
                format_g17(params.tau) + ".";
  return rep;
}

HypothesisReport check_h1(const ModelParams& params, const CoefficientSet& coeffs,
                          const GridDomain& domain, double t_a, double t_b,
                          const std::vector<std::pair<double, double>>& c_gamma_table,
                          int n_time_samples) {
  params.validate();
  if (c_gamma_table.empty())
    throw EmptyConstantTable(
        "H1 needs at least one user-supplied (q, C_{q+1}) pair; the maximal "
        "regularity constants are not computed here");
  const double q_min = std::max(1.0, params.dimension / 2.0);
  for (const auto& [q, c] : c_gamma_table) {
    if (!(q > q_min))
      throw ConfigError("H1 table: q must exceed max(1, n/2)");
    if (!(c > 0.0)) throw ConfigError("H1 table: constants must be positive");
  }

  HypothesisReport rep =
      base_report(params, coeffs, domain, t_a, t_b, n_time_samples);
  rep.which = "H1";
  rep.c_gamma_table = c_gamma_table;

  double threshold = std::numeric_limits<double>::infinity();
  for (const auto& [q, c] : c_gamma_table) {
    double factor = (q - 1.0) / q * std::pow(c, 1.0 / (q + 1.0)) *
                    std::pow(params.mu, 1.0 / (q + 1.0));
    threshold = std::min(threshold, factor);
  }
  rep.margin_local = rep.a1_inf - threshold * std::abs(params.chi);
  rep.satisfied = rep.margin_local > 0.0 && rep.margin_nonlocal > 0.0;
  rep.notes =
      "The regularity constants C_{q+1} are user-supplied, not computed; the "
      "infimum over q is taken over the supplied table only, so an "
      "unsatisfied verdict may be a false negative.";
  return rep;
}

double logistic_closed_form(double rate, double slope, double m0, double t) {
  if (m0 == 0.0) return 0.0;
  if (rate > 0.0) {
    const double capacity = rate / slope;
    return capacity / (1.0 + ((capacity - m0) / m0) * std::exp(-rate * t));
  }
  if (rate == 0.0) return m0 / (1.0 + slope * m0 * t);
  const double e = std::exp(rate * t);
  return rate * m0 * e / (rate + slope * m0 * (e - 1.0));
}

namespace {

struct EnvelopeParams {
  double rate;   // a0_sup
  double slope;  // margin / |Omega|
};

EnvelopeParams envelope_params(const CoefficientSet& coeffs,
                               const GridDomain& domain, double t_a, double t_b,
                               int n_time_samples) {
  CoefficientExtrema e0 =
      coefficient_extrema(coeffs[0], domain, t_a, t_b, n_time_samples);
  CoefficientExtrema e1 =
      coefficient_extrema(coeffs[1], domain, t_a, t_b, n_time_samples);
  CoefficientExtrema e2 =
      coefficient_extrema(coeffs[2], domain, t_a, t_b, n_time_samples);
  double margin = nonlocal_margin(e1, e2, domain.measure());
  if (!(margin > 0.0))
    throw HypothesisViolated(
        "mass envelope undefined: inf_t(a1_inf(t) - |Omega| (a2_inf(t))_-) = " +
        format_g17(margin) + " <= 0");
  return {e0.a_sup, margin / domain.measure()};
}

}  // namespace

TheoreticalBounds mass_bound_m_tilde(const ModelParams& params,
                                     const CoefficientSet& coeffs,
                                     const GridDomain& domain, double t_a,
                                     double t_b, int n_time_samples) {
  EnvelopeParams env = envelope_params(coeffs, domain, t_a, t_b, n_time_samples);
  TheoreticalBounds b;
  b.m_tilde_1 = env.rate / env.slope;  // |Omega| a0_sup / margin
  b.m1 = b.m_tilde_1 + 1.0;
  b.steady_state = try_steady_state(params, coeffs, domain);
  return b;
}

double logistic_mass_envelope(const CoefficientSet& coeffs,
                              const GridDomain& domain, double t_a, double t_b,
                              double m0, double t, int n_time_samples) {
  if (m0 < 0.0) throw PreconditionViolated("mass envelope: m0 must be >= 0");
  if (t < 0.0) throw PreconditionViolated("mass envelope: t must be >= 0");
  EnvelopeParams env = envelope_params(coeffs, domain, t_a, t_b, n_time_samples);
  return logistic_closed_form(env.rate, env.slope, m0, t);
}

std::pair<double, double> constant_coeff_steady_state(const ModelParams& params,
                                                      const CoefficientSet& coeffs,
                                                      const GridDomain& domain) {
  params.validate();
  for (const auto& c : coeffs)
    if (!c.is_constant())
      throw NotConstantCoefficients(
          "steady state requires constant a0, a1, a2");
  const double a0 = coeffs[0].constant_value();
  const double a1 = coeffs[1].constant_value();
  const double a2 = coeffs[2].constant_value();
  const double denom = a1 + a2 * domain.measure();
  if (!(denom > 0.0))
    throw DegenerateDenominator("steady state undefined: a1 + a2 |Omega| <= 0");
  const double u_star = a0 / denom;
  return {u_star, params.mu / params.lambda * u_star};
}

std::optional<std::pair<double, double>> try_steady_state(
    const ModelParams& params, const CoefficientSet& coeffs,
    const GridDomain& domain) {
  for (const auto& c : coeffs)
    if (!c.is_constant()) return std::nullopt;
  const double a1 = coeffs[1].constant_value();
  const double a2 = coeffs[2].constant_value();
  if (!(a1 + a2 * domain.measure() > 0.0)) return std::nullopt;
  return constant_coeff_steady_state(params, coeffs, domain);
}

JValue TheoreticalBounds::to_json() const {
  JValue j = JValue::object();
  j.set("m_tilde_1", m_tilde_1);
  j.set("m1", m1);
  if (steady_state) {
    JValue s = JValue::object();
    s.set("u_star", steady_state->first);
    s.set("v_star", steady_state->second);
    j.set("steady_state", std::move(s));
  } else {
    j.set("steady_state", JValue());
  }
  return j;
}

}  // namespace chemo
