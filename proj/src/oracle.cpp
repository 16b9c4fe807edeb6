#include "chemo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <json.hpp>

#include "chemo/errors.hpp"
#include "chemo/hypothesis.hpp"
#include "chemo/jout.hpp"
#include "chemo/simulate.hpp"

namespace chemo {

Field heat_eigenmode_solution(int k, double t, const GridDomain& domain) {
  if (domain.dimension != 1)
    throw PreconditionViolated("1D eigenmode requested on a 2D grid");
  if (k < 0) throw PreconditionViolated("eigenmode index must be >= 0");
  const double L = domain.lengths[0];
  const double decay = std::exp(-(k * M_PI / L) * (k * M_PI / L) * t);
  Field f(domain.num_cells());
  for (int i = 0; i < domain.cells[0]; ++i)
    f[i] = decay * std::cos(k * M_PI * domain.center(0, i) / L);
  return f;
}

Field heat_eigenmode_solution(int kx, int ky, double t, const GridDomain& domain) {
  if (domain.dimension != 2)
    throw PreconditionViolated("2D eigenmode requested on a 1D grid");
  if (kx < 0 || ky < 0) throw PreconditionViolated("eigenmode index must be >= 0");
  const double lx = domain.lengths[0], ly = domain.lengths[1];
  const double rate = (kx * M_PI / lx) * (kx * M_PI / lx) +
                      (ky * M_PI / ly) * (ky * M_PI / ly);
  const double decay = std::exp(-rate * t);
  Field f(domain.num_cells());
  for (int j = 0; j < domain.cells[1]; ++j)
    for (int i = 0; i < domain.cells[0]; ++i)
      f[domain.index(i, j)] = decay *
                              std::cos(kx * M_PI * domain.center(0, i) / lx) *
                              std::cos(ky * M_PI * domain.center(1, j) / ly);
  return f;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double fa, double m, double fm, double b, double fb,
                        double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (b <= a) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, fa, m, fm, b, fb, whole, tol, 48);
}

}  // namespace

std::pair<double, double> decoupled_homogeneous_solution(
    const ModelParams& params, double a0, double a1, double a2, double measure,
    double u0, double v0, double t) {
  params.validate();
  const double slope = a1 + a2 * measure;
  if (!(slope > 0.0))
    throw PreconditionViolated("decoupled solution needs a1 + a2 |Omega| > 0");
  if (u0 < 0.0 || v0 < 0.0 || t < 0.0)
    throw PreconditionViolated("decoupled solution needs u0, v0, t >= 0");

  auto u_of = [&](double s) { return logistic_closed_form(a0, slope, u0, s); };
  const double u_t = u_of(t);

  // tau v' = -lambda v + mu u  =>
  // v(t) = v0 e^{-lambda t/tau} + (mu/tau) \int_0^t e^{-lambda (t-s)/tau} u(s) ds
  const double lam = params.lambda / params.tau;
  auto integrand = [&](double s) { return std::exp(-lam * (t - s)) * u_of(s); };
  const double v_t =
      v0 * std::exp(-lam * t) + params.mu / params.tau * integrate(integrand, 0.0, t, 1e-10);
  return {u_t, v_t};
}

Field restrict_by_averaging(const Field& fine, const GridDomain& fine_domain,
                            const GridDomain& coarse_domain) {
  if (fine_domain.dimension != coarse_domain.dimension)
    throw PreconditionViolated("restriction: dimension mismatch");
  int factor[2] = {1, 1};
  for (int d = 0; d < fine_domain.dimension; ++d) {
    if (fine_domain.cells[d] % coarse_domain.cells[d] != 0)
      throw PreconditionViolated("restriction: grids are not nested");
    factor[d] = fine_domain.cells[d] / coarse_domain.cells[d];
  }
  Field out(coarse_domain.num_cells(), 0.0);
  if (fine_domain.dimension == 1) {
    const double inv = 1.0 / factor[0];
    for (int i = 0; i < coarse_domain.cells[0]; ++i) {
      double sum = 0.0;
      for (int a = 0; a < factor[0]; ++a) sum += fine[i * factor[0] + a];
      out[i] = sum * inv;
    }
    return out;
  }
  const double inv = 1.0 / (factor[0] * factor[1]);
  for (int j = 0; j < coarse_domain.cells[1]; ++j)
    for (int i = 0; i < coarse_domain.cells[0]; ++i) {
      double sum = 0.0;
      for (int b = 0; b < factor[1]; ++b)
        for (int a = 0; a < factor[0]; ++a)
          sum += fine[fine_domain.index(i * factor[0] + a, j * factor[1] + b)];
      out[coarse_domain.index(i, j)] = sum * inv;
    }
  return out;
}

RunRecord brute_force_reference(const RunConfig& config, int refine_space,
                                double refine_time) {
  if (refine_space < 1)
    throw PreconditionViolated("brute force: refine_space must be >= 1");
  if (!(refine_time > 0.0))
    throw PreconditionViolated("brute force: refine_time must be positive");

  RunConfig fine = config;
  fine.domain.cells[0] = config.domain.cells[0] * refine_space;
  if (config.domain.dimension == 2)
    fine.domain.cells[1] = config.domain.cells[1] * refine_space;
  if (fine.domain.num_cells() > (1 << 18))
    throw BudgetExceeded("brute force: refined grid exceeds 2^18 cells");

  double inv_h2_sum = 0.0;
  for (int d = 0; d < fine.domain.dimension; ++d)
    inv_h2_sum += 1.0 / (fine.domain.spacing(d) * fine.domain.spacing(d));
  const double limit_u = 1.0 / (2.0 * inv_h2_sum);
  const double limit_v =
      config.params.tau / (2.0 * inv_h2_sum + config.params.lambda);

  fine.scheme = Scheme::kFullyExplicit;
  fine.dt_max = refine_time * std::min(limit_u, limit_v);
  fine.cfl_safety = 1.0;

  RunRecord rec = simulate(fine);
  State coarse_final;
  coarse_final.time = rec.final_state.time;
  coarse_final.u = restrict_by_averaging(rec.final_state.u, fine.domain,
                                         config.domain);
  coarse_final.v = restrict_by_averaging(rec.final_state.v, fine.domain,
                                         config.domain);
  rec.final_state = std::move(coarse_final);
  rec.domain = config.domain;
  return rec;
}

namespace {

RunConfig pure_diffusion_eigenmode_config(int n_cells) {
  RunConfig cfg;
  cfg.params = {.chi = 0.0, .tau = 1.0, .lambda = 1.0, .mu = 1.0, .dimension = 1};
  for (int i = 0; i < 3; ++i)
    cfg.coeffs[i] =
        CoefficientField::constant(0.0, static_cast<CoefficientLabel>(i));
  cfg.domain = GridDomain::line(1.0, n_cells);
  cfg.initial = CosineInit{.base = 1.0, .amplitude = 0.5, .mode = 1, .v_value = 1.0};
  cfg.t_start = 0.0;
  cfg.t_end = 0.1;
  cfg.dt_max = 5e-4;
  cfg.cfl_safety = 1.0;
  cfg.record_every = 0.05;
  return cfg;
}

RunConfig decoupled_logistic_config() {
  RunConfig cfg;
  cfg.params = {.chi = 0.0, .tau = 1.0, .lambda = 1.0, .mu = 1.0, .dimension = 1};
  cfg.coeffs[0] = CoefficientField::constant(1.0, CoefficientLabel::a0);
  cfg.coeffs[1] = CoefficientField::constant(1.0, CoefficientLabel::a1);
  cfg.coeffs[2] = CoefficientField::constant(0.0, CoefficientLabel::a2);
  cfg.domain = GridDomain::line(1.0, 64);
  cfg.initial = UniformInit{.u = 2.0, .v = 0.0};
  cfg.t_start = 0.0;
  cfg.t_end = 20.0;
  cfg.dt_max = 0.05;
  cfg.cfl_safety = 0.9;
  cfg.record_every = 0.5;
  return cfg;
}

RunConfig smoke_config(int n_cells) {
  RunConfig cfg;
  cfg.params = {.chi = 1.0, .tau = 1.0, .lambda = 1.0, .mu = 1.0, .dimension = 1};
  cfg.coeffs[0] = CoefficientField::constant(1.0, CoefficientLabel::a0);
  cfg.coeffs[1] = CoefficientField::constant(1.0, CoefficientLabel::a1);
  cfg.coeffs[2] = CoefficientField::constant(0.0, CoefficientLabel::a2);
  cfg.domain = GridDomain::line(1.0, n_cells);
  cfg.initial = CosineInit{.base = 1.0, .amplitude = 0.5, .mode = 1, .v_value = 1.0};
  cfg.t_start = 0.0;
  cfg.t_end = 1.0;
  cfg.dt_max = 0.25 / n_cells;
  cfg.cfl_safety = 0.9;
  cfg.record_every = 0.25;
  return cfg;
}

struct CaseSpec {
  std::string name;
  std::string quantity;
  std::string config_hash;
  double hard_cap;  // absolute cap on the measured value, 0 = none
  std::function<double()> measure;
};

std::vector<CaseSpec> standard_cases() {
  std::vector<CaseSpec> cases;

  {
    RunConfig cfg = pure_diffusion_eigenmode_config(128);
    cases.push_back(
        {"heat_eigenmode_decay", "relative_sup_error_vs_exact", cfg.hash(), 0.01,
         [cfg]() {
           RunRecord rec = simulate(cfg);
           Field mode = heat_eigenmode_solution(1, cfg.t_end, cfg.domain);
           const double amp = 0.5 * std::exp(-M_PI * M_PI * cfg.t_end);
           double err = 0.0;
           for (int i = 0; i < cfg.domain.num_cells(); ++i)
             err = std::max(err,
                            std::abs(rec.final_state.u[i] - (1.0 + 0.5 * mode[i])));
           return err / amp;
         }});
  }

  {
    RunConfig cfg = decoupled_logistic_config();
    cases.push_back(
        {"decoupled_logistic_t20", "sup_error_vs_closed_form", cfg.hash(), 1e-6,
         [cfg]() {
           RunRecord rec = simulate(cfg);
           auto [ue, ve] = decoupled_homogeneous_solution(
               cfg.params, 1.0, 1.0, 0.0, cfg.domain.measure(), 2.0, 0.0,
               cfg.t_end);
           double err = 0.0;
           for (int i = 0; i < cfg.domain.num_cells(); ++i) {
             err = std::max(err, std::abs(rec.final_state.u[i] - ue));
             err = std::max(err, std::abs(rec.final_state.v[i] - ve));
           }
           return err;
         }});
  }

  cases.push_back(
      {"decoupled_v_limit", "abs_error_vs_equilibrium",
       fnv1a_hex("decoupled_v_limit:a0=1,a1=1,a2=0,mu=1,lambda=1,u0=2,v0=0,t=50"),
       1e-9, []() {
         ModelParams p{.chi = 0.0, .tau = 1.0, .lambda = 1.0, .mu = 1.0,
                       .dimension = 1};
         auto [ue, ve] =
             decoupled_homogeneous_solution(p, 1.0, 1.0, 0.0, 1.0, 2.0, 0.0, 50.0);
         (void)ue;
         return std::abs(ve - 1.0);
       }});

  {
    RunConfig cfg = pure_diffusion_eigenmode_config(128);
    cases.push_back(
        {"bruteforce_linear", "sup_error_vs_exact", cfg.hash(), 1e-4, [cfg]() {
          RunRecord ref = brute_force_reference(cfg, 4, 1.0 / 8.0);
          Field mode = heat_eigenmode_solution(1, cfg.t_end, cfg.domain);
          double err = 0.0;
          for (int i = 0; i < cfg.domain.num_cells(); ++i)
            err = std::max(err,
                           std::abs(ref.final_state.u[i] - (1.0 + 0.5 * mode[i])));
          return err;
        }});
  }

  {
    RunConfig cfg = smoke_config(64);
    cases.push_back(
        {"smoke_imex_vs_reference", "sup_error_vs_reference", cfg.hash(), 1e-2,
         [cfg]() {
           RunRecord coarse = simulate(cfg);
           RunRecord ref = brute_force_reference(cfg, 4, 1.0 / 8.0);
           return sup_distance(coarse.final_state.u, ref.final_state.u);
         }});
  }

  return cases;
}

struct GoldenEntry {
  std::string config_hash;
  std::string quantity;
  double value = 0.0;
  double tolerance = 0.0;
};

std::map<std::string, GoldenEntry> load_goldens(const std::string& path) {
  std::map<std::string, GoldenEntry> out;
  std::ifstream in(path);
  if (!in) return out;
  nlohmann::json j;
  try {
    in >> j;
    for (const auto& c : j.at("cases")) {
      GoldenEntry e;
      e.config_hash = c.at("config_hash").get<std::string>();
      e.quantity = c.at("quantity").get<std::string>();
      e.value = c.at("value").get<double>();
      e.tolerance = c.at("tolerance").get<double>();
      out[c.at("name").get<std::string>()] = e;
    }
  } catch (const std::exception& e) {
    throw ConfigError(std::string("goldens file '") + path + "': " + e.what());
  }
  return out;
}

void save_goldens(const std::string& path,
                  const std::vector<OracleCaseResult>& results) {
  JValue doc = JValue::object();
  JValue cases = JValue::array();
  for (const auto& r : results) {
    JValue c = JValue::object();
    c.set("name", r.name);
    c.set("config_hash", r.config_hash);
    c.set("quantity", r.quantity);
    c.set("value", r.value);
    c.set("tolerance", r.tolerance);
    cases.push(std::move(c));
  }
  doc.set("cases", std::move(cases));
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write goldens file '" + path + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace

bool run_oracle_suite(const std::string& goldens_path, bool regenerate,
                      std::ostream& out,
                      std::vector<OracleCaseResult>* results_out) {
  std::map<std::string, GoldenEntry> goldens = load_goldens(goldens_path);
  std::vector<OracleCaseResult> results;
  bool all_ok = true;

  for (const CaseSpec& spec : standard_cases()) {
    OracleCaseResult r;
    r.name = spec.name;
    r.quantity = spec.quantity;
    r.config_hash = spec.config_hash;
    r.value = spec.measure();
    r.tolerance = std::max(1e-12, 1e-6 * std::abs(r.value));
    r.passed = true;

    if (spec.hard_cap > 0.0 && !(r.value <= spec.hard_cap)) {
      r.passed = false;
      r.detail = "value " + format_g17(r.value) + " exceeds cap " +
                 format_g17(spec.hard_cap);
    }

    if (!regenerate) {
      auto it = goldens.find(spec.name);
      if (it == goldens.end()) {
        r.passed = false;
        r.detail = "no golden recorded; run with --regenerate";
      } else if (it->second.config_hash != spec.config_hash) {
        r.passed = false;
        r.detail = "config hash changed (" + it->second.config_hash + " -> " +
                   spec.config_hash + "); run with --regenerate";
      } else if (std::abs(r.value - it->second.value) > it->second.tolerance) {
        r.passed = false;
        r.detail = "value " + format_g17(r.value) + " differs from golden " +
                   format_g17(it->second.value) + " beyond tolerance " +
                   format_g17(it->second.tolerance);
      }
    } else {
      auto it = goldens.find(spec.name);
      if (it != goldens.end() && std::abs(r.value - it->second.value) > 0.0)
        r.detail = "golden updated: " + format_g17(it->second.value) + " -> " +
                   format_g17(r.value);
      else if (it == goldens.end())
        r.detail = "golden created";
    }

    all_ok = all_ok && r.passed;
    out << (r.passed ? "PASS" : "FAIL") << " " << r.name << " (" << r.quantity
        << " = " << format_g17(r.value) << ")";
    if (!r.detail.empty()) out << " -- " << r.detail;
    out << "\n";
    results.push_back(std::move(r));
  }

  if (regenerate) save_goldens(goldens_path, results);
  if (results_out) *results_out = std::move(results);
  return all_ok;
}

}  // namespace chemo
