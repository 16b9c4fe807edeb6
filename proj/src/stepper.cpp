#include "chemo/stepper.hpp"

#include <algorithm>
#include <cmath>

#include "chemo/errors.hpp"
#include "chemo/jout.hpp"
#include "chemo/operators.hpp"

namespace chemo {

namespace {

constexpr double kDenomFloor = 1e-300;
constexpr double kClampTolerance = 1e-13;

double abs_sup(const Field& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

// Clamps tiny negative undershoots to zero; anything below
// -kClampTolerance * scale is a scheme defect. Also rejects non-finite
// entries and returns the new sup-norm.
double enforce_positivity(Field& f, double scale, const char* what) {
  const double floor = -kClampTolerance * std::max(scale, 1e-30);
  double sup = 0.0;
  for (double& x : f) {
    if (!std::isfinite(x))
      throw NonFiniteValue(std::string(what) + ": non-finite value produced");
    if (x < 0.0) {
      if (x < floor)
        throw PositivityViolation(std::string(what) +
                                  ": undershoot " + format_g17(x) +
                                  " below clamp tolerance");
      x = 0.0;
    }
    sup = std::max(sup, x);
  }
  return sup;
}

// Implicit diffusion solve (I - dt*Lap) out = rhs with reflected-ghost
// boundaries; 2D uses the factored form (I - dt*Lx)(I - dt*Ly).
void solve_u_diffusion(const Field& rhs, double dt, const GridDomain& dom,
                       StencilWorkspace& ws, Field& out) {
  if (dom.dimension == 1) {
    const double r = dt / (dom.spacing(0) * dom.spacing(0));
    solve_symmetric_tridiag(1.0 + 2.0 * r, 1.0 + r, r, dom.cells[0],
                            rhs.data(), out.data(), ws.tri);
    return;
  }
  const int nx = dom.cells[0], ny = dom.cells[1];
  const double rx = dt / (dom.spacing(0) * dom.spacing(0));
  const double ry = dt / (dom.spacing(1) * dom.spacing(1));
  // x sweep (rows are contiguous)
  for (int j = 0; j < ny; ++j)
    solve_symmetric_tridiag(1.0 + 2.0 * rx, 1.0 + rx, rx, nx,
                            rhs.data() + dom.index(0, j),
                            ws.sweep.data() + dom.index(0, j), ws.tri);
  // y sweep (gather strided columns)
  ws.line_in.resize(ny);
  ws.line_out.resize(ny);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) ws.line_in[j] = ws.sweep[dom.index(i, j)];
    solve_symmetric_tridiag(1.0 + 2.0 * ry, 1.0 + ry, ry, ny, ws.line_in.data(),
                            ws.line_out.data(), ws.tri);
    for (int j = 0; j < ny; ++j) out[dom.index(i, j)] = ws.line_out[j];
  }
}

// Helmholtz solve (c - Lap) out = rhs, c > 0; 2D uses the factored form
// (1/c)(c - Lx)(c - Ly), i.e. the first sweep takes c*rhs.
void solve_v_helmholtz(const Field& rhs, double c, const GridDomain& dom,
                       StencilWorkspace& ws, Field& out) {
  if (dom.dimension == 1) {
    const double s = 1.0 / (dom.spacing(0) * dom.spacing(0));
    solve_symmetric_tridiag(c + 2.0 * s, c + s, s, dom.cells[0], rhs.data(),
                            out.data(), ws.tri);
    return;
  }
  const int nx = dom.cells[0], ny = dom.cells[1];
  const double sx = 1.0 / (dom.spacing(0) * dom.spacing(0));
  const double sy = 1.0 / (dom.spacing(1) * dom.spacing(1));
  ws.line_in.resize(std::max(nx, ny));
  ws.line_out.resize(std::max(nx, ny));
  for (int j = 0; j < ny; ++j) {
    const double* src = rhs.data() + dom.index(0, j);
    for (int i = 0; i < nx; ++i) ws.line_in[i] = c * src[i];
    solve_symmetric_tridiag(c + 2.0 * sx, c + sx, sx, nx, ws.line_in.data(),
                            ws.sweep.data() + dom.index(0, j), ws.tri);
  }
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) ws.line_in[j] = ws.sweep[dom.index(i, j)];
    solve_symmetric_tridiag(c + 2.0 * sy, c + sy, sy, ny, ws.line_in.data(),
                            ws.line_out.data(), ws.tri);
    for (int j = 0; j < ny; ++j) out[dom.index(i, j)] = ws.line_out[j];
  }
}

}  // namespace

StencilWorkspace::StencilWorkspace(const GridDomain& domain) : domain_(domain) {
  domain_.validate();
  const size_t n = static_cast<size_t>(domain_.num_cells());
  a0.assign(n, 0.0);
  a1.assign(n, 0.0);
  a2.assign(n, 0.0);
  chem.assign(n, 0.0);
  lap.assign(n, 0.0);
  u_star.assign(n, 0.0);
  rhs.assign(n, 0.0);
  sweep.assign(n, 0.0);
}

void StencilWorkspace::evaluate_coefficients(const CoefficientSet& coeffs,
                                             double t) {
  if (constants_cached_) return;
  if (have_last_t_ && t == last_t_) return;
  coeffs[0].evaluate_on_grid(t, domain_, a0);
  coeffs[1].evaluate_on_grid(t, domain_, a1);
  coeffs[2].evaluate_on_grid(t, domain_, a2);
  constants_cached_ = coeffs[0].is_constant() && coeffs[1].is_constant() &&
                      coeffs[2].is_constant();
  have_last_t_ = true;
  last_t_ = t;
}

double stable_dt(const State& state, const GridDomain& domain,
                 const ModelParams& params, const CoefficientSet& coeffs,
                 double t, double dt_max, double cfl_safety, Scheme scheme,
                 StencilWorkspace& ws) {
  double dt = dt_max;

  // advective CFL from the face drift chi * grad v
  if (params.chi != 0.0) {
    double denom = 0.0;
    if (domain.dimension == 1) {
      denom = std::abs(params.chi) * max_face_gradient(state.v, domain) /
              domain.spacing(0);
    } else {
      // per-direction face gradients
      const int nx = domain.cells[0], ny = domain.cells[1];
      const double hx = domain.spacing(0), hy = domain.spacing(1);
      double gx = 0.0, gy = 0.0;
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i + 1 < nx; ++i) {
          const int c = domain.index(i, j);
          gx = std::max(gx, std::abs(state.v[c + 1] - state.v[c]) / hx);
        }
      for (int j = 0; j + 1 < ny; ++j)
        for (int i = 0; i < nx; ++i) {
          const int c = domain.index(i, j);
          gy = std::max(gy,
                        std::abs(state.v[domain.index(i, j + 1)] - state.v[c]) / hy);
        }
      denom = std::abs(params.chi) * (gx / hx + gy / hy);
    }
    dt = std::min(dt, 1.0 / std::max(denom, kDenomFloor));
  }

  // reaction limit from the instantaneous coefficient magnitudes
  ws.evaluate_coefficients(coeffs, t);
  const double u_sup = abs_sup(state.u);
  const double mass = nonlocal_mass(state.u, domain);
  const double denom_r = abs_sup(ws.a0) + abs_sup(ws.a1) * u_sup +
                         abs_sup(ws.a2) * std::abs(mass);
  dt = std::min(dt, 1.0 / std::max(denom_r, kDenomFloor));

  if (scheme == Scheme::kFullyExplicit) {
    double inv_h2_sum = 0.0;
    for (int d = 0; d < domain.dimension; ++d)
      inv_h2_sum += 1.0 / (domain.spacing(d) * domain.spacing(d));
    dt = std::min(dt, 1.0 / (2.0 * inv_h2_sum));                      // u
    dt = std::min(dt, params.tau / (2.0 * inv_h2_sum + params.lambda));  // v
  }

  return cfl_safety * dt;
}

StepOutcome step(const State& state, double t, double dt,
                 const ModelParams& params, const CoefficientSet& coeffs,
                 const GridDomain& domain, Scheme scheme,
                 double blowup_threshold, StencilWorkspace& ws) {
  if (!(dt > 0.0)) throw PreconditionViolated("step: dt must be positive");
  const int n = domain.num_cells();

  ws.evaluate_coefficients(coeffs, t);
  const double mass = nonlocal_mass(state.u, domain);
  const double u_scale = abs_sup(state.u);
  const double v_scale = abs_sup(state.v);

  chemotaxis_divergence(state.u, state.v, domain, params.chi, ws.chem);

  StepOutcome out;
  out.dt_used = dt;
  out.state.time = t + dt;
  out.state.u.assign(n, 0.0);
  out.state.v.assign(n, 0.0);

  // stage 1: explicit chemotaxis + reaction (plus diffusion when explicit)
  if (scheme == Scheme::kFullyExplicit) {
    laplacian_neumann(state.u, domain, ws.lap);
    for (int i = 0; i < n; ++i) {
      const double growth =
          ws.a0[i] - ws.a1[i] * state.u[i] - ws.a2[i] * mass;
      ws.u_star[i] =
          state.u[i] + dt * (ws.lap[i] + ws.chem[i] + state.u[i] * growth);
    }
    out.state.u = ws.u_star;
  } else {
    for (int i = 0; i < n; ++i) {
      const double growth =
          ws.a0[i] - ws.a1[i] * state.u[i] - ws.a2[i] * mass;
      ws.u_star[i] = state.u[i] + dt * (ws.chem[i] + state.u[i] * growth);
    }
    // stage 2: implicit diffusion
    solve_u_diffusion(ws.u_star, dt, domain, ws, out.state.u);
  }
  const double u_new_sup = enforce_positivity(out.state.u, u_scale, "u");

  // stage 3: v with implicit diffusion + decay, explicit source mu*u_new
  if (scheme == Scheme::kFullyExplicit) {
    laplacian_neumann(state.v, domain, ws.lap);
    for (int i = 0; i < n; ++i)
      out.state.v[i] =
          state.v[i] + dt / params.tau *
                           (ws.lap[i] - params.lambda * state.v[i] +
                            params.mu * out.state.u[i]);
  } else {
    const double c = params.tau / dt + params.lambda;
    for (int i = 0; i < n; ++i)
      ws.rhs[i] = params.tau / dt * state.v[i] + params.mu * out.state.u[i];
    solve_v_helmholtz(ws.rhs, c, domain, ws, out.state.v);
  }
  enforce_positivity(out.state.v, v_scale, "v");

  out.flags.ok = true;
  out.flags.blowup_detected = u_new_sup > blowup_threshold;
  return out;
}

}  // namespace chemo
