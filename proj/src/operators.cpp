#include "chemo/operators.hpp"

#include <cmath>

namespace chemo {

void laplacian_neumann(std::span<const double> f, const GridDomain& domain,
                       std::span<double> out) {
  if (domain.dimension == 1) {
    const int n = domain.cells[0];
    const double inv_h2 = 1.0 / (domain.spacing(0) * domain.spacing(0));
    for (int i = 0; i < n; ++i) {
      const double left = f[i > 0 ? i - 1 : 0];          // reflected ghost
      const double right = f[i < n - 1 ? i + 1 : n - 1];
      out[i] = (left - 2.0 * f[i] + right) * inv_h2;
    }
    return;
  }
  const int nx = domain.cells[0], ny = domain.cells[1];
  const double inv_hx2 = 1.0 / (domain.spacing(0) * domain.spacing(0));
  const double inv_hy2 = 1.0 / (domain.spacing(1) * domain.spacing(1));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int c = domain.index(i, j);
      const double w = f[domain.index(i > 0 ? i - 1 : 0, j)];
      const double e = f[domain.index(i < nx - 1 ? i + 1 : nx - 1, j)];
      const double s = f[domain.index(i, j > 0 ? j - 1 : 0)];
      const double n = f[domain.index(i, j < ny - 1 ? j + 1 : ny - 1)];
      out[c] = (w - 2.0 * f[c] + e) * inv_hx2 + (s - 2.0 * f[c] + n) * inv_hy2;
    }
  }
}

namespace {

inline double upwind_flux(double w, double u_left, double u_right) {
  return w >= 0.0 ? w * u_left : w * u_right;
}

}  // namespace

void chemotaxis_divergence(std::span<const double> u, std::span<const double> v,
                           const GridDomain& domain, double chi,
                           std::span<double> out) {
  const int n_cells = domain.num_cells();
  if (chi == 0.0) {
    for (int i = 0; i < n_cells; ++i) out[i] = 0.0;
    return;
  }
  if (domain.dimension == 1) {
    const int n = domain.cells[0];
    const double h = domain.spacing(0);
    double flux_left = 0.0;  // boundary face
    for (int i = 0; i < n; ++i) {
      double flux_right = 0.0;
      if (i < n - 1) {
        const double w = chi * (v[i + 1] - v[i]) / h;
        flux_right = upwind_flux(w, u[i], u[i + 1]);
      }
      out[i] = -(flux_right - flux_left) / h;
      flux_left = flux_right;
    }
    return;
  }
  const int nx = domain.cells[0], ny = domain.cells[1];
  const double hx = domain.spacing(0), hy = domain.spacing(1);
  for (int j = 0; j < ny; ++j) {
    double flux_w = 0.0;
    for (int i = 0; i < nx; ++i) {
      const int c = domain.index(i, j);
      double flux_e = 0.0;
      if (i < nx - 1) {
        const double w = chi * (v[c + 1] - v[c]) / hx;
        flux_e = upwind_flux(w, u[c], u[c + 1]);
      }
      out[c] = -(flux_e - flux_w) / hx;
      flux_w = flux_e;
    }
  }
  for (int i = 0; i < nx; ++i) {
    double flux_s = 0.0;
    for (int j = 0; j < ny; ++j) {
      const int c = domain.index(i, j);
      double flux_n = 0.0;
      if (j < ny - 1) {
        const double w = chi * (v[domain.index(i, j + 1)] - v[c]) / hy;
        flux_n = upwind_flux(w, u[c], u[domain.index(i, j + 1)]);
      }
      out[c] -= (flux_n - flux_s) / hy;
      flux_s = flux_n;
    }
  }
}

double nonlocal_mass(std::span<const double> u, const GridDomain& domain) {
  double sum = 0.0;  // fixed-order reduction
  for (double x : u) sum += x;
  return sum * domain.cell_volume();
}

double max_face_gradient(std::span<const double> v, const GridDomain& domain) {
  double m = 0.0;
  if (domain.dimension == 1) {
    const int n = domain.cells[0];
    const double h = domain.spacing(0);
    for (int i = 0; i + 1 < n; ++i) m = std::max(m, std::abs(v[i + 1] - v[i]) / h);
    return m;
  }
  const int nx = domain.cells[0], ny = domain.cells[1];
  const double hx = domain.spacing(0), hy = domain.spacing(1);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i) {
      const int c = domain.index(i, j);
      m = std::max(m, std::abs(v[c + 1] - v[c]) / hx);
    }
  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int c = domain.index(i, j);
      m = std::max(m, std::abs(v[domain.index(i, j + 1)] - v[c]) / hy);
    }
  return m;
}

}  // namespace chemo
