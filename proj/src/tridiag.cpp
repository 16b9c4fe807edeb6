#include "chemo/tridiag.hpp"

namespace chemo {

void solve_symmetric_tridiag(double diag, double diag_edge, double off, int n,
                             const double* rhs, double* x,
                             TridiagScratch& scratch) {
  scratch.upper.resize(static_cast<size_t>(n));
  double* c = scratch.upper.data();

  // forward elimination
  double beta = diag_edge;
  c[0] = -off / beta;
  x[0] = rhs[0] / beta;
  for (int i = 1; i < n; ++i) {
    const double b = (i == n - 1) ? diag_edge : diag;
    beta = b + off * c[i - 1];
    c[i] = -off / beta;
    x[i] = (rhs[i] + off * x[i - 1]) / beta;
  }

  // back substitution
  for (int i = n - 2; i >= 0; --i) x[i] -= c[i] * x[i + 1];
}

}  // namespace chemo
