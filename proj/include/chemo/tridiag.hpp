#pragma once

#include <vector>

namespace chemo {

// Thomas algorithm for the symmetric constant-stencil systems arising from
// implicit diffusion with reflected (zero-flux) boundaries:
//
//   (diag_edge) x_0   - off x_1                       = d_0
//   -off x_{i-1} + diag x_i - off x_{i+1}             = d_i
//                       - off x_{n-2} + diag_edge x_{n-1} = d_{n-1}
//
// The matrix is strictly diagonally dominant for off > 0, diag >= 2*off,
// so no pivoting is needed. `scratch` is reused across solves.
struct TridiagScratch {
  std::vector<double> upper;  // eliminated superdiagonal
};

void solve_symmetric_tridiag(double diag, double diag_edge, double off, int n,
                             const double* rhs, double* x,
                             TridiagScratch& scratch);

}  // namespace chemo
