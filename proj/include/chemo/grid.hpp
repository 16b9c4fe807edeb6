#pragma once

#include <array>
#include <vector>

namespace chemo {

using Field = std::vector<double>;

// Rectangular domain (0,L1) or (0,L1)x(0,L2) with a uniform cell-centered
// grid. Cell centers x_i = (i+1/2)h lie strictly inside the domain, so
// zero-flux boundaries are realized exactly by ghost reflection.
struct GridDomain {
  int dimension = 1;
  std::array<double, 2> lengths{1.0, 0.0};
  std::array<int, 2> cells{0, 0};

  static GridDomain line(double length, int n_cells);
  static GridDomain rectangle(double lx, double ly, int nx, int ny);

  double spacing(int axis) const { return lengths[axis] / cells[axis]; }
  double center(int axis, int i) const { return (i + 0.5) * spacing(axis); }

  double measure() const {
    return dimension == 1 ? lengths[0] : lengths[0] * lengths[1];
  }
  double cell_volume() const {
    return dimension == 1 ? spacing(0) : spacing(0) * spacing(1);
  }
  int num_cells() const {
    return dimension == 1 ? cells[0] : cells[0] * cells[1];
  }
  int index(int i, int j = 0) const { return j * cells[0] + i; }

  bool same_shape(const GridDomain& other) const;

  // Throws ConfigError on non-positive lengths, fewer than 4 cells per
  // axis, or a dimension outside {1,2}.
  void validate() const;
};

}  // namespace chemo
