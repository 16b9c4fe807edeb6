#include "chemo/grid.hpp"

#include "chemo/errors.hpp"

namespace chemo {

GridDomain GridDomain::line(double length, int n_cells) {
  GridDomain d;
  d.dimension = 1;
  d.lengths = {length, 0.0};
  d.cells = {n_cells, 0};
  d.validate();
  return d;
}

GridDomain GridDomain::rectangle(double lx, double ly, int nx, int ny) {
  GridDomain d;
  d.dimension = 2;
  d.lengths = {lx, ly};
  d.cells = {nx, ny};
  d.validate();
  return d;
}

bool GridDomain::same_shape(const GridDomain& other) const {
  return dimension == other.dimension && lengths == other.lengths &&
         cells == other.cells;
}

void GridDomain::validate() const {
  if (dimension != 1 && dimension != 2)
    throw ConfigError("domain: dimension must be 1 or 2");
  for (int d = 0; d < dimension; ++d) {
    if (!(lengths[d] > 0.0))
      throw ConfigError("domain: lengths must be positive");
    if (cells[d] < 4)
      throw ConfigError("domain: need at least 4 cells per axis");
  }
}

}  // namespace chemo
