#include "chemo/state.hpp"

#include <cmath>
#include <cstdlib>

#include "chemo/errors.hpp"

namespace chemo {

void State::validate(const GridDomain& domain) const {
  const size_t n = static_cast<size_t>(domain.num_cells());
  if (u.size() != n || v.size() != n)
    throw InvalidSpec("state: field size does not match grid");
  for (size_t i = 0; i < n; ++i) {
    if (!std::isfinite(u[i]) || !std::isfinite(v[i]))
      throw NonFiniteValue("state: non-finite entry");
    if (u[i] < 0.0 || v[i] < 0.0)
      throw InvalidSpec("state: negative entry");
  }
}

double sup_norm(const Field& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

double sup_distance(const Field& a, const Field& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double sup_distance(const State& a, const State& b) {
  return std::max(sup_distance(a.u, b.u), sup_distance(a.v, b.v));
}

}  // namespace chemo
