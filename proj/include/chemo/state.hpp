#pragma once

#include "chemo/grid.hpp"

namespace chemo {

// Discrete (u, v) pair at one time. Both fields live on the cell centers
// of the owning grid and must stay nonnegative and finite.
struct State {
  double time = 0.0;
  Field u;
  Field v;

  // Throws InvalidSpec / NonFiniteValue on size mismatch, negative
  // entries, or non-finite entries.
  void validate(const GridDomain& domain) const;
};

double sup_norm(const Field& f);
// max_i |a_i - b_i|
double sup_distance(const Field& a, const Field& b);
// max over both components
double sup_distance(const State& a, const State& b);

}  // namespace chemo
