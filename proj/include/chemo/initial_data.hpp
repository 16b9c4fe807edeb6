#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "chemo/grid.hpp"
#include "chemo/state.hpp"

namespace chemo {

struct UniformInit {
  double u = 1.0;
  double v = 1.0;
};

// u = base + amplitude * prod_d cos(mode*pi*x_d/L_d), v flat at v_value.
// Requires 0 <= amplitude < base so u stays strictly positive.
struct CosineInit {
  double base = 1.0;
  double amplitude = 0.0;
  int mode = 1;
  double v_value = 1.0;
};

// Low-mode random trigonometric sums for u and v, drawn from `seed` and
// scaled into [min, max]; samples are clipped below at `min`. The random
// function is independent of the grid, so refining the grid resamples the
// same underlying profile.
struct RandomSmoothInit {
  std::uint64_t seed = 1;
  double min = 0.1;
  double max = 1.0;
};

using InitialSpec = std::variant<UniformInit, CosineInit, RandomSmoothInit>;

State make_initial_data(const InitialSpec& spec, const GridDomain& domain,
                        double t_start);

std::string describe(const InitialSpec& spec);

}  // namespace chemo
