#pragma once

namespace chemo {

// Scalar physical parameters of the coupled system
//   u_t = Lap u - chi div(u grad v) + u (a0 - a1 u - a2 \int u)
//   tau v_t = Lap v - lambda v + mu u
struct ModelParams {
  double chi = 0.0;     // chemotactic sensitivity, either sign
  double tau = 1.0;     // chemical time constant, > 0
  double lambda = 1.0;  // chemical degradation rate, > 0
  double mu = 1.0;      // chemical production rate, > 0
  int dimension = 1;    // must match the attached grid

  void validate() const;
};

}  // namespace chemo
