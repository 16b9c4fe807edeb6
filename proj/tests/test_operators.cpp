#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "chemo/operators.hpp"

using namespace chemo;

TEST_CASE("laplacian with reflected ghosts") {
  SUBCASE("constants are harmonic") {
    GridDomain dom = GridDomain::line(1.0, 32);
    Field f(dom.num_cells(), 3.7), out(dom.num_cells());
    laplacian_neumann(f, dom, out);
    for (double x : out) CHECK(x == 0.0);

    GridDomain dom2 = GridDomain::rectangle(1.0, 2.0, 8, 16);
    Field g(dom2.num_cells(), -1.25), out2(dom2.num_cells());
    laplacian_neumann(g, dom2, out2);
    for (double x : out2) CHECK(x == 0.0);
  }

  SUBCASE("cosine mode is a discrete eigenvector with symbol 2(cos(k pi h/L)-1)/h^2") {
    const int n = 64;
    GridDomain dom = GridDomain::line(1.0, n);
    const double h = dom.spacing(0);
    Field f(n), out(n);
    for (int i = 0; i < n; ++i) f[i] = std::cos(M_PI * dom.center(0, i));
    laplacian_neumann(f, dom, out);
    const double symbol = 2.0 * (std::cos(M_PI * h) - 1.0) / (h * h);
    for (int i = 0; i < n; ++i)
      CHECK(out[i] == doctest::Approx(symbol * f[i]).epsilon(1e-11));
    // the discrete symbol approaches -(k pi/L)^2 at second order
    CHECK(symbol == doctest::Approx(-M_PI * M_PI).epsilon(0.01));
  }

  SUBCASE("discrete divergence theorem: output sums to zero") {
    GridDomain dom = GridDomain::line(1.0, 64);
    Field f(dom.num_cells()), out(dom.num_cells());
    for (int i = 0; i < dom.num_cells(); ++i)
      f[i] = std::exp(std::sin(7.0 * dom.center(0, i)));
    laplacian_neumann(f, dom, out);
    double sum = 0.0, scale = 0.0;
    for (int i = 0; i < dom.num_cells(); ++i) {
      sum += out[i] * dom.cell_volume();
      scale = std::max(scale, std::abs(f[i]));
    }
    const double h = dom.spacing(0);
    CHECK(std::abs(sum) <= 1e-12 * scale * dom.measure() / (h * h));
  }

  SUBCASE("2D eigenmode") {
    GridDomain dom = GridDomain::rectangle(1.0, 1.0, 32, 32);
    const double hx = dom.spacing(0), hy = dom.spacing(1);
    Field f(dom.num_cells()), out(dom.num_cells());
    for (int j = 0; j < 32; ++j)
      for (int i = 0; i < 32; ++i)
        f[dom.index(i, j)] = std::cos(M_PI * dom.center(0, i)) *
                             std::cos(2.0 * M_PI * dom.center(1, j));
    laplacian_neumann(f, dom, out);
    const double symbol = 2.0 * (std::cos(M_PI * hx) - 1.0) / (hx * hx) +
                          2.0 * (std::cos(2.0 * M_PI * hy) - 1.0) / (hy * hy);
    for (int c = 0; c < dom.num_cells(); ++c)
      CHECK(out[c] == doctest::Approx(symbol * f[c]).epsilon(1e-10));
  }
}

TEST_CASE("chemotaxis flux divergence") {
  SUBCASE("no gradient, no taxis") {
    GridDomain dom = GridDomain::line(1.0, 16);
    Field u(16, 2.0), v(16, 5.0), out(16);
    chemotaxis_divergence(u, v, dom, 1.0, out);
    for (double x : out) CHECK(x == 0.0);
  }

  SUBCASE("global conservation for arbitrary v") {
    GridDomain dom = GridDomain::line(1.0, 64);
    Field u(64, 1.0), v(64), out(64);
    for (int i = 0; i < 64; ++i) v[i] = std::sin(9.0 * dom.center(0, i));
    chemotaxis_divergence(u, v, dom, 1.0, out);
    double sum = 0.0;
    for (double x : out) sum += x * dom.cell_volume();
    CHECK(std::abs(sum) <= 1e-12);
  }

  SUBCASE("hand-computed 1D stencil: u=1, v peaked in the middle, h=1") {
    GridDomain dom = GridDomain::line(4.0, 4);  // h = 1
    Field u(4, 1.0), v{0.0, 1.0, 0.0, 0.0}, out(4);
    chemotaxis_divergence(u, v, dom, 1.0, out);
    // faces: w01 = +1 upwinds u0 -> flux +1; w12 = -1 upwinds u2 -> flux -1;
    // w23 = 0. The term is minus the flux divergence, so mass moves toward
    // the v peak and cell 1 gains.
    CHECK(out[0] == doctest::Approx(-1.0));
    CHECK(out[1] == doctest::Approx(2.0));
    CHECK(out[2] == doctest::Approx(-1.0));
    CHECK(out[3] == doctest::Approx(0.0));
  }

  SUBCASE("upwind picks the donor cell") {
    GridDomain dom = GridDomain::line(2.0, 4);  // h = 0.5
    Field u{4.0, 1.0, 1.0, 1.0}, v{0.0, 1.0, 1.0, 1.0}, out(4);
    chemotaxis_divergence(u, v, dom, 1.0, out);
    // single active face with w = (1-0)/0.5 = 2 > 0, donor is cell0 (u=4):
    // flux = 8, out0 = -8/h = -16, out1 = +16
    CHECK(out[0] == doctest::Approx(-16.0));
    CHECK(out[1] == doctest::Approx(16.0));
    CHECK(out[2] == doctest::Approx(0.0));
  }

  SUBCASE("2D conservation with uniform u") {
    GridDomain dom = GridDomain::rectangle(1.0, 1.0, 16, 16);
    Field u(dom.num_cells(), 1.0), v(dom.num_cells()), out(dom.num_cells());
    for (int j = 0; j < 16; ++j)
      for (int i = 0; i < 16; ++i)
        v[dom.index(i, j)] =
            std::sin(5.0 * dom.center(0, i)) * std::cos(3.0 * dom.center(1, j));
    chemotaxis_divergence(u, v, dom, 0.8, out);
    double sum = 0.0;
    for (double x : out) sum += x * dom.cell_volume();
    CHECK(std::abs(sum) <= 1e-12);
  }
}

TEST_CASE("midpoint mass quadrature") {
  SUBCASE("constant is exact") {
    GridDomain dom = GridDomain::line(2.0, 32);
    Field u(32, 3.0);
    CHECK(nonlocal_mass(u, dom) == doctest::Approx(6.0).epsilon(1e-15));
  }

  SUBCASE("cos(pi x) integrates to zero by symmetry") {
    GridDomain dom = GridDomain::line(1.0, 64);
    Field u(64);
    for (int i = 0; i < 64; ++i) u[i] = std::cos(M_PI * dom.center(0, i));
    CHECK(std::abs(nonlocal_mass(u, dom)) < 1e-3);
  }

  SUBCASE("linear integrand is exact for midpoint rule") {
    GridDomain dom = GridDomain::line(1.0, 64);
    Field u(64);
    for (int i = 0; i < 64; ++i) u[i] = dom.center(0, i);
    CHECK(nonlocal_mass(u, dom) == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("max face gradient") {
  GridDomain dom = GridDomain::line(1.0, 128);
  Field v(128);
  for (int i = 0; i < 128; ++i) v[i] = std::cos(M_PI * dom.center(0, i));
  // max |v'| = pi at x = 1/2
  CHECK(max_face_gradient(v, dom) == doctest::Approx(M_PI).epsilon(0.01));

  Field flat(128, 2.0);
  CHECK(max_face_gradient(flat, dom) == 0.0);
}
