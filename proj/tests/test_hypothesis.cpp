#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "chemo/errors.hpp"
#include "chemo/hypothesis.hpp"

using namespace chemo;

namespace {

CoefficientSet constant_coeffs(double a0, double a1, double a2) {
  return {CoefficientField::constant(a0, CoefficientLabel::a0),
          CoefficientField::constant(a1, CoefficientLabel::a1),
          CoefficientField::constant(a2, CoefficientLabel::a2)};
}

ModelParams params_1d(double chi, double mu = 1.0, double tau = 1.0,
                      double lambda = 1.0) {
  return {.chi = chi, .tau = tau, .lambda = lambda, .mu = mu, .dimension = 1};
}

}  // namespace

TEST_CASE("coefficient extrema") {
  GridDomain dom = GridDomain::line(1.0, 256);

  SUBCASE("constant is exact") {
    CoefficientExtrema ex =
        coefficient_extrema(CoefficientField::constant(2.0), dom, 0.0, 10.0);
    CHECK(ex.a_inf == 2.0);
    CHECK(ex.a_sup == 2.0);
    ex.validate();
  }

  SUBCASE("spatial sine: 2 + sin(pi x) on (0,1)") {
    CoefficientExtrema ex = coefficient_extrema(
        CoefficientField::analytic("2 + sin(pi*x)"), dom, 0.0, 1.0);
    CHECK(ex.a_inf == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(ex.a_sup == doctest::Approx(3.0).epsilon(1e-3));
    ex.validate();
  }

  SUBCASE("temporal cosine: 1 + 0.5 cos(t) over [0, 2pi]") {
    CoefficientExtrema ex = coefficient_extrema(
        CoefficientField::analytic("1 + 0.5*cos(t)"), dom, 0.0, 2.0 * M_PI, 401);
    CHECK(ex.a_inf == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(ex.a_sup == doctest::Approx(1.5).epsilon(1e-4));
    ex.validate();
  }

  SUBCASE("per-time tables bracket the global extrema") {
    CoefficientExtrema ex = coefficient_extrema(
        CoefficientField::analytic("1 + 0.3*sin(t)*cos(pi*x)"), dom, 0.0, 7.0, 97);
    ex.validate();  // a_inf <= inf_t(t) <= sup_t(t) <= a_sup at every sample
  }
}

TEST_CASE("condition H2") {
  GridDomain dom = GridDomain::line(1.0, 64);

  SUBCASE("n=1, mu=1, chi=4, a1=2: margins 1 and 2") {
    HypothesisReport rep = check_h2(params_1d(4.0), constant_coeffs(1.0, 2.0, 0.0),
                                    dom, 0.0, 10.0);
    CHECK(rep.satisfied);
    CHECK(rep.margin_local == doctest::Approx(1.0));
    CHECK(rep.margin_nonlocal == doctest::Approx(2.0));
  }

  SUBCASE("chi=0 with positive a1 is always satisfied") {
    HypothesisReport rep = check_h2(params_1d(0.0), constant_coeffs(1.0, 1.0, 0.0),
                                    dom, 0.0, 10.0);
    CHECK(rep.satisfied);
    CHECK(rep.margin_local == doctest::Approx(1.0));
  }

  SUBCASE("n=2, mu=2, chi=4, a1=1: margin -3, not satisfied") {
    GridDomain dom2 = GridDomain::rectangle(1.0, 1.0, 8, 8);
    ModelParams p{.chi = 4.0, .tau = 1.0, .lambda = 1.0, .mu = 2.0, .dimension = 2};
    HypothesisReport rep =
        check_h2(p, constant_coeffs(1.0, 1.0, 0.0), dom2, 0.0, 10.0);
    CHECK_FALSE(rep.satisfied);
    CHECK(rep.margin_local == doctest::Approx(-3.0));
  }

  SUBCASE("tau != 1 fails H2 with a note") {
    HypothesisReport rep = check_h2(params_1d(0.0, 1.0, 2.0),
                                    constant_coeffs(1.0, 1.0, 0.0), dom, 0.0, 1.0);
    CHECK_FALSE(rep.satisfied);
    CHECK(rep.margin_local > 0.0);
    CHECK_FALSE(rep.tau_is_one);
    CHECK(rep.notes.find("tau") != std::string::npos);
  }

  SUBCASE("property: chi=0, a1 bounded below positive, a2 >= 0 is satisfied") {
    for (double a1 : {0.1, 0.5, 2.0, 10.0})
      for (double a2 : {0.0, 0.3, 5.0}) {
        HypothesisReport rep = check_h2(params_1d(0.0),
                                        constant_coeffs(1.0, a1, a2), dom, 0.0, 5.0);
        CHECK(rep.satisfied);
      }
  }

  SUBCASE("property: margin_local invariant under (chi,mu) -> (s chi, mu/s)") {
    for (double s : {0.25, 2.0, 8.0}) {
      HypothesisReport a = check_h2(params_1d(1.5, 2.0),
                                    constant_coeffs(1.0, 3.0, 0.0), dom, 0.0, 5.0);
      HypothesisReport b = check_h2(params_1d(1.5 * s, 2.0 / s),
                                    constant_coeffs(1.0, 3.0, 0.0), dom, 0.0, 5.0);
      CHECK(a.margin_local == doctest::Approx(b.margin_local).epsilon(1e-12));
    }
  }
}

TEST_CASE("condition H1") {
  GridDomain dom = GridDomain::line(1.0, 64);

  SUBCASE("chi=0: margin equals a1_inf") {
    HypothesisReport rep =
        check_h1(params_1d(0.0), constant_coeffs(1.0, 1.0, 0.0), dom, 0.0, 1.0,
                 {{2.0, 1.0}});
    CHECK(rep.satisfied);
    CHECK(rep.margin_local == doctest::Approx(1.0));
  }

  SUBCASE("a1=1, mu=1, chi=1, table {(2,1)}: threshold 0.5") {
    HypothesisReport rep =
        check_h1(params_1d(1.0), constant_coeffs(1.0, 1.0, 0.0), dom, 0.0, 1.0,
                 {{2.0, 1.0}});
    CHECK(rep.satisfied);
    CHECK(rep.margin_local == doctest::Approx(0.5));
    CHECK(rep.notes.find("user-supplied") != std::string::npos);
  }

  SUBCASE("a1=0.1 fails with margin -0.4") {
    HypothesisReport rep =
        check_h1(params_1d(1.0), constant_coeffs(1.0, 0.1, 0.0), dom, 0.0, 1.0,
                 {{2.0, 1.0}});
    CHECK_FALSE(rep.satisfied);
    CHECK(rep.margin_local == doctest::Approx(-0.4));
  }

  SUBCASE("empty table is an error") {
    CHECK_THROWS_AS(check_h1(params_1d(1.0), constant_coeffs(1.0, 1.0, 0.0), dom,
                             0.0, 1.0, {}),
                    EmptyConstantTable);
  }

  SUBCASE("q below max(1, n/2) is rejected") {
    CHECK_THROWS_AS(check_h1(params_1d(1.0), constant_coeffs(1.0, 1.0, 0.0), dom,
                             0.0, 1.0, {{0.5, 1.0}}),
                    ConfigError);
  }
}

TEST_CASE("mass cap m_tilde") {
  ModelParams p = params_1d(0.0);

  SUBCASE("unit everything: cap 1, m1 = 2") {
    GridDomain dom = GridDomain::line(1.0, 64);
    TheoreticalBounds b =
        mass_bound_m_tilde(p, constant_coeffs(1.0, 1.0, 0.0), dom, 0.0, 1.0);
    CHECK(b.m_tilde_1 == doctest::Approx(1.0));
    CHECK(b.m1 == doctest::Approx(2.0));
  }

  SUBCASE("negative a2 shrinks the denominator: cap 2") {
    GridDomain dom = GridDomain::line(1.0, 64);
    TheoreticalBounds b =
        mass_bound_m_tilde(p, constant_coeffs(1.0, 1.0, -0.5), dom, 0.0, 1.0);
    CHECK(b.m_tilde_1 == doctest::Approx(2.0));
  }

  SUBCASE("larger domain: |Omega|=2, a0=3, a1=2 gives cap 3") {
    GridDomain dom = GridDomain::line(2.0, 64);
    TheoreticalBounds b =
        mass_bound_m_tilde(p, constant_coeffs(3.0, 2.0, 0.0), dom, 0.0, 1.0);
    CHECK(b.m_tilde_1 == doctest::Approx(3.0));
  }

  SUBCASE("nonpositive margin is rejected") {
    GridDomain dom = GridDomain::line(1.0, 64);
    CHECK_THROWS_AS(
        mass_bound_m_tilde(p, constant_coeffs(1.0, 1.0, -2.0), dom, 0.0, 1.0),
        HypothesisViolated);
  }
}

TEST_CASE("logistic mass envelope") {
  GridDomain dom = GridDomain::line(1.0, 64);
  CoefficientSet coeffs = constant_coeffs(1.0, 1.0, 0.0);  // cap K = 1

  SUBCASE("equilibrium stays put") {
    for (double t : {0.0, 0.5, 3.0, 100.0})
      CHECK(logistic_mass_envelope(coeffs, dom, 0.0, 1.0, 1.0, t) ==
            doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("m0=2 at t=ln 2 gives 4/3") {
    CHECK(logistic_mass_envelope(coeffs, dom, 0.0, 1.0, 2.0, std::log(2.0)) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  }

  SUBCASE("zero stays zero") {
    for (double t : {0.0, 1.0, 10.0})
      CHECK(logistic_mass_envelope(coeffs, dom, 0.0, 1.0, 0.0, t) == 0.0);
  }

  SUBCASE("monotone toward the cap from both sides") {
    double prev_up = 0.2, prev_down = 3.0;
    for (double t : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      double up = logistic_mass_envelope(coeffs, dom, 0.0, 1.0, 0.2, t);
      double down = logistic_mass_envelope(coeffs, dom, 0.0, 1.0, 3.0, t);
      CHECK(up >= prev_up);
      CHECK(down <= prev_down);
      prev_up = up;
      prev_down = down;
    }
  }

  SUBCASE("long-time limit equals the mass cap within 1e-9") {
    ModelParams p = params_1d(0.0);
    TheoreticalBounds b = mass_bound_m_tilde(p, coeffs, dom, 0.0, 1.0);
    for (double m0 : {0.01, 0.7, 5.0}) {
      double y = logistic_mass_envelope(coeffs, dom, 0.0, 1.0, m0, 100.0);
      CHECK(std::abs(y - b.m_tilde_1) < 1e-9);
    }
  }
}

TEST_CASE("constant-coefficient steady state") {
  ModelParams p = params_1d(0.5);
  GridDomain dom = GridDomain::line(1.0, 64);

  SUBCASE("unit coefficients give (1, 1)") {
    auto [u, v] =
        constant_coeff_steady_state(p, constant_coeffs(1.0, 1.0, 0.0), dom);
    CHECK(u == doctest::Approx(1.0));
    CHECK(v == doctest::Approx(1.0));
  }

  SUBCASE("nonlocal competition enters through a2 |Omega|") {
    auto [u, v] =
        constant_coeff_steady_state(p, constant_coeffs(2.0, 1.0, 1.0), dom);
    CHECK(u == doctest::Approx(1.0));
    CHECK(v == doctest::Approx(1.0));
  }

  SUBCASE("v* scales by mu/lambda") {
    ModelParams q{.chi = 0.0, .tau = 1.0, .lambda = 2.0, .mu = 4.0, .dimension = 1};
    auto [u, v] =
        constant_coeff_steady_state(q, constant_coeffs(1.0, 1.0, 0.0), dom);
    CHECK(u == doctest::Approx(1.0));
    CHECK(v == doctest::Approx(2.0));
  }

  SUBCASE("errors") {
    CoefficientSet varying = constant_coeffs(1.0, 1.0, 0.0);
    varying[0] = CoefficientField::analytic("1 + 0.1*sin(t)");
    CHECK_THROWS_AS(constant_coeff_steady_state(p, varying, dom),
                    NotConstantCoefficients);
    CHECK_THROWS_AS(
        constant_coeff_steady_state(p, constant_coeffs(1.0, 0.5, -1.0), dom),
        DegenerateDenominator);
  }
}
