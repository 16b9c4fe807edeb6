#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chemo/errors.hpp"
#include "chemo/oracle.hpp"
#include "chemo/simulate.hpp"

using namespace chemo;

namespace {

const std::string kGoldens = std::string(CHEMO_REPO_DIR) + "/configs/goldens.json";

CoefficientSet constant_coeffs(double a0, double a1, double a2) {
  return {CoefficientField::constant(a0, CoefficientLabel::a0),
          CoefficientField::constant(a1, CoefficientLabel::a1),
          CoefficientField::constant(a2, CoefficientLabel::a2)};
}

}  // namespace

TEST_CASE("heat eigenmode fields") {
  GridDomain dom = GridDomain::line(1.0, 128);

  SUBCASE("ground mode is constant 1 for all t") {
    for (double t : {0.0, 0.3, 5.0}) {
      Field f = heat_eigenmode_solution(0, t, dom);
      for (double x : f) CHECK(x == 1.0);
    }
  }

  SUBCASE("k=1 amplitude at t = 1/pi^2 is 1/e") {
    Field f = heat_eigenmode_solution(1, 1.0 / (M_PI * M_PI), dom);
    double amp = 0.0;
    for (double x : f) amp = std::max(amp, std::abs(x));
    CHECK(amp == doctest::Approx(std::exp(-1.0)).epsilon(1e-3));
    CHECK(std::exp(-1.0) == doctest::Approx(0.367879).epsilon(1e-5));
  }

  SUBCASE("grid orthogonality of distinct modes") {
    Field f1 = heat_eigenmode_solution(1, 0.0, dom);
    Field f2 = heat_eigenmode_solution(2, 0.0, dom);
    double dot = 0.0;
    for (int i = 0; i < dom.num_cells(); ++i)
      dot += f1[i] * f2[i] * dom.cell_volume();
    CHECK(std::abs(dot) < 1e-10);
  }

  SUBCASE("2D tensor mode decays at the summed rate") {
    GridDomain dom2 = GridDomain::rectangle(1.0, 2.0, 16, 16);
    Field f = heat_eigenmode_solution(1, 1, 0.1, dom2);
    const double rate = M_PI * M_PI + (M_PI / 2.0) * (M_PI / 2.0);
    double amp = 0.0;
    for (double x : f) amp = std::max(amp, std::abs(x));
    CHECK(amp == doctest::Approx(std::exp(-0.1 * rate)).epsilon(1e-2));
  }
}

TEST_CASE("decoupled homogeneous solution") {
  ModelParams p{.chi = 0.0, .tau = 1.0, .lambda = 1.0, .mu = 1.0, .dimension = 1};

  SUBCASE("steady data stays constant in t") {
    for (double t : {0.0, 0.7, 10.0}) {
      auto [u, v] = decoupled_homogeneous_solution(p, 1.0, 1.0, 0.0, 1.0, 1.0,
                                                   1.0, t);
      CHECK(u == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
    }
  }

  SUBCASE("logistic value 4/3 at t = ln 2") {
    auto [u, v] = decoupled_homogeneous_solution(p, 1.0, 1.0, 0.0, 1.0, 2.0, 0.0,
                                                 std::log(2.0));
    (void)v;
    CHECK(u == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  }

  SUBCASE("v approaches (mu/lambda) u* for large t") {
    ModelParams q{.chi = 0.0, .tau = 1.0, .lambda = 1.0, .mu = 2.0, .dimension = 1};
    auto [u, v] = decoupled_homogeneous_solution(q, 1.0, 1.0, 0.0, 1.0, 2.0, 0.0,
                                                 50.0);
    CHECK(u == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(v - 2.0) < 1e-9);
  }

  SUBCASE("degenerate slope is rejected") {
    CHECK_THROWS_AS(
        decoupled_homogeneous_solution(p, 1.0, 0.5, -1.0, 1.0, 1.0, 1.0, 1.0),
        PreconditionViolated);
  }
}

TEST_CASE("restriction by cell averaging") {
  GridDomain fine = GridDomain::line(1.0, 16);
  GridDomain coarse = GridDomain::line(1.0, 4);
  Field f(16);
  for (int i = 0; i < 16; ++i) f[i] = i;
  Field r = restrict_by_averaging(f, fine, coarse);
  CHECK(r.size() == 4);
  CHECK(r[0] == doctest::Approx(1.5));   // mean of 0..3
  CHECK(r[3] == doctest::Approx(13.5));  // mean of 12..15

  GridDomain bad = GridDomain::line(1.0, 5);
  CHECK_THROWS_AS(restrict_by_averaging(f, fine, bad), PreconditionViolated);
}

TEST_CASE("brute-force reference") {
  RunConfig cfg;
  cfg.params = {.chi = 0.0, .tau = 1.0, .lambda = 1.0, .mu = 1.0, .dimension = 1};
  cfg.coeffs = constant_coeffs(0.0, 0.0, 0.0);
  cfg.domain = GridDomain::line(1.0, 32);
  cfg.initial = CosineInit{1.0, 0.5, 1, 1.0};
  cfg.t_end = 0.1;
  cfg.dt_max = 5e-4;
  cfg.record_every = 0.05;

  SUBCASE("deterministic") {
    RunRecord a = brute_force_reference(cfg, 2, 1.0 / 8.0);
    RunRecord b = brute_force_reference(cfg, 2, 1.0 / 8.0);
    CHECK(a.final_state.u == b.final_state.u);
  }

  SUBCASE("agrees with the exact eigenmode on a linear problem") {
    RunRecord ref = brute_force_reference(cfg, 4, 1.0 / 8.0);
    Field mode = heat_eigenmode_solution(1, cfg.t_end, cfg.domain);
    double err = 0.0;
    for (int i = 0; i < cfg.domain.num_cells(); ++i)
      err = std::max(err, std::abs(ref.final_state.u[i] - (1.0 + 0.5 * mode[i])));
    CHECK(err < 1e-4);
  }

  SUBCASE("budget guard") {
    RunConfig big = cfg;
    big.domain = GridDomain::line(1.0, 4096);
    CHECK_THROWS_AS(brute_force_reference(big, 128, 1.0), BudgetExceeded);
  }

  SUBCASE("coarse and fine IMEX solutions approach the reference under refinement") {
    // error monotonically nonincreasing over three refinement levels
    double prev = 1e18;
    for (int n : {16, 32, 64}) {
      RunConfig level = cfg;
      level.domain = GridDomain::line(1.0, n);
      level.dt_max = 0.2 / n;
      RunRecord sol = simulate(level);
      RunRecord ref = brute_force_reference(level, 4, 1.0 / 8.0);
      double err = sup_distance(sol.final_state.u, ref.final_state.u);
      CHECK(err <= prev);
      prev = err;
    }
  }
}

TEST_CASE("oracle suite against the repo goldens") {
  std::ostringstream log;
  std::vector<OracleCaseResult> results;
  bool ok = run_oracle_suite(kGoldens, false, log, &results);
  INFO(log.str());
  CHECK(ok);
  CHECK(results.size() == 5);
  for (const auto& r : results) CHECK(r.passed);

  SUBCASE("regenerate writes a fresh goldens file that then passes") {
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "chemo_regen_goldens.json";
    fs::remove(tmp);
    std::ostringstream log2;
    CHECK(run_oracle_suite(tmp.string(), true, log2));
    CHECK(fs::exists(tmp));
    CHECK(log2.str().find("golden created") != std::string::npos);
    // the freshly generated file matches the repo goldens' values
    std::ostringstream log3;
    CHECK(run_oracle_suite(tmp.string(), false, log3));
    fs::remove(tmp);
  }

  SUBCASE("tampered golden fails naming the case") {
    namespace fs = std::filesystem;
    std::ifstream in(kGoldens);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    size_t pos = text.find("\"value\":");
    REQUIRE(pos != std::string::npos);
    text.insert(pos + 8, "9");  // prepends a digit to the stored number
    fs::path tmp = fs::temp_directory_path() / "chemo_tampered_goldens.json";
    std::ofstream(tmp) << text;
    std::ostringstream log2;
    std::vector<OracleCaseResult> res2;
    bool ok2 = run_oracle_suite(tmp.string(), false, log2, &res2);
    CHECK_FALSE(ok2);
    bool some_failed_with_name = false;
    for (const auto& r : res2)
      if (!r.passed && log2.str().find(r.name) != std::string::npos)
        some_failed_with_name = true;
    CHECK(some_failed_with_name);
    fs::remove(tmp);
  }
}
