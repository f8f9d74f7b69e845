#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "sierpfvm/analysis.hpp"
#include "sierpfvm/io.hpp"
#include "sierpfvm/spectral.hpp"

using namespace sierpfvm;

namespace {

double golden_value(const std::string& file, const std::string& key) {
  std::ifstream in(std::filesystem::path(SIERPFVM_GOLDEN_DIR) / file);
  REQUIRE(in);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + " = ", 0) == 0) return std::stod(line.substr(key.size() + 3));
  }
  FAIL("golden key not found: ", key);
  return 0.0;
}

}  // namespace

TEST_CASE("scaled 2-infinity norm") {
  StateSeries s;
  s.d = 3;
  s.m = 2;
  s.values = {std::vector<double>(9, 1.0), std::vector<double>(9, 1.0)};
  CHECK(norm_2_inf(s) == doctest::Approx(1.0).epsilon(1e-15));

  StateSeries spike;
  spike.d = 3;
  spike.m = 2;
  std::vector<double> e0(9, 0.0);
  e0[0] = 1.0;
  spike.values = {e0};
  CHECK(norm_2_inf(spike) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  StateSeries zero;
  zero.d = 3;
  zero.m = 1;
  zero.values = {std::vector<double>(3, 0.0)};
  CHECK(norm_2_inf(zero) == 0.0);

  StateSeries empty;
  empty.d = 3;
  empty.m = 1;
  CHECK_THROWS_AS(norm_2_inf(empty), std::invalid_argument);
}

TEST_CASE("restriction and prolongation") {
  {
    const std::vector<double> fine(27, 1.0);
    const auto coarse = restrict_state(3, fine);
    CHECK(coarse == std::vector<double>(9, 1.0));
  }
  {
    // Spike of height d on child J.1 averages to a unit spike on J.
    std::vector<double> fine(9, 0.0);
    fine[3] = 3.0;  // child 21 of coarse cell 2 (d = 3)
    const auto coarse = restrict_state(3, fine);
    CHECK(coarse == std::vector<double>({0.0, 1.0, 0.0}));
  }
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int d : {2, 3, 4, 5}) {
    std::vector<double> coarse(static_cast<std::size_t>(cell_count(d, 2)));
    for (auto& v : coarse) v = dist(rng);
    // Exact left inverse of constant prolongation.
    CHECK(restrict_state(d, prolong_state(d, coarse)) == coarse);

    std::vector<double> fine(static_cast<std::size_t>(cell_count(d, 3)));
    for (auto& v : fine) v = dist(rng);
    const auto r = restrict_state(d, fine);
    CHECK(total_mass(d, 2, r) == doctest::Approx(total_mass(d, 3, fine)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(restrict_state(3, std::vector<double>(8, 0.0)), std::invalid_argument);
}

TEST_CASE("self-convergence errors shrink with the level") {
  const ConvergenceTable table =
      self_convergence_study(3, {2, 3}, Scheme::implicit_euler, 0.1, 100);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.m_ref == 4);
  CHECK(!table.rows[0].failed);
  CHECK(!table.rows[1].failed);
  CHECK(table.rows[0].error > 0.0);
  CHECK(table.rows[1].error > 0.0);
  CHECK(table.rows[1].error < table.rows[0].error);
  CHECK(table.rows[1].rate > 0.0);
  CHECK(table.monotone_decreasing());
}

TEST_CASE("explicit study rows fail per level when the shared step violates CFL") {
  // N chosen so the reference level satisfies CFL but a much coarser level
  // is fine too; an undersized N instead fails rows without aborting.
  const std::int64_t tiny_N = 10;  // h = 0.01 > bound for m >= 2 at d = 3
  CHECK_THROWS_AS(self_convergence_study(3, {2}, Scheme::explicit_euler, 0.1, tiny_N),
                  std::invalid_argument);  // the reference run itself violates

  // With the default N the explicit study runs clean.
  const ConvergenceTable table =
      self_convergence_study(3, {1, 2}, Scheme::explicit_euler, 0.02);
  REQUIRE(table.rows.size() == 2);
  CHECK(!table.rows[0].failed);
  CHECK(!table.rows[1].failed);
  CHECK(table.rows[1].error < table.rows[0].error);
}

TEST_CASE("dirichlet study runs dissipate the scaled norm by time T") {
  for (int m : {1, 2, 3}) {
    SchemeConfig c;
    c.T = 0.02;
    c.N = 50;
    c.scheme = Scheme::implicit_euler;
    c.boundary_mode = BoundaryMode::dirichlet_ghost;
    c.snapshot_steps = {0, 50};
    const auto u0 = initial_state(InitialCondition::vertex_spline(Word({1}), 1), 3, m);
    const RunResult res = run(c, u0, 3, m);
    REQUIRE(res.ok);
    const double before = scaled_l2(3, m, res.series.values.front());
    const double after = scaled_l2(3, m, res.series.values.back());
    CHECK(after < before);
  }
}

TEST_CASE("implicit time error scales first order in h") {
  const auto u0 = initial_state(InitialCondition::vertex_spline(Word({1}), 1), 3, 2);
  auto final_state = [&](std::int64_t N) {
    SchemeConfig c;
    c.T = 0.1;
    c.N = N;
    c.scheme = Scheme::implicit_euler;
    c.boundary_mode = BoundaryMode::dirichlet_ghost;
    const RunResult res = run(c, u0, 3, 2);
    REQUIRE(res.ok);
    return res.series.values.back();
  };
  const auto ref = final_state(6400);
  auto err = [&](const std::vector<double>& u) {
    long double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += (u[i] - ref[i]) * (u[i] - ref[i]);
    return std::sqrt(static_cast<double>(s));
  };
  const double e1 = err(final_state(25));
  const double e2 = err(final_state(50));
  const double e4 = err(final_state(100));
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.35));
  CHECK(e2 / e4 == doctest::Approx(2.0).epsilon(0.35));
}

TEST_CASE("fdm comparison tracks the fvm run") {
  const FdmComparison cmp = fdm_compare(3, 2, 0.01, 400);
  REQUIRE(cmp.steps.size() >= 3);
  // Both legs decay monotonically in sup norm.
  for (std::size_t i = 1; i < cmp.steps.size(); ++i) {
    CHECK(cmp.fvm_sup[i] <= cmp.fvm_sup[i - 1] * (1.0 + 1e-12));
    CHECK(cmp.fdm_sup[i] <= cmp.fdm_sup[i - 1] * (1.0 + 1e-12));
  }
  // Matching data keeps the fields close from the start.
  for (std::size_t i = 0; i < cmp.steps.size(); ++i)
    CHECK(cmp.sup_difference[i] <= 1.0);
  // After the initial transient the cellwise shapes correlate strongly.
  CHECK(cmp.correlation.back() > 0.9);

  CHECK_THROWS_WITH_AS(fdm_compare(3, 2, 1.0, 10), doctest::Contains("unstable"),
                       std::invalid_argument);
}

TEST_CASE("fdm comparison matches the frozen regression baseline") {
  const FdmComparison cmp = fdm_compare(3, 3, 0.01, 400);
  CHECK(cmp.correlation.back() ==
        doctest::Approx(golden_value("fdm_d3_m3.txt", "final_correlation")).epsilon(1e-9));
  CHECK(cmp.fvm_sup.back() ==
        doctest::Approx(golden_value("fdm_d3_m3.txt", "final_fvm_sup")).epsilon(1e-9));
  CHECK(cmp.fdm_sup.back() ==
        doctest::Approx(golden_value("fdm_d3_m3.txt", "final_fdm_sup")).epsilon(1e-9));
  CHECK(cmp.sup_difference.back() <=
        golden_value("fdm_d3_m3.txt", "final_sup_difference") + 1e-12);
}
