#include <doctest.h>

#include <charconv>
#include <sstream>

#include "sierpfvm/io.hpp"

using namespace sierpfvm;

namespace {

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += (c == '\n');
  return n;
}

}  // namespace

TEST_CASE("format_double round-trips") {
  for (double v : {0.0, 1.0, -1.5, 2.0 / 45.0, 5e-6, 1.4222222222222222e-5, 1e300, -2.5e-17}) {
    const std::string s = format_double(v);
    double back = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), back);
    REQUIRE(res.ec == std::errc());
    CHECK(back == v);
    CHECK(s.find(',') == std::string::npos);
  }
}

TEST_CASE("presets carry the published experiment parameters") {
  const SimulateOptions gasket = preset("gasket-paper");
  CHECK(*gasket.d == 3);
  CHECK(*gasket.m == 6);
  CHECK(*gasket.T == 1.0);
  CHECK(*gasket.N == 200000);
  CHECK(gasket.scheme == Scheme::explicit_euler);

  const SimulateOptions tetra = preset("tetra-paper");
  CHECK(*tetra.d == 4);
  CHECK(*tetra.m == 4);
  CHECK(*tetra.T == 1.0);
  CHECK(*tetra.N == 100000);

  CHECK_THROWS_AS(preset("octa-paper"), std::invalid_argument);
}

TEST_CASE("config parsing") {
  const std::string text =
      "# run description\n"
      "d = 3\n"
      "m = 4   # level\n"
      "T = 0.5\n"
      "N = 1000\n"
      "scheme = implicit\n"
      "boundary = neumann-cells\n"
      "snapshots = 0,10,1000\n";
  const SimulateOptions o = parse_config_text(text, "test.cfg");
  CHECK(*o.d == 3);
  CHECK(*o.m == 4);
  CHECK(*o.T == 0.5);
  CHECK(*o.N == 1000);
  CHECK(o.scheme == Scheme::implicit_euler);
  CHECK(o.boundary_mode == BoundaryMode::neumann_cells);
  CHECK(o.snapshots == std::vector<std::int64_t>({0, 10, 1000}));
}

TEST_CASE("config errors carry the offending line") {
  CHECK_THROWS_WITH_AS(parse_config_text("d = 3\nvolume = 7\n", "bad.cfg"),
                       doctest::Contains("bad.cfg:2"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("d = three\n", "bad.cfg"),
                       doctest::Contains("malformed value"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("d = 3\nd = 4\n", "bad.cfg"),
                       doctest::Contains("duplicate"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("just words\n", "bad.cfg"),
                       doctest::Contains("key=value"), std::invalid_argument);

  SimulateOptions empty;
  CHECK_THROWS_WITH_AS(empty.require_complete(), doctest::Contains("d m T N"),
                       std::invalid_argument);
}

TEST_CASE("default snapshot schedule") {
  CHECK(default_snapshots(20000) == std::vector<std::int64_t>({0, 10, 100, 500, 20000}));
  CHECK(default_snapshots(500) == std::vector<std::int64_t>({0, 10, 100, 500}));
  CHECK(default_snapshots(5) == std::vector<std::int64_t>({0, 5}));
}

TEST_CASE("geometry export") {
  const SimplexSpace s = SimplexSpace::regular(3);
  std::ostringstream out;
  write_geometry_csv(out, s, 2);
  const std::string text = out.str();
  CHECK(count_lines(text) == 10);  // header + 9 cells
  CHECK(text.rfind("word,level,x0,x1,measure\n", 0) == 0);
  CHECK(text.find("11,2,") != std::string::npos);
}

TEST_CASE("laplacian coordinate export") {
  const CellLaplacian L =
      build_cell_laplacian(build_cell_graph(3, 1), BoundaryMode::neumann_cells);
  std::ostringstream out;
  write_laplacian_coo(out, L);
  const std::string text = out.str();
  CHECK(text.rfind("3,3,9\n", 0) == 0);
  CHECK(text.find("0,0,2\n") != std::string::npos);
  CHECK(text.find("0,1,-1\n") != std::string::npos);
  CHECK(count_lines(text) == 10);
}

TEST_CASE("snapshot export") {
  const SimplexSpace s = SimplexSpace::regular(3);
  std::ostringstream out;
  write_snapshot_csv(out, s, 1, 10, 0.25, {0.5, 0.25, 0.25});
  const std::string text = out.str();
  CHECK(text.rfind("step,time,word,x0,x1,value\n", 0) == 0);
  CHECK(count_lines(text) == 4);
  CHECK(text.find("10,0.25,1,") != std::string::npos);
}

TEST_CASE("manifest output") {
  RunManifest manifest;
  manifest.options = preset("gasket-paper");
  manifest.options.snapshots = default_snapshots(*manifest.options.N);
  manifest.cfl_bound = 2.0 / 140625.0;
  manifest.cfl_verdict = "admissible";
  std::ostringstream out;
  manifest.write(out);
  const std::string text = out.str();
  CHECK(text.find("# sierpfvm") != std::string::npos);
  CHECK(text.find("d = 3") != std::string::npos);
  CHECK(text.find("N = 200000") != std::string::npos);
  CHECK(text.find("# h = 5e-06") != std::string::npos);
  CHECK(text.find("# cfl_verdict = admissible") != std::string::npos);

  // A manifest is itself a valid configuration.
  const SimulateOptions round = parse_config_text(text, "manifest.txt");
  CHECK(*round.d == 3);
  CHECK(*round.m == 6);
  CHECK(*round.N == 200000);
  CHECK(round.snapshots == manifest.options.snapshots);
}
