// Regenerates the frozen regression baselines in tests/golden/. Build the
// `golden_generator` target and run it with the golden directory as the only
// argument. Outputs are deterministic; regenerate only when an intentional
// change invalidates them, and review the diff.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "sierpfvm/analysis.hpp"
#include "sierpfvm/io.hpp"
#include "sierpfvm/spectral.hpp"

using namespace sierpfvm;
namespace fs = std::filesystem;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: golden_generator <golden-dir>\n";
    return 2;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir);

  for (int m : {2, 3}) {
    const DecimationReport rep = verify_decimation(3, m, BoundaryMode::neumann_cells);
    std::ofstream out(dir / ("decimation_d3_m" + std::to_string(m) + "_neumann.csv"),
                      std::ios::binary);
    write_spectrum_csv(out, rep.fine);
  }

  {
    const FdmComparison cmp = fdm_compare(3, 3, 0.01, 400);
    std::ofstream out(dir / "fdm_d3_m3.txt", std::ios::binary);
    out << "final_correlation = " << format_double(cmp.correlation.back()) << "\n";
    out << "final_sup_difference = " << format_double(cmp.sup_difference.back()) << "\n";
    out << "final_fvm_sup = " << format_double(cmp.fvm_sup.back()) << "\n";
    out << "final_fdm_sup = " << format_double(cmp.fdm_sup.back()) << "\n";
  }

  {
    // Desk-scale figure reproduction: the gasket run at m = 5, N = 20000.
    SimulateOptions opts = preset("gasket-paper");
    opts.m = 5;
    opts.N = 20000;
    const SchemeConfig config = opts.to_scheme_config();
    const InitialCondition ic = InitialCondition::parse(opts.initial, 3);
    const RunResult res = run(config, initial_state(ic, 3, 5), 3, 5);
    if (!res.ok) {
      std::cerr << "desk-scale run failed: " << res.error << "\n";
      return 1;
    }
    const SimplexSpace space = SimplexSpace::regular(3);
    for (std::size_t s = 0; s < res.series.steps.size(); ++s) {
      if (res.series.steps[s] != 500) continue;
      std::ofstream out(dir / "gasket_desk_k500.csv", std::ios::binary);
      write_snapshot_csv(out, space, 5, 500, 500.0 * config.step_size(), res.series.values[s]);
    }
  }

  std::cout << "golden files written to " << dir << "\n";
  return 0;
}
