#ifndef SIERPFVM_ANALYSIS_HPP
#define SIERPFVM_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sierpfvm/scheme.hpp"

namespace sierpfvm {

/// max over recorded steps of the d^{-m/2}-scaled Euclidean norm.
double norm_2_inf(const StateSeries& series);

/// Measure-weighted mean onto the parent cells: coarse_J = (1/d) sum over
/// the d children J.i. Preserves total mass.
std::vector<double> restrict_state(int d, const std::vector<double>& fine);

/// Constant prolongation onto the d children. restrict is its left inverse.
std::vector<double> prolong_state(int d, const std::vector<double>& coarse);

struct ConvergenceRow {
  int m = 0;
  double h = 0.0;
  double error = 0.0;  // ||.||_{2,inf} discrepancy against the restricted reference
  double rate = 0.0;   // log2(e_m / e_{m+1}), 0 in the first row
  bool failed = false;
  std::string note;
};

struct ConvergenceTable {
  int d = 0;
  int m_ref = 0;
  Scheme scheme = Scheme::implicit_euler;
  double T = 0.0;
  std::int64_t N = 0;
  std::vector<ConvergenceRow> rows;

  /// True when every valid error strictly decreases with m.
  bool monotone_decreasing() const;
};

/// Self-convergence study: runs every level of m_list and the reference
/// level max(m_list)+1 from the vertex-spline initial condition at the
/// junction f_1(P_1) = f_2(P_0), with one shared step count, restricts the
/// reference down and records the ||.||_{2,inf} discrepancy per level.
/// N = 0 picks a default: CFL-admissible at the reference level for the
/// explicit scheme, 200 steps for the implicit one. A CFL violation under
/// the explicit scheme marks that row failed and the study continues.
ConvergenceTable self_convergence_study(int d, const std::vector<int>& m_list, Scheme scheme,
                                        double T, std::int64_t N = 0,
                                        int snapshot_count = 11);

/// Explicit finite-difference comparator on the merged vertex graph versus
/// the finite volume run, from matching spike data at the junction
/// f_1(P_1) = f_2(P_0). Diagnostic only.
struct FdmComparison {
  int d = 0;
  int m = 0;
  double T = 0.0;
  std::int64_t N = 0;
  std::vector<std::int64_t> steps;
  std::vector<double> correlation;     // per snapshot, cellwise Pearson r
  std::vector<double> sup_difference;  // per snapshot, max |fvm - fdm_cell_avg|
  std::vector<double> fvm_sup;
  std::vector<double> fdm_sup;
};

FdmComparison fdm_compare(int d, int m, double T, std::int64_t N,
                          std::vector<std::int64_t> snapshot_steps = {});

}  // namespace sierpfvm

#endif
