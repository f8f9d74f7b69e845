#ifndef SIERPFVM_SPECTRAL_HPP
#define SIERPFVM_SPECTRAL_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sierpfvm/cell_graph.hpp"

namespace sierpfvm {

struct SchemeMatrix;  // scheme.hpp

/// Dense-eigensolver budget: matrices above this size are refused.
inline constexpr std::int64_t kEigenSolverBudget = 4096;

/// Grouping tolerance for eigenvalue multiplicities.
inline constexpr double kEigenvalueGroupTol = 1e-8;

/// Threshold below which a decimation residual counts as conforming.
inline constexpr double kDecimationConformTol = 1e-8;

/// Spectral decimation machinery for branching number d: the forward map
/// Phi(x) = x (d+2-x) relating consecutive-level eigenvalues, and its two
/// inverse branches defined for x <= (d+2)^2/4.
struct DecimationMap {
  int d;

  double phi(double x) const;
  std::pair<double, double> branches(double x) const;  // (phi-, phi+)
  double branch_point() const;                         // (d+2)^2 / 4
};

double phi(int d, double x);
std::pair<double, double> phi_branches(int d, double x);

enum class Provenance { direct_eigensolver, phi_minus_lift, phi_plus_lift };
const char* to_string(Provenance p);

struct SpectralLine {
  double eigenvalue = 0.0;
  int multiplicity = 1;
  Provenance provenance = Provenance::direct_eigensolver;
  /// dist(Phi(eigenvalue), coarse spectrum); NaN when no coarse spectrum.
  double phi_residual = 0.0;
  /// dist(eigenvalue, nearest branch lift of the coarse spectrum); NaN likewise.
  double lift_residual = 0.0;
  bool conforming = false;
};

struct SpectrumReport {
  int d = 0;
  int m = 0;
  BoundaryMode mode = BoundaryMode::neumann_cells;
  std::int64_t dimension = 0;
  std::vector<SpectralLine> lines;  // ascending eigenvalues

  std::vector<double> eigenvalues() const;  // with multiplicity, ascending
  int conforming_count() const;
  int exceptional_count() const;
};

/// Full symmetric eigendecomposition of the cell Laplacian (within budget),
/// grouped into multiplicities. Provenance is direct for every line.
SpectrumReport direct_spectrum(const CellLaplacian& L);

/// Diagnostic between levels m and m-1: annotates each level-m eigenvalue
/// with its forward residual dist(Phi(lambda), spec(L_{m-1})) and nearest
/// branch-lift residual, then classifies conforming vs exceptional. Reports
/// only; never asserts.
struct DecimationReport {
  SpectrumReport fine;    // level m, annotated
  SpectrumReport coarse;  // level m-1, direct
};
DecimationReport verify_decimation(int d, int m, BoundaryMode mode,
                                   int ghost_increment = 2);

/// Largest stable explicit step: 2 / (d^2 (d+2)^m).
double cfl_max_h(int d, int m);

/// Exact-rational admissibility of a given step against the CFL bound.
bool cfl_admissible(int d, int m, double h);

/// Spectral radius of the explicit operator A = I - h c L (symmetric, so
/// rho = max |1 - h c lambda_i|). Dense eigensolve within dense_budget,
/// power iteration beyond it.
double spectral_radius(const SchemeMatrix& M, std::int64_t dense_budget = kEigenSolverBudget);

}  // namespace sierpfvm

#endif
