#include "sierpfvm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "sierpfvm/scheme.hpp"

namespace sierpfvm {

double DecimationMap::phi(double x) const { return x * (d + 2 - x); }

double DecimationMap::branch_point() const {
  const double s = static_cast<double>(d + 2);
  return s * s / 4.0;
}

std::pair<double, double> DecimationMap::branches(double x) const {
  const double bp = branch_point();
  if (x > bp)
    throw std::domain_error("branch maps are undefined above (d+2)^2/4 = " + std::to_string(bp));
  const double s = static_cast<double>(d + 2);
  const double root = std::sqrt(std::max(0.0, s * s - 4.0 * x));
  // 2x / (s + root) equals (s - root) / 2 without cancellation near x = 0.
  return {2.0 * x / (s + root), (s + root) / 2.0};
}

double phi(int d, double x) { return DecimationMap{d}.phi(x); }

std::pair<double, double> phi_branches(int d, double x) {
  return DecimationMap{d}.branches(x);
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::direct_eigensolver: return "direct-eigensolver";
    case Provenance::phi_minus_lift: return "phi-minus-lift";
    case Provenance::phi_plus_lift: return "phi-plus-lift";
  }
  return "?";
}

std::vector<double> SpectrumReport::eigenvalues() const {
  std::vector<double> es;
  es.reserve(static_cast<std::size_t>(dimension));
  for (const auto& line : lines)
    for (int i = 0; i < line.multiplicity; ++i) es.push_back(line.eigenvalue);
  return es;
}

int SpectrumReport::conforming_count() const {
  int c = 0;
  for (const auto& line : lines)
    if (line.conforming) c += line.multiplicity;
  return c;
}

int SpectrumReport::exceptional_count() const {
  return static_cast<int>(dimension) - conforming_count();
}

namespace {

std::vector<double> dense_eigenvalues(const CellLaplacian& L) {
  if (L.n > kEigenSolverBudget)
    throw std::invalid_argument(
        "matrix dimension " + std::to_string(L.n) + " exceeds the dense eigensolver budget " +
        std::to_string(kEigenSolverBudget) + "; generate the spectrum by decimation instead");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L.to_dense(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
  return std::vector<double>(es.eigenvalues().data(), es.eigenvalues().data() + L.n);
}

SpectrumReport group_spectrum(const CellLaplacian& L, const std::vector<double>& eigs) {
  SpectrumReport r;
  r.d = L.d;
  r.m = L.m;
  r.mode = L.boundary_mode;
  r.dimension = L.n;
  for (double e : eigs) {
    if (!r.lines.empty() && std::abs(e - r.lines.back().eigenvalue) <= kEigenvalueGroupTol) {
      ++r.lines.back().multiplicity;
    } else {
      SpectralLine line;
      line.eigenvalue = e;
      line.phi_residual = std::numeric_limits<double>::quiet_NaN();
      line.lift_residual = std::numeric_limits<double>::quiet_NaN();
      r.lines.push_back(line);
    }
  }
  return r;
}

double dist_to(const std::vector<double>& sorted, double x) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  double best = std::numeric_limits<double>::infinity();
  if (it != sorted.end()) best = std::min(best, std::abs(*it - x));
  if (it != sorted.begin()) best = std::min(best, std::abs(*std::prev(it) - x));
  return best;
}

}  // namespace

SpectrumReport direct_spectrum(const CellLaplacian& L) {
  return group_spectrum(L, dense_eigenvalues(L));
}

DecimationReport verify_decimation(int d, int m, BoundaryMode mode, int ghost_increment) {
  if (m < 2) throw std::invalid_argument("decimation check requires m >= 2");
  const CellLaplacian Lf = build_cell_laplacian(build_cell_graph(d, m), mode, ghost_increment);
  const CellLaplacian Lc =
      build_cell_laplacian(build_cell_graph(d, m - 1), mode, ghost_increment);

  DecimationReport rep;
  rep.fine = direct_spectrum(Lf);
  rep.coarse = direct_spectrum(Lc);

  const std::vector<double> coarse = rep.coarse.eigenvalues();
  const std::vector<double> fine = rep.fine.eigenvalues();
  const DecimationMap dec{d};

  for (auto& line : rep.fine.lines) {
    line.phi_residual = dist_to(coarse, dec.phi(line.eigenvalue));
    // Nearest branch lift of any coarse eigenvalue within the branch domain.
    double best = std::numeric_limits<double>::infinity();
    Provenance prov = Provenance::direct_eigensolver;
    for (double nu : coarse) {
      if (nu > dec.branch_point()) continue;
      const auto [lo, hi] = dec.branches(nu);
      if (std::abs(lo - line.eigenvalue) < best) {
        best = std::abs(lo - line.eigenvalue);
        prov = Provenance::phi_minus_lift;
      }
      if (std::abs(hi - line.eigenvalue) < best) {
        best = std::abs(hi - line.eigenvalue);
        prov = Provenance::phi_plus_lift;
      }
    }
    line.lift_residual = best;
    line.conforming = line.phi_residual <= kDecimationConformTol;
    if (line.conforming && std::isfinite(best) && best <= kDecimationConformTol)
      line.provenance = prov;
  }
  // Coarse lines also get their forward residual against the fine spectrum
  // under the branch maps, for the report's other direction.
  for (auto& line : rep.coarse.lines) {
    if (line.eigenvalue > dec.branch_point()) continue;
    const auto [lo, hi] = dec.branches(line.eigenvalue);
    line.lift_residual = std::min(dist_to(fine, lo), dist_to(fine, hi));
  }
  return rep;
}

double cfl_max_h(int d, int m) {
  if (d < 2) throw std::invalid_argument("branching number d must be >= 2");
  if (m < 0) throw std::invalid_argument("level m must be >= 0");
  return 2.0 / (static_cast<double>(d) * d * std::pow(static_cast<double>(d + 2), m));
}

bool cfl_admissible(int d, int m, double h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("step size h must be positive and finite");
  namespace mp = boost::multiprecision;
  // h d^2 (d+2)^m <= 2, exactly. A double is a dyadic rational, so the
  // comparison has an exact answer.
  mp::cpp_int scale = mp::cpp_int(d) * d;
  for (int i = 0; i < m; ++i) scale *= (d + 2);
  int exp = 0;
  const double mant = std::frexp(h, &exp);  // h = mant * 2^exp, |mant| in [0.5, 1)
  const auto mant_int = mp::cpp_int(static_cast<std::int64_t>(std::ldexp(mant, 53)));
  // h = mant_int * 2^{exp - 53}
  mp::cpp_int lhs = mant_int * scale;
  mp::cpp_int rhs = 2;
  const int shift = exp - 53;
  if (shift > 0)
    lhs <<= shift;
  else
    rhs <<= -shift;
  return lhs <= rhs;
}

double spectral_radius(const SchemeMatrix& M, std::int64_t dense_budget) {
  const double hc = M.h * M.coefficient;
  if (M.scheme != Scheme::explicit_euler)
    throw std::invalid_argument("spectral radius is defined here for the explicit operator");
  if (M.n() <= dense_budget) {
    const std::vector<double> eigs = dense_eigenvalues(M.laplacian);
    double rho = 0.0;
    for (double l : eigs) rho = std::max(rho, std::abs(1.0 - hc * l));
    return rho;
  }
  // Power iteration on A = I - hc L; symmetry makes rho the dominant |gamma|.
  const std::int64_t n = M.n();
  std::vector<double> x(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i)
    x[static_cast<std::size_t>(i)] = 1.0 + 0.5 * std::sin(static_cast<double>(i) + 1.0);
  std::vector<double> lx;
  double rho = 0.0;
  constexpr int kMaxIters = 200000;
  constexpr double kTol = 1e-10;
  for (int it = 0; it < kMaxIters; ++it) {
    M.laplacian.apply(x, lx);
    long double norm2 = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
      const double v = x[static_cast<std::size_t>(i)] - hc * lx[static_cast<std::size_t>(i)];
      x[static_cast<std::size_t>(i)] = v;
      norm2 += static_cast<long double>(v) * v;
    }
    const double norm = std::sqrt(static_cast<double>(norm2));
    if (norm == 0.0) return 0.0;
    for (auto& v : x) v /= norm;
    if (it > 0 && std::abs(norm - rho) <= kTol * std::max(1.0, norm)) return norm;
    rho = norm;
  }
  throw std::runtime_error("power iteration did not converge within " +
                           std::to_string(kMaxIters) + " iterations");
}

}  // namespace sierpfvm
