#ifndef SIERPFVM_SIMPLEX_HPP
#define SIERPFVM_SIMPLEX_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <boost/rational.hpp>

namespace sierpfvm {

/// Exact rational value; used for cell measures and mass bookkeeping.
using Rational = boost::rational<std::int64_t>;

/// Geometry of a Sierpinski simplex with branching number d: the d fixed
/// points of the midpoint contractions, embedded in R^{d-1}.
struct SimplexSpace {
  int d = 0;
  std::vector<Eigen::VectorXd> points;  // P_0 .. P_{d-1}, each of dimension d-1

  /// Vertices of the regular (d-1)-simplex with unit edge length.
  static SimplexSpace regular(int d);

  Eigen::VectorXd centroid() const;
  int ambient_dim() const { return d - 1; }
};

/// Address of an m-cell: a sequence of letters in {1..d}. The empty word is
/// the whole simplex. Lexicographic order of equal-length words is the
/// canonical cell index.
struct Word {
  std::vector<int> letters;

  Word() = default;
  explicit Word(std::vector<int> ls) : letters(std::move(ls)) {}

  int level() const { return static_cast<int>(letters.size()); }

  /// Word of `letter` repeated m times (the corner-cell address).
  static Word repeated(int letter, int m);
  /// Parse a digit string such as "12231"; empty string is the whole simplex.
  static Word parse(const std::string& digits, int d);
  std::string to_string() const;
};

void validate_word(int d, const Word& w);

/// Zero-based lexicographic index of a word among all words of its length.
std::int64_t word_index(int d, const Word& w);
Word word_from_index(int d, int m, std::int64_t index);

/// d^m with overflow detection.
std::int64_t cell_count(int d, int m);

/// Number of vertices of the level-m vertex graph, (d^{m+1}+d)/2.
/// Throws std::overflow_error when the count does not fit 64 bits.
std::uint64_t vertex_count(int d, int m);

/// Measure of any m-cell under the standard self-similar measure: d^{-m}.
Rational cell_measure(int d, int m);

/// Self-similar measure description. The solver only accepts the standard
/// measure (all ratios 1/2, all weights 1/d); other ratios are supported
/// here for completeness.
struct MeasureSpec {
  std::vector<double> weights;  // mu_1 .. mu_d, positive, sum 1
  std::vector<double> ratios;   // R_1 .. R_d in (0,1)
  double hausdorff_dim = 0.0;   // D_H with sum R_i^{D_H} = 1

  static MeasureSpec standard(int d);
  /// Solves the Moran equation sum R_i^D = 1 for D and derives the weights.
  static MeasureSpec from_ratios(std::vector<double> ratios);

  bool is_standard(int d) const;
  /// Checks the defining identities to 1e-12; throws std::invalid_argument.
  void validate() const;
};

/// f_i(x) = (x + P_{i-1}) / 2. Letter is 1-based.
Eigen::VectorXd apply_contraction(const SimplexSpace& space, int letter,
                                  const Eigen::VectorXd& x);

/// F_w(x): composition with the leftmost letter outermost.
Eigen::VectorXd apply_word(const SimplexSpace& space, const Word& w,
                           Eigen::VectorXd x);

/// F_w(centroid): the plot point used for an m-cell.
Eigen::VectorXd cell_barycenter(const SimplexSpace& space, const Word& w);

/// Exact location of a point of V_m in barycentric coordinates: integer
/// numerators over the common denominator 2^level. Sum of numerators equals
/// 2^level. Affine independence of the P_i makes equality of BaryPoints
/// equivalent to equality of the embedded points.
struct BaryPoint {
  std::vector<std::int64_t> num;  // size d
  int level = 0;                  // denominator exponent

  friend bool operator==(const BaryPoint& a, const BaryPoint& b);
};

/// F_w(P_corner) with corner in 0..d-1, exact.
BaryPoint vertex_bary(int d, const Word& w, int corner);

/// The d corners F_w(P_0) .. F_w(P_{d-1}) of the cell F_w(K), exact.
std::vector<BaryPoint> cell_vertices_bary(int d, const Word& w);

/// Rescale to a common (larger) level. Throws if target < current level.
BaryPoint rescale_bary(const BaryPoint& p, int target_level);

/// Embed a barycentric point with the given space's coordinates.
Eigen::VectorXd embed_bary(const SimplexSpace& space, const BaryPoint& p);

}  // namespace sierpfvm

#endif
