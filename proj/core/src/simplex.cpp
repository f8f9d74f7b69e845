#include "sierpfvm/simplex.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sierpfvm {

namespace {

void check_d(int d) {
  if (d < 2) throw std::invalid_argument("branching number d must be >= 2, got " + std::to_string(d));
}

void check_level(int m) {
  if (m < 0) throw std::invalid_argument("level m must be >= 0, got " + std::to_string(m));
}

std::int64_t checked_pow(std::int64_t base, int exp, const char* what) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r))
      throw std::overflow_error(std::string(what) + " overflows 64-bit integers");
  }
  return r;
}

}  // namespace

SimplexSpace SimplexSpace::regular(int d) {
  check_d(d);
  SimplexSpace s;
  s.d = d;
  const int dim = d - 1;
  s.points.assign(d, Eigen::VectorXd::Zero(dim));
  // Incremental construction: vertex k sits above the centroid of the first
  // k vertices, at the height that keeps all edges unit length. The
  // circumradius of a regular (k-1)-simplex with unit edge is
  // sqrt((k-1)/(2k)), so the height is sqrt((k+1)/(2k)).
  for (int k = 1; k < d; ++k) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < k; ++i) c += s.points[i];
    c /= static_cast<double>(k);
    s.points[k] = c;
    s.points[k][k - 1] = std::sqrt((k + 1.0) / (2.0 * k));
  }
  return s;
}

Eigen::VectorXd SimplexSpace::centroid() const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(ambient_dim());
  for (const auto& p : points) c += p;
  return c / static_cast<double>(d);
}

Word Word::repeated(int letter, int m) {
  return Word(std::vector<int>(static_cast<std::size_t>(m), letter));
}

Word Word::parse(const std::string& digits, int d) {
  Word w;
  w.letters.reserve(digits.size());
  for (char c : digits) {
    if (c < '1' || c > '9')
      throw std::invalid_argument("word digit out of range: '" + std::string(1, c) + "'");
    w.letters.push_back(c - '0');
  }
  validate_word(d, w);
  return w;
}

std::string Word::to_string() const {
  std::string s;
  for (int l : letters) s += static_cast<char>('0' + l);
  return s;
}

void validate_word(int d, const Word& w) {
  check_d(d);
  for (int l : w.letters) {
    if (l < 1 || l > d)
      throw std::invalid_argument("word letter " + std::to_string(l) +
                                  " outside alphabet {1.." + std::to_string(d) + "}");
  }
}

std::int64_t word_index(int d, const Word& w) {
  validate_word(d, w);
  std::int64_t idx = 0;
  for (int l : w.letters) {
    if (__builtin_mul_overflow(idx, static_cast<std::int64_t>(d), &idx))
      throw std::overflow_error("word index overflows 64-bit integers");
    idx += l - 1;
  }
  return idx;
}

Word word_from_index(int d, int m, std::int64_t index) {
  check_d(d);
  check_level(m);
  const std::int64_t n = cell_count(d, m);
  if (index < 0 || index >= n)
    throw std::out_of_range("cell index " + std::to_string(index) + " outside [0, " +
                            std::to_string(n) + ")");
  Word w;
  w.letters.assign(static_cast<std::size_t>(m), 1);
  for (int k = m - 1; k >= 0; --k) {
    w.letters[static_cast<std::size_t>(k)] = static_cast<int>(index % d) + 1;
    index /= d;
  }
  return w;
}

std::int64_t cell_count(int d, int m) {
  check_d(d);
  check_level(m);
  return checked_pow(d, m, "cell count d^m");
}

std::uint64_t vertex_count(int d, int m) {
  check_d(d);
  check_level(m);
  // (d^{m+1} + d) / 2, checked.
  std::uint64_t p = 1;
  for (int i = 0; i < m + 1; ++i) {
    if (__builtin_mul_overflow(p, static_cast<std::uint64_t>(d), &p))
      throw std::overflow_error("vertex count overflows 64-bit integers");
  }
  std::uint64_t s = p;
  if (__builtin_add_overflow(s, static_cast<std::uint64_t>(d), &s))
    throw std::overflow_error("vertex count overflows 64-bit integers");
  return s / 2;
}

Rational cell_measure(int d, int m) {
  check_d(d);
  check_level(m);
  return Rational(1, checked_pow(d, m, "cell measure denominator d^m"));
}

MeasureSpec MeasureSpec::standard(int d) {
  check_d(d);
  MeasureSpec ms;
  ms.weights.assign(static_cast<std::size_t>(d), 1.0 / d);
  ms.ratios.assign(static_cast<std::size_t>(d), 0.5);
  ms.hausdorff_dim = std::log2(static_cast<double>(d));
  return ms;
}

MeasureSpec MeasureSpec::from_ratios(std::vector<double> ratios) {
  if (ratios.size() < 2) throw std::invalid_argument("need at least 2 contraction ratios");
  for (double r : ratios) {
    if (!(r > 0.0 && r < 1.0))
      throw std::invalid_argument("contraction ratios must lie in (0,1)");
  }
  // sum R_i^D is strictly decreasing in D, > 1 at D=0+ and -> 0 as D grows.
  auto mass = [&](double dim) {
    double s = 0.0;
    for (double r : ratios) s += std::pow(r, dim);
    return s;
  };
  double lo = 1e-12, hi = 1.0;
  while (mass(hi) > 1.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mass(mid) > 1.0 ? lo : hi) = mid;
  }
  MeasureSpec ms;
  ms.hausdorff_dim = 0.5 * (lo + hi);
  ms.ratios = std::move(ratios);
  ms.weights.reserve(ms.ratios.size());
  for (double r : ms.ratios) ms.weights.push_back(std::pow(r, ms.hausdorff_dim));
  ms.validate();
  return ms;
}

bool MeasureSpec::is_standard(int d) const {
  if (static_cast<int>(weights.size()) != d) return false;
  for (double r : ratios)
    if (r != 0.5) return false;
  for (double w : weights)
    if (w != 1.0 / d) return false;
  return true;
}

void MeasureSpec::validate() const {
  if (weights.size() != ratios.size() || weights.empty())
    throw std::invalid_argument("measure weights and ratios must have equal, positive length");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("measure weights must be strictly positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("measure weights must sum to 1 (got " + std::to_string(sum) + ")");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (std::abs(weights[i] - std::pow(ratios[i], hausdorff_dim)) > 1e-12)
      throw std::invalid_argument("measure weight " + std::to_string(i) +
                                  " does not equal ratio^hausdorff_dim");
  }
}

Eigen::VectorXd apply_contraction(const SimplexSpace& space, int letter,
                                  const Eigen::VectorXd& x) {
  if (letter < 1 || letter > space.d)
    throw std::invalid_argument("contraction letter " + std::to_string(letter) +
                                " outside {1.." + std::to_string(space.d) + "}");
  if (x.size() != space.ambient_dim())
    throw std::invalid_argument("point dimension mismatch");
  return 0.5 * (x + space.points[static_cast<std::size_t>(letter - 1)]);
}

Eigen::VectorXd apply_word(const SimplexSpace& space, const Word& w, Eigen::VectorXd x) {
  validate_word(space.d, w);
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    x = apply_contraction(space, *it, x);
  return x;
}

Eigen::VectorXd cell_barycenter(const SimplexSpace& space, const Word& w) {
  return apply_word(space, w, space.centroid());
}

bool operator==(const BaryPoint& a, const BaryPoint& b) {
  if (a.level == b.level) return a.num == b.num;
  const BaryPoint& lo = a.level < b.level ? a : b;
  const BaryPoint& hi = a.level < b.level ? b : a;
  return rescale_bary(lo, hi.level).num == hi.num;
}

BaryPoint vertex_bary(int d, const Word& w, int corner) {
  check_d(d);
  validate_word(d, w);
  if (corner < 0 || corner >= d)
    throw std::invalid_argument("corner index " + std::to_string(corner) + " outside [0, " +
                                std::to_string(d) + ")");
  const int m = w.level();
  if (m > 62) throw std::overflow_error("barycentric denominator 2^m overflows 64-bit integers");
  BaryPoint p;
  p.num.assign(static_cast<std::size_t>(d), 0);
  p.num[static_cast<std::size_t>(corner)] = 1;
  p.level = 0;
  // Innermost contraction first: (p + e_letter) / 2 at each step.
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    const std::int64_t unit = std::int64_t{1} << p.level;
    p.num[static_cast<std::size_t>(*it - 1)] += unit;
    ++p.level;
  }
  return p;
}

std::vector<BaryPoint> cell_vertices_bary(int d, const Word& w) {
  std::vector<BaryPoint> vs;
  vs.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) vs.push_back(vertex_bary(d, w, i));
  return vs;
}

BaryPoint rescale_bary(const BaryPoint& p, int target_level) {
  if (target_level < p.level)
    throw std::invalid_argument("cannot rescale barycentric point to a coarser level");
  if (target_level > 62)
    throw std::overflow_error("barycentric denominator 2^m overflows 64-bit integers");
  BaryPoint q = p;
  const std::int64_t f = std::int64_t{1} << (target_level - p.level);
  for (auto& n : q.num) n *= f;
  q.level = target_level;
  return q;
}

Eigen::VectorXd embed_bary(const SimplexSpace& space, const BaryPoint& p) {
  if (static_cast<int>(p.num.size()) != space.d)
    throw std::invalid_argument("barycentric point has wrong arity");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(space.ambient_dim());
  const double den = std::ldexp(1.0, p.level);
  for (int i = 0; i < space.d; ++i)
    x += (static_cast<double>(p.num[static_cast<std::size_t>(i)]) / den) *
         space.points[static_cast<std::size_t>(i)];
  return x;
}

}  // namespace sierpfvm
