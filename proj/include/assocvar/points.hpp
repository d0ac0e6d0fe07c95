#pragma once

#include <cstdint>
#include <vector>

#include "assocvar/algebra.hpp"
#include "assocvar/linalg.hpp"

namespace assocvar {

/// A k-point: one scalar per generator. Scalars commute, so a word
/// evaluates to a product of powers.
struct Point {
  std::vector<Scalar> values;

  friend bool operator==(const Point& a, const Point& b) { return a.values == b.values; }
  friend bool operator<(const Point& a, const Point& b) { return a.values < b.values; }
};

/// Unital evaluation f(p) of a polynomial at a point.
Scalar eval(const NcPoly& f, const Point& p);

/// True when every relation of `a` vanishes at p.
bool is_point_of(const FpAlgebra& a, const Point& p);

struct EnumerateOptions {
  unsigned jobs = 1;
  /// Largest admissible search space p^n.
  std::uint64_t max_candidates = 100'000'000;
};

class PointSet;

/// Exhaustive search for the F_p-points of `a`.
PointSet enumerate_points(const FpAlgebra& a, const EnumerateOptions& options = {});

/// D(f) within X.
PointSet basic_open(const NcPoly& f, const PointSet& x);

/// Finite, sorted, duplicate-free set of points of an algebra.
class PointSet {
 public:
  /// Validates membership, sorts and deduplicates. Throws InvalidArgument
  /// naming the first offending point.
  PointSet(FpAlgebra algebra, std::vector<Point> points);

  const FpAlgebra& algebra() const { return algebra_; }
  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  bool contains(const Point& p) const;

  friend bool operator==(const PointSet& a, const PointSet& b) { return a.points_ == b.points_; }

 private:
  struct Trusted {};
  PointSet(FpAlgebra algebra, std::vector<Point> points, Trusted);
  friend PointSet enumerate_points(const FpAlgebra&, const EnumerateOptions&);
  friend PointSet basic_open(const NcPoly&, const PointSet&);

  FpAlgebra algebra_;
  std::vector<Point> points_;
};

/// For h: B -> A, the map pts A -> pts B, p |-> p o h, applied to X.
PointSet induced_point_map(const AlgebraHom& h, const PointSet& x);

/// Functions U -> k generated by the values of A, closed under products and
/// reciprocals of nowhere-vanishing members.
struct SectionSpace {
  PointSet open_set;
  /// Linearly independent value tables, each of length |U|.
  std::vector<Vector> basis;
  bool contains_unit_inverses = false;

  std::size_t dimension() const { return basis.size(); }
};

SectionSpace section_space(const PointSet& u);

/// Basis of the polynomials of degree <= `degree` vanishing on all of U.
std::vector<NcPoly> kernel_of_rho(const PointSet& u, int degree);

/// All words of length <= degree over n letters, in deglex order.
std::vector<Word> words_up_to(std::size_t num_gens, int degree);

}  // namespace assocvar
