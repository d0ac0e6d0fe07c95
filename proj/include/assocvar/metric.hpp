#pragma once

#include <optional>
#include <string>
#include <vector>

#include "assocvar/algebra.hpp"
#include "assocvar/points.hpp"

namespace assocvar {

/// Ph(A) (x)_A Ph(A): generators x_i, dx_i = "d"+name, then the second copy
/// dy_i written "e"+name, with relations J, dJ(dx), dJ(dy).
struct TensorSquare {
  FpAlgebra base;
  FpAlgebra algebra;

  std::size_t m() const { return base.num_gens(); }
  Letter x(std::size_t i) const { return static_cast<Letter>(i); }
  Letter dx(std::size_t i) const { return static_cast<Letter>(m() + i); }
  Letter dy(std::size_t i) const { return static_cast<Letter>(2 * m() + i); }
};

TensorSquare tensor_square(const FpAlgebra& a);

/// Image g(t) of the tensor variable; every word has exactly one dx and one dy letter.
struct MetricTensor {
  TensorSquare ambient;
  NcPoly g_of_t;
};

/// True when every word of p has exactly one dx-letter and one dy-letter.
bool is_bilinear(const TensorSquare& ts, const NcPoly& p);

/// Throws NonHomogeneous unless g is bilinear in (dx, dy).
MetricTensor make_metric(const TensorSquare& ts, NcPoly g);
/// g(t) = sum_i dx_i dy_i.
MetricTensor euclidean_metric(const TensorSquare& ts);
MetricTensor euclidean_metric(const FpAlgebra& a);

/// Pullback of g under the linear chart change x_i -> sum_j l(i, j) x_j.
/// For the Euclidean g the Gram matrix in the standard basis is l^T l.
MetricTensor pullback_linear(const MetricTensor& g, const Matrix& l);

struct TangentSpace {
  Point point;
  /// Rows form a basis of the solutions of the linearized relations.
  Matrix basis;
  std::size_t dim() const { return basis.rows(); }
};

/// Throws InvalidArgument if p is not a point of a.
TangentSpace tangent_space_at(const FpAlgebra& a, const Point& p);

/// Euclidean Gram-Schmidt of the basis over an ordered field; each vector is
/// scaled to unit length when its squared norm is a rational square.
/// Over F_p the input is returned unchanged.
TangentSpace orthonormalized(const TangentSpace& t);

/// Value of a (dx, dy)-bilinear tensor with x := p, dx := u, dy := v (scalars commute).
Scalar eval_tensor(const TensorSquare& ts, const NcPoly& g, const Point& p, const Vector& u,
                   const Vector& v);

struct InnerProduct {
  Matrix gram;
  bool symmetric = false;
  /// Absent over fields without an order.
  std::optional<bool> positive_definite;
};

InnerProduct metric_at(const MetricTensor& g, const TangentSpace& t);

struct RiemannianCheck {
  bool riemannian = true;
  std::optional<Point> witness;
  /// The sample was empty.
  bool vacuous = false;
};

RiemannianCheck is_riemannian(const MetricTensor& g, const std::vector<Point>& sample);

/// A (x)_k k[t] with t appended as the last generator.
FpAlgebra tensor_field_source(const FpAlgebra& a);
/// The field x_i -> x_i, t -> g(t).
AlgebraHom tensor_field_hom(const MetricTensor& g);

struct TensorFieldCheck {
  bool commutes = true;
  std::string witness;
  std::optional<Point> point;
};

/// Pointwise check of the 2-tensor field diagram: at every sample point the
/// base generators must land on the point's coordinates and t must land on a
/// (dx, dy)-bilinear form.
TensorFieldCheck check_tensor_field(const AlgebraHom& h, const TensorSquare& ts,
                                    const std::vector<Point>& sample);

/// (A (x)_k k<fiber>)/I with the structure map A -> E.
struct Bundle {
  FpAlgebra base;
  FpAlgebra total;
  AlgebraHom structure;

  std::size_t fiber_gens() const { return total.num_gens() - base.num_gens(); }
};

/// Builds a bundle from a presentation whose generators include the base
/// generators (matched by name); the others are fiber generators. Base
/// relations and base/fiber commutators are added when missing.
Bundle make_bundle(const FpAlgebra& base, const Presentation& total);

/// Fiber over p: the relations with the base generators evaluated at p.
Presentation bundle_fiber_at(const Bundle& e, const Point& p);

struct RankCheck {
  bool ok = true;
  std::string witness;
  std::optional<Point> point;
};

/// At each sample point the fiber must be affine k-space of dimension `rank`:
/// its abelianized ideal is generated by forms of degree <= 1 leaving `rank`
/// free generators, and over F_p it has exactly p^rank points.
RankCheck check_bundle_rank(const Bundle& e, const std::vector<Point>& sample, std::size_t rank);

struct TransitionCheck {
  bool linear = false;
  bool invertible = false;
  std::optional<Matrix> matrix;
  std::string witness;
};

/// A transition between trivializations must be an invertible linear map.
TransitionCheck check_transition(const AlgebraHom& t);

/// s o f = id on the generators of A.
bool check_section(const AlgebraHom& s, const AlgebraHom& f);

}  // namespace assocvar
