#include <doctest.h>

#include <map>
#include <random>

#include "assocvar/error.hpp"
#include "assocvar/metric.hpp"
#include "assocvar/phase.hpp"
#include "support.hpp"

using namespace assocvar;
using testing_support::random_scalar;

namespace {

FpAlgebra circle_q() { return FpAlgebra::parse("field Q; gens x y; rel x*y - y*x; rel x*x + y*y - 1"); }
FpAlgebra circle_f5() { return FpAlgebra::parse("field F5; gens x y; rel x*y - y*x; rel x*x + y*y - 1"); }

Point pt(std::initializer_list<Scalar> v) { return Point{std::vector<Scalar>(v)}; }

Matrix gram_of(const Matrix& l) { return l.transpose() * l; }

}  // namespace

TEST_CASE("tensor square layout") {
  TensorSquare ts = tensor_square(circle_q());
  CHECK(ts.algebra.gens() == std::vector<std::string>{"x", "y", "dx", "dy", "ex", "ey"});
  CHECK(ts.dx(1) == 3);
  CHECK(ts.dy(0) == 4);
  // dJ holds in both copies
  CHECK(ts.algebra.equal(ts.algebra.parse_poly("x*ex + ex*x + y*ey + ey*y"), ts.algebra.zero()));
  CHECK(ts.algebra.equal(ts.algebra.parse_poly("x*dx + dx*x + y*dy + dy*y"), ts.algebra.zero()));
}

TEST_CASE("bilinearity") {
  TensorSquare ts = tensor_square(FpAlgebra::polynomial(Field::rational(), {"x", "y"}));
  const FpAlgebra& t = ts.algebra;
  CHECK(is_bilinear(ts, t.parse_poly("dx*ex + x*dy*ey")));
  CHECK(!is_bilinear(ts, t.parse_poly("dx*dy")));
  CHECK(!is_bilinear(ts, t.parse_poly("dx*ex + 1")));
  CHECK_THROWS_AS(make_metric(ts, t.parse_poly("x*dx")), Error);
  CHECK(t.format(euclidean_metric(ts).g_of_t) == "dy*ey + dx*ex");
}

TEST_CASE("Euclidean metric is the identity on a free chart") {
  std::mt19937_64 rng(1);
  FpAlgebra plane = FpAlgebra::polynomial(Field::rational(), {"x", "y", "z"});
  MetricTensor g = euclidean_metric(plane);
  for (int t = 0; t < 20; ++t) {
    Point p{{random_scalar(rng, plane.field()), random_scalar(rng, plane.field()), random_scalar(rng, plane.field())}};
    TangentSpace ts = tangent_space_at(plane, p);
    CHECK(ts.dim() == 3);
    InnerProduct ip = metric_at(g, ts);
    CHECK(ip.gram == Matrix::identity(plane.field(), 3));
    CHECK(ip.symmetric);
    CHECK(ip.positive_definite == std::optional<bool>(true));
  }
}

TEST_CASE("linear pullback has Gram L^T L") {
  std::mt19937_64 rng(2);
  Field q = Field::rational();
  FpAlgebra plane = FpAlgebra::polynomial(q, {"x", "y"});
  MetricTensor g = euclidean_metric(plane);
  for (int t = 0; t < 20; ++t) {
    Matrix l(q, 2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) l(i, j) = random_scalar(rng, q);
    MetricTensor h = pullback_linear(g, l);
    InnerProduct ip = metric_at(h, tangent_space_at(plane, pt({Scalar(1), Scalar(2)})));
    CHECK(ip.gram == gram_of(l));
    CHECK(ip.positive_definite == std::optional<bool>(!Field::is_zero(determinant(l))));
  }
}

TEST_CASE("circle tangent lines") {
  FpAlgebra c = circle_q();
  MetricTensor g = euclidean_metric(c);
  TangentSpace t = tangent_space_at(c, pt({Scalar(3, 5), Scalar(4, 5)}));
  REQUIRE(t.dim() == 1);
  // raw basis (-4/3, 1) has squared length 25/9
  CHECK(metric_at(g, t).gram(0, 0) == Scalar(25, 9));
  for (Point p : {pt({Scalar(1), Scalar(0)}), pt({Scalar(0), Scalar(1)}), pt({Scalar(3, 5), Scalar(4, 5)}),
                  pt({Scalar(-5, 13), Scalar(12, 13)})}) {
    TangentSpace o = orthonormalized(tangent_space_at(c, p));
    CHECK(metric_at(g, o).gram == Matrix::identity(c.field(), 1));
    // tangent vector is orthogonal to the position
    CHECK(p.values[0] * o.basis(0, 0) + p.values[1] * o.basis(0, 1) == 0);
  }
  CHECK_THROWS_AS(tangent_space_at(c, pt({Scalar(1), Scalar(1)})), Error);
}

TEST_CASE("orthonormalization keeps irrational lengths unscaled") {
  FpAlgebra plane = FpAlgebra::polynomial(Field::rational(), {"x", "y"});
  TangentSpace t{pt({Scalar(0), Scalar(0)}), Matrix::from_rows(plane.field(), {{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(0)}}, 2)};
  TangentSpace o = orthonormalized(t);
  Matrix gram = o.basis * o.basis.transpose();
  CHECK(Field::is_zero(gram(0, 1)));
  CHECK(gram(0, 0) == 2);
  CHECK(gram(1, 1) == Scalar(1, 2));
}

TEST_CASE("Ph fibers are the tangent spaces over F5") {
  FpAlgebra c = circle_f5();
  PhasePresentation ph = phase_space(c);
  PointSet total = enumerate_points(ph.phase);
  std::map<Point, std::vector<Vector>> fibers;
  for (const auto& p : total.points())
    fibers[pt({p.values[0], p.values[1]})].push_back({p.values[2], p.values[3]});
  PointSet base = enumerate_points(c);
  CHECK(fibers.size() == base.size());
  for (const auto& bp : base.points()) {
    TangentSpace t = tangent_space_at(c, bp);
    CHECK(fibers[bp].size() == 25u / (t.dim() == 1 ? 5u : 1u));
    SpanBuilder span(c.field(), 2);
    for (std::size_t r = 0; r < t.dim(); ++r) span.insert(t.basis.row(r));
    for (const auto& v : fibers[bp]) CHECK(span.contains(v));
  }
}

TEST_CASE("Riemannian checks") {
  FpAlgebra c = circle_q();
  MetricTensor g = euclidean_metric(c);
  std::vector<Point> sample{pt({Scalar(1), Scalar(0)}), pt({Scalar(3, 5), Scalar(-4, 5)})};
  CHECK(is_riemannian(g, sample).riemannian);
  CHECK(is_riemannian(g, {}).vacuous);
  FpAlgebra plane = FpAlgebra::polynomial(Field::rational(), {"x", "y"});
  TensorSquare ts = tensor_square(plane);
  MetricTensor lorentz = make_metric(ts, ts.algebra.parse_poly("dx*ex - dy*ey"));
  RiemannianCheck r = is_riemannian(lorentz, {pt({Scalar(0), Scalar(0)})});
  CHECK(!r.riemannian);
  CHECK(r.witness.has_value());
  MetricTensor skew = make_metric(ts, ts.algebra.parse_poly("dx*ex + dx*ey + dy*ey"));
  CHECK(!metric_at(skew, tangent_space_at(plane, pt({Scalar(0), Scalar(0)}))).symmetric);
  CHECK_THROWS_AS(is_riemannian(euclidean_metric(circle_f5()), {pt({Scalar(1), Scalar(0)})}), Error);
}

TEST_CASE("position-dependent metric") {
  FpAlgebra plane = FpAlgebra::polynomial(Field::rational(), {"x", "y"});
  TensorSquare ts = tensor_square(plane);
  MetricTensor g = make_metric(ts, ts.algebra.parse_poly("x*x*dx*ex + dy*ey"));
  InnerProduct ip = metric_at(g, tangent_space_at(plane, pt({Scalar(3), Scalar(0)})));
  CHECK(ip.gram(0, 0) == 9);
  CHECK(ip.gram(1, 1) == 1);
  CHECK(eval_tensor(ts, g.g_of_t, pt({Scalar(2), Scalar(0)}), {Scalar(1), Scalar(1)}, {Scalar(1), Scalar(3)}) == 7);
  CHECK(!is_riemannian(g, {pt({Scalar(0), Scalar(5)})}).riemannian);
}

TEST_CASE("tensor field diagram") {
  FpAlgebra c = circle_q();
  MetricTensor g = euclidean_metric(c);
  AlgebraHom h = tensor_field_hom(g);
  // t commutes with x in the source but g(t) does not in the tensor square
  CHECK(!h.valid());
  CHECK(tensor_field_source(c).gens().back() == "t");
  std::vector<Point> sample{pt({Scalar(1), Scalar(0)}), pt({Scalar(0), Scalar(-1)})};
  CHECK(check_tensor_field(h, g.ambient, sample).commutes);
  std::vector<NcPoly> images = h.images();
  images.back() = g.ambient.algebra.parse_poly("x");
  AlgebraHom bad(h.source(), h.target(), images);
  TensorFieldCheck r = check_tensor_field(bad, g.ambient, sample);
  CHECK(!r.commutes);
  CHECK(!r.witness.empty());
}

TEST_CASE("bundle rank") {
  FpAlgebra line = FpAlgebra::polynomial(Field::prime(5), {"x"});
  Bundle e = make_bundle(line, parse_presentation("field F5; gens x u v; rel u*x - v"));
  CHECK(e.fiber_gens() == 2);
  CHECK(e.structure.valid());
  std::vector<Point> sample = enumerate_points(line).points();
  CHECK(check_bundle_rank(e, sample, 1).ok);
  RankCheck two = check_bundle_rank(e, sample, 2);
  CHECK(!two.ok);
  CHECK(two.point.has_value());
  // the fiber over x = 0 degenerates: v = 0, u free
  Presentation f0 = bundle_fiber_at(e, pt({Scalar(0)}));
  CHECK(f0.gens == std::vector<std::string>{"u", "v"});
  Bundle cone = make_bundle(line, parse_presentation("field F5; gens x u; rel u*u - x"));
  CHECK(!check_bundle_rank(cone, sample, 1).ok);
}

TEST_CASE("transitions and sections") {
  FpAlgebra fib = FpAlgebra::polynomial(Field::rational(), {"u", "v"});
  TransitionCheck ok = check_transition(AlgebraHom::parse(fib, fib, {"2*u + v", "v"}));
  CHECK(ok.linear);
  CHECK(ok.invertible);
  TransitionCheck sing = check_transition(AlgebraHom::parse(fib, fib, {"u + v", "2*u + 2*v"}));
  CHECK(sing.linear);
  CHECK(!sing.invertible);
  TransitionCheck nonlin = check_transition(AlgebraHom::parse(fib, fib, {"u*u", "v"}));
  CHECK(!nonlin.linear);
  CHECK(!nonlin.witness.empty());

  FpAlgebra line = FpAlgebra::polynomial(Field::rational(), {"x"});
  Bundle e = make_bundle(line, parse_presentation("field Q; gens x u v; rel u*x - v"));
  AlgebraHom zero_section = AlgebraHom::parse(e.total, line, {"x", "0", "0"});
  CHECK(zero_section.valid());
  CHECK(check_section(zero_section, e.structure));
  AlgebraHom shifted = AlgebraHom::parse(e.total, line, {"x + 1", "0", "0"});
  CHECK(!check_section(shifted, e.structure));
}
