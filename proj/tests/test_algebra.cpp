#include <doctest.h>

#include "assocvar/algebra.hpp"
#include "assocvar/error.hpp"
#include "support.hpp"

using namespace assocvar;

TEST_CASE("valid and invalid homomorphisms") {
  FpAlgebra circle = FpAlgebra::parse("field Q; gens x y; rel x*y - y*x; rel x*x + y*y - 1");
  FpAlgebra line = FpAlgebra::polynomial(Field::rational(), {"t"});
  // rotation by 90 degrees preserves the circle
  AlgebraHom rot = AlgebraHom::parse(circle, circle, {"-y", "x"});
  CHECK(rot.valid());
  AlgebraHom bad = AlgebraHom::parse(circle, circle, {"x + 1", "y"});
  CHECK(!bad.valid());
  REQUIRE(bad.check().witness.has_value());
  CHECK(circle.format(*bad.check().witness) == "y*y + x*x - 1");
  // any map out of a free algebra is a hom
  FpAlgebra free = FpAlgebra::free(Field::rational(), {"a", "b"});
  CHECK(AlgebraHom::parse(free, line, {"t*t", "t + 3"}).valid());
  // noncommuting images violate the commutator
  FpAlgebra target = FpAlgebra::free(Field::rational(), {"u", "v"});
  CHECK(!AlgebraHom::parse(circle, target, {"u", "v"}).valid());
}

TEST_CASE("identity and composition") {
  FpAlgebra a = FpAlgebra::polynomial(Field::rational(), {"x"});
  AlgebraHom g = AlgebraHom::parse(a, a, {"x + 1"});
  AlgebraHom h = AlgebraHom::parse(a, a, {"x*x"});
  CHECK(a.format(compose_hom(g, h).images()[0]) == "x*x + 2*x + 1");
  CHECK(a.format(compose_hom(h, g).images()[0]) == "x*x + 1");
  AlgebraHom id = AlgebraHom::identity(a);
  CHECK(compose_hom(id, g).images() == g.images());
  CHECK(compose_hom(g, id).images() == g.images());
  FpAlgebra b = FpAlgebra::free(Field::rational(), {"y", "z"});
  AlgebraHom k = AlgebraHom::parse(b, a, {"x", "1"});
  CHECK_THROWS_AS(compose_hom(k, g), Error);
}

TEST_CASE("apply reduces in the target") {
  FpAlgebra w = FpAlgebra::parse("field F7; gens x y; rel y*x - x*y - 1");
  FpAlgebra f = FpAlgebra::free(Field::prime(7), {"a", "b"});
  AlgebraHom h(f, w, {w.gen(1), w.gen(0)});
  CHECK(w.format(h.apply(f.parse_poly("a*b"))) == "x*y + 1");
}

TEST_CASE("tensor product") {
  FpAlgebra a = FpAlgebra::polynomial(Field::rational(), {"x"});
  FpAlgebra b = FpAlgebra::parse("field Q; gens x y; rel y*x - x*y - 1");
  FpAlgebra t = tensor_over_k(a, b);
  CHECK(t.gens() == std::vector<std::string>{"x", "x_2", "y"});
  CHECK(t.equal(t.parse_poly("x*y"), t.parse_poly("y*x")));
  CHECK(t.equal(t.parse_poly("x*x_2"), t.parse_poly("x_2*x")));
  CHECK(!t.equal(t.parse_poly("x_2*y"), t.parse_poly("y*x_2")));
  CHECK_THROWS_AS(tensor_over_k(a, FpAlgebra::polynomial(Field::prime(5), {"z"})), Error);
}

TEST_CASE("abelianization and commutativity") {
  FpAlgebra f = FpAlgebra::free(Field::rational(), {"x", "y", "z"});
  CHECK(!f.is_commutative());
  FpAlgebra ab = abelianization(f);
  CHECK(ab.is_commutative());
  CHECK(ab.pres().rels.size() == 3);
  CHECK(abelianization(ab).pres().rels.size() == 3);
  CHECK(FpAlgebra::polynomial(Field::prime(3), {"x", "y"}).is_commutative());
}

TEST_CASE("linear part and linear isomorphisms") {
  FpAlgebra a = FpAlgebra::polynomial(Field::rational(), {"x", "y"});
  AlgebraHom f = AlgebraHom::parse(a, a, {"x + y", "x - y"});
  Matrix l = linear_part(f);
  CHECK(l == Matrix::from_rows(Field::rational(), {{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(-1)}}, 2));
  CHECK(is_linear_isomorphism(f));
  CHECK(!is_linear_isomorphism(AlgebraHom::parse(a, a, {"x + y", "2*x + 2*y"})));
  CHECK_THROWS_AS(linear_part(AlgebraHom::parse(a, a, {"x*x", "y"})), Error);
  CHECK(hom_of_matrix(l, a).images() == f.images());
  // characteristic 2 kills the determinant
  FpAlgebra b = FpAlgebra::polynomial(Field::prime(2), {"x", "y"});
  CHECK(!is_linear_isomorphism(AlgebraHom::parse(b, b, {"x + y", "x - y"})));
}

TEST_CASE("structure map of a chart") {
  FpAlgebra a = FpAlgebra::parse("field Q; gens x y u; rel x*y - y*x; rel u*x - x*u - 1");
  AlgebraHom s = structure_map(a, 2);
  CHECK(s.valid());
  CHECK(s.source().num_gens() == 2);
  CHECK_THROWS_AS(structure_map(a, 3), Error);
}

TEST_CASE("commutator helper") {
  FpAlgebra a = FpAlgebra::free(Field::rational(), {"x", "y"});
  CHECK(a.format(commutator(a.gen(0), a.gen(1))) == "-y*x + x*y");
}
