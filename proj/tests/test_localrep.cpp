#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "assocvar/error.hpp"
#include "assocvar/localrep.hpp"
#include "support.hpp"

using namespace assocvar;
using testing_support::data_path;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<MatrixModule> load(const std::string& name) {
  PresentationFile f = parse_presentation_file(slurp(data_path(name)));
  return modules_from_file(FpAlgebra(f.pres), f.modules);
}

Matrix random_invertible(std::mt19937_64& rng, const Field& k, std::size_t n) {
  for (;;) {
    Matrix m(k, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Scalar(static_cast<long>(rng() % k.characteristic()));
    if (inverse(m)) return m;
  }
}

MatrixModule conjugate(const MatrixModule& m, const Matrix& p) {
  Matrix pinv = *inverse(p);
  std::vector<Matrix> act;
  for (const auto& x : m.action()) act.push_back(pinv * x * p);
  return MatrixModule(m.algebra(), act);
}

// Span of all words in the generator matrices, grown until stable.
std::size_t word_span_dimension(const MatrixModule& m) {
  const std::size_t r = m.dim();
  SpanBuilder span(m.field(), r * r);
  std::vector<Matrix> frontier{Matrix::identity(m.field(), r)};
  span.insert(frontier[0].flat());
  while (!frontier.empty()) {
    std::vector<Matrix> next;
    for (const auto& w : frontier)
      for (const auto& x : m.action()) {
        Matrix p = w * x;
        if (span.insert(p.flat())) next.push_back(p);
      }
    frontier = std::move(next);
  }
  return span.dimension();
}

}  // namespace

TEST_CASE("matrix parsing") {
  Field k = Field::prime(3);
  Matrix m = parse_matrix("[[1, 2], [4, -1]]", k, 2);
  CHECK(m == Matrix::from_rows(k, {{Scalar(1), Scalar(2)}, {Scalar(1), Scalar(2)}}, 2));
  CHECK_THROWS_AS(parse_matrix("[[1,2],[3]]", k, 2), Error);
  CHECK_THROWS_AS(parse_matrix("[[1,2]", k, 2), Error);
}

TEST_CASE("full matrix module over F3") {
  auto mods = load("m2_f3.alg");
  REQUIRE(mods.size() == 1);
  const MatrixModule& m = mods[0];
  CHECK(check_module(m).valid);
  CHECK(is_simple(m));
  CHECK(commutant(m).size() == 1);
  LocalRing a = local_ring(m);
  CHECK(a.dimension() == 4);
  CHECK(a.dimension() == word_span_dimension(m));
  for (const auto& b : a.basis) CHECK(a.contains(b));
  CHECK(a.contains(Matrix::identity(m.field(), 2)));
}

TEST_CASE("product of non-isomorphic modules") {
  auto mods = load("product_f3.alg");
  REQUIRE(mods.size() == 2);
  CHECK(!are_isomorphic(mods[0], mods[1]));
  LocalRing prod = product_local_rings(mods);
  CHECK(prod.dimension() == local_ring(mods[0]).dimension() + local_ring(mods[1]).dimension());
  CHECK(prod.dimension() == 5);
  CHECK(prod.blocks == std::vector<std::size_t>{1, 2});
  CHECK(prod.matrix_dim == 3);
  CHECK_THROWS_AS(product_local_rings({mods[1], mods[1]}), Error);
}

TEST_CASE("conjugate modules are isomorphic") {
  std::mt19937_64 rng(7);
  auto mods = load("m2_f3.alg");
  for (int t = 0; t < 10; ++t) {
    Matrix p = random_invertible(rng, Field::prime(3), 2);
    MatrixModule n = conjugate(mods[0], p);
    CHECK(check_module(n).valid);
    CHECK(are_isomorphic(mods[0], n));
    CHECK_THROWS_AS(product_local_rings({mods[0], n}), Error);
  }
}

TEST_CASE("invariant line makes a module non-simple") {
  FpAlgebra a = FpAlgebra::free(Field::prime(3), {"x", "y"});
  Field k = a.field();
  MatrixModule m(a, {parse_matrix("[[1,1],[0,1]]", k, 2), parse_matrix("[[0,0],[0,0]]", k, 2)});
  CHECK(!is_simple(m));
  CHECK(word_span_dimension(m) == 2);
}

TEST_CASE("module relations are checked") {
  FpAlgebra circle = FpAlgebra::parse("field F5; gens x y; rel x*y - y*x; rel x*x + y*y - 1");
  Field k = circle.field();
  CHECK(check_module(MatrixModule(circle, {parse_matrix("[[1]]", k, 1), parse_matrix("[[0]]", k, 1)})).valid);
  ModuleCheck bad = check_module(MatrixModule(circle, {parse_matrix("[[2]]", k, 1), parse_matrix("[[2]]", k, 1)}));
  CHECK(!bad.valid);
  CHECK(bad.witness.has_value());
}

TEST_CASE("localization inverts what the unit test accepts") {
  FpAlgebra a = FpAlgebra::polynomial(Field::prime(5), {"x"});
  Field k = a.field();
  MatrixModule m(a, {parse_matrix("[[2,1],[0,2]]", k, 2)});
  LocalRing r = localize_along(m, [](const Matrix& x) { return !Field::is_zero(determinant(x)); });
  Matrix xinv = *inverse(m.action()[0]);
  CHECK(r.contains(xinv));
  CHECK(!r.adjoined_inverses.empty());
  CHECK_THROWS_AS(localize_along(m, [](const Matrix&) { return true; }), Error);
}

TEST_CASE("universal factorization") {
  std::mt19937_64 rng(9);
  auto mods = load("m2_f3.alg");
  LocalRing ring = local_ring(mods[0]);
  UniversalWitness self = universal_factorization(ring, mods[0], mods[0]);
  CHECK(self.verified);
  CHECK(self.basis_images == ring.basis);
  for (int t = 0; t < 5; ++t) {
    MatrixModule n = conjugate(mods[0], random_invertible(rng, Field::prime(3), 2));
    UniversalWitness w = universal_factorization(ring, mods[0], n);
    CHECK(w.verified);
  }
  // target where the generators fail the relations of the span
  FpAlgebra a = mods[0].algebra();
  Field k = a.field();
  MatrixModule zero(a, {parse_matrix("[[0]]", k, 1), parse_matrix("[[0]]", k, 1)});
  UniversalWitness w = universal_factorization(ring, mods[0], zero);
  CHECK(!w.verified);
  CHECK(!w.failure.empty());
}
