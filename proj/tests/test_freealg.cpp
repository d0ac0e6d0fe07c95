#include <doctest.h>

#include "assocvar/error.hpp"
#include "assocvar/presentation.hpp"
#include "support.hpp"

using namespace assocvar;
using testing_support::random_poly;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("parse semicolon-separated presentation") {
  Presentation p = parse_presentation("field F5; gens x y; rel x*x + y*y - 1");
  CHECK(p.field == Field::prime(5));
  CHECK(p.gens == std::vector<std::string>{"x", "y"});
  REQUIRE(p.rels.size() == 1);
  CHECK(format_poly(p.rels[0], p.gens) == "y*y + x*x + 4");
  CHECK(p.bound == 8);
}

TEST_CASE("free algebra without relations") {
  Presentation p = parse_presentation("field Q; gens x");
  CHECK(p.rels.empty());
  CHECK(p.num_gens() == 1);
}

TEST_CASE("parse errors") {
  CHECK(code_of([] { parse_presentation("field F4; gens x"); }) == ErrorCode::NonPrimeModulus);
  CHECK(code_of([] { parse_presentation("field Q; gens x x"); }) == ErrorCode::DuplicateGenerator);
  CHECK(code_of([] { parse_presentation("field Q; gens x; rel x*z"); }) == ErrorCode::UnknownGenerator);
  CHECK(code_of([] { parse_presentation("field Q\ngens x\nrel x + + 1"); }) == ErrorCode::Syntax);
  CHECK(code_of([] { parse_presentation("field Q; gens x; rel x*x*x; bound 2"); }) ==
        ErrorCode::Syntax);
  try {
    parse_presentation("field Q\ngens x y\nrel x*y + w\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    CHECK(e.witness() == std::optional<std::string>("w"));
  }
}

TEST_CASE("exponent shorthand and default bound") {
  Presentation p = parse_presentation("field Q; gens x y; rel x^3*y^2 - 1");
  CHECK(p.rels[0].degree() == 5);
  CHECK(p.bound == 8);
  Presentation q = parse_presentation("field Q; gens x; rel x^9");
  CHECK(q.bound == 9);
}

TEST_CASE("zero relations are dropped") {
  Presentation p = parse_presentation("field F3; gens x; rel 3*x; rel x - x");
  CHECK(p.rels.empty());
}

TEST_CASE("multiplication is word concatenation") {
  Field q = Field::rational();
  Presentation p = parse_presentation("field Q; gens x y");
  NcPoly x = p.gen(0), y = p.gen(1);
  CHECK(format_poly(x * y, p.gens) == "x*y");
  CHECK(!(x * y == y * x));
  NcPoly prod = (x + y) * (x - y);
  CHECK(format_poly(prod, p.gens) == "-y*y + y*x - x*y + x*x");
  CHECK(p.one() * prod == prod);
  CHECK(nc_scale(Scalar(2), x) == x + x);
  CHECK((prod + (-prod)).terms().empty());
  (void)q;
}

TEST_CASE("ring axioms on random polynomials over F5") {
  std::mt19937_64 rng(11);
  Field k = Field::prime(5);
  for (int i = 0; i < 200; ++i) {
    NcPoly a = random_poly(rng, k, 3, 4), b = random_poly(rng, k, 3, 4), c = random_poly(rng, k, 3, 4);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) * c == a * c + b * c);
    if (!a.is_zero() && !b.is_zero()) CHECK((a * b).degree() == a.degree() + b.degree());
  }
}

TEST_CASE("mismatched ambients are rejected") {
  NcPoly a(Field::rational(), 2), b(Field::rational(), 3);
  CHECK(code_of([&] { (void)(a + b); }) == ErrorCode::Mismatch);
  NcPoly c(Field::prime(5), 2);
  CHECK(code_of([&] { (void)(a * c); }) == ErrorCode::Mismatch);
}

TEST_CASE("substitution") {
  Presentation p = parse_presentation("field Q; gens x y");
  NcPoly x = p.gen(0), y = p.gen(1);
  std::vector<NcPoly> swap{y, x};
  CHECK(substitute(x * y, swap) == y * x);
  std::vector<NcPoly> shift{x + p.one(), y};
  CHECK(format_poly(substitute(x * x, shift), p.gens) == "x*x + 2*x + 1");
  CHECK(substitute(p.constant(Scalar(7)), shift) == p.constant(Scalar(7)));
  std::vector<NcPoly> one_image{x};
  CHECK(code_of([&] { substitute(x, one_image); }) == ErrorCode::Mismatch);
}

TEST_CASE("print and parse round trip") {
  std::mt19937_64 rng(5);
  for (Field k : {Field::rational(), Field::prime(7), Field::real()}) {
    for (int i = 0; i < 30; ++i) {
      Presentation p;
      p.field = k;
      p.gens = {"x", "y", "z1"};
      for (int r = 0; r < 3; ++r) {
        NcPoly f = random_poly(rng, k, 3, 3);
        if (!f.is_zero()) p.rels.push_back(f);
      }
      p.bound = 6;
      CHECK(parse_presentation(print_presentation(p)) == p);
    }
  }
}

TEST_CASE("scalar parsing") {
  Scalar v;
  CHECK(parse_scalar("-3/6", v));
  CHECK(v == Scalar(-1, 2));
  CHECK(parse_scalar("0.25", v));
  CHECK(v == Scalar(1, 4));
  CHECK(parse_scalar("1e-3", v));
  CHECK(v == Scalar(1, 1000));
  CHECK(!parse_scalar("1/0", v));
  CHECK(!parse_scalar("abc", v));
  CHECK(Field::prime(5).normalize(Scalar(-1)) == 4);
  CHECK(Field::prime(5).normalize(Scalar(1, 2)) == 3);
}

TEST_CASE("leading zeros are decimal") {
  Scalar v;
  CHECK(parse_scalar("010", v));
  CHECK(v == 10);
  CHECK(parse_scalar("08/09", v));
  CHECK(v == Scalar(8, 9));
  CHECK(parse_scalar(".5", v));
  CHECK(v == Scalar(1, 2));
}
