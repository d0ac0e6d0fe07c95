// Acceptance runner: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "assocvar/error.hpp"
#include "assocvar/geodesic.hpp"
#include "assocvar/localrep.hpp"
#include "assocvar/metric.hpp"
#include "assocvar/phase.hpp"
#include "assocvar/points.hpp"
#include "comm_oracle.hpp"
#include "support.hpp"

using namespace assocvar;
using namespace testing_support;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body, double limit_s = 0) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs >= limit_s) {
    o.pass = false;
    o.detail += " (over time limit " + std::to_string(limit_s) + " s)";
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %-28s %8.3fs  %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FpAlgebra load(const std::string& name) { return FpAlgebra(parse_presentation(slurp(data_path(name)))); }

Point pt(std::initializer_list<Scalar> v) { return Point{std::vector<Scalar>(v)}; }

// 1
Outcome leibniz() {
  std::mt19937_64 rng(101);
  int checked = 0;
  for (Field k : {Field::prime(5), Field::rational()}) {
    for (int i = 0; i < 500; ++i) {
      NcPoly p = random_poly(rng, k, 3, 5, 5), q = random_poly(rng, k, 3, 5, 5);
      NcPoly lhs = differentiate(p * q);
      NcPoly rhs = differentiate(p) * lift_to_phase(q) + lift_to_phase(p) * differentiate(q);
      if (!(lhs == rhs)) return {false, "mismatch at pair " + std::to_string(i) + " over " + k.name()};
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " pairs exact"};
}

// 2
Outcome representing() {
  std::mt19937_64 rng(202);
  Field q = Field::rational();
  FpAlgebra free = FpAlgebra::free(q, {"x", "y"});
  FpAlgebra poly = FpAlgebra::polynomial(q, {"x", "y"});
  FpAlgebra circle = load("circle_q.alg");
  int specs = 0, perturbations = 0;
  for (int i = 0; i < 50; ++i) {
    const FpAlgebra& a = i % 3 == 0 ? free : i % 3 == 1 ? poly : circle;
    std::vector<NcPoly> images;
    if (&a == &circle) {
      // multiples of the rotation field are the derivations of the circle
      NcPoly h = a.reduce(random_poly(rng, q, 2, 2, 3));
      images = {a.reduce(h * a.parse_poly("-y")), a.reduce(h * a.parse_poly("x"))};
    } else {
      images = {a.reduce(random_poly(rng, q, 2, 3)), a.reduce(random_poly(rng, q, 2, 3))};
    }
    DerivationSpec delta{AlgebraHom::identity(a), images};
    if (!check_derivation(delta).valid) return {false, "generated images do not give a derivation"};
    PhasePresentation ph = phase_space(a);
    AlgebraHom psi = induced_hom(ph, delta);
    if (!psi.valid() || !represents(ph, delta, psi)) return {false, "induced hom fails at derivation " + std::to_string(i)};
    for (std::size_t slot = 0; slot < psi.images().size(); ++slot) {
      std::vector<NcPoly> bumped = psi.images();
      bumped[slot] = bumped[slot] + a.one();
      AlgebraHom other(ph.phase, a, bumped);
      if (other.valid() && represents(ph, delta, other))
        return {false, "perturbed image " + std::to_string(slot) + " still represents derivation " + std::to_string(i)};
      ++perturbations;
    }
    ++specs;
  }
  return {true, std::to_string(specs) + " derivations, " + std::to_string(perturbations) + " perturbations rejected"};
}

// 3
std::size_t brute_force_circle(unsigned p) {
  std::size_t n = 0;
  for (unsigned x = 0; x < p; ++x)
    for (unsigned y = 0; y < p; ++y)
      if ((x * x + y * y) % p == 1) ++n;
  return n;
}

Outcome point_oracle() {
  std::size_t c5 = enumerate_points(load("circle_f5.alg")).size();
  std::size_t c13 = enumerate_points(load("circle_f13.alg")).size();
  std::size_t w5 = enumerate_points(load("weyl_f5.alg")).size();
  std::size_t w7 = enumerate_points(load("weyl_f7.alg")).size();
  bool ok = c5 == 4 && c13 == 12 && c5 == brute_force_circle(5) && c13 == brute_force_circle(13) && w5 == 0 && w7 == 0;
  return {ok, "circle F5=" + std::to_string(c5) + " F13=" + std::to_string(c13) + ", Weyl F5=" + std::to_string(w5) +
                  " F7=" + std::to_string(w7)};
}

// 4
Outcome continuity() {
  std::mt19937_64 rng(404);
  Field k = Field::prime(5);
  FpAlgebra b = FpAlgebra::polynomial(k, {"x", "y"});
  FpAlgebra a = load("circle_f5.alg");
  PointSet xa = enumerate_points(a);
  const std::vector<Word> monos{{}, {0}, {1}, {0, 0}, {0, 1}, {1, 1}};
  long checks = 0;
  for (int h = 0; h < 20; ++h) {
    std::vector<NcPoly> images{a.reduce(random_poly(rng, k, 2, 2, 3)), a.reduce(random_poly(rng, k, 2, 2, 3))};
    AlgebraHom phi(b, a, images);
    if (!phi.valid()) return {false, "random hom invalid"};
    std::vector<Point> pulled;
    for (const auto& p : xa.points()) pulled.push_back(pt({eval(images[0], p), eval(images[1], p)}));
    std::vector<unsigned> c(monos.size(), 0);
    for (;;) {
      NcPoly f(k, 2);
      for (std::size_t i = 0; i < monos.size(); ++i) f.add_term(monos[i], Scalar(c[i]));
      PointSet rhs = basic_open(phi.apply(f), xa);
      std::vector<Point> lhs;
      for (std::size_t i = 0; i < xa.size(); ++i)
        if (!Field::is_zero(eval(f, pulled[i]))) lhs.push_back(xa.points()[i]);
      if (!(PointSet(a, lhs) == rhs)) return {false, "mismatch for f = " + b.format(f)};
      ++checks;
      std::size_t i = 0;
      while (i < c.size() && ++c[i] == 5) c[i++] = 0;
      if (i == c.size()) break;
    }
  }
  return {true, std::to_string(checks) + " (f, phi) pairs"};
}

// 5
Outcome local_ring_closure() {
  PresentationFile m2 = parse_presentation_file(slurp(data_path("m2_f3.alg")));
  PresentationFile prod = parse_presentation_file(slurp(data_path("product_f3.alg")));
  auto mods2 = modules_from_file(FpAlgebra(m2.pres), m2.modules);
  auto mods = modules_from_file(FpAlgebra(prod.pres), prod.modules);
  std::size_t d2 = local_ring(mods2[0]).dimension();
  std::size_t d1 = local_ring(mods[0]).dimension();
  std::size_t dp = product_local_rings(mods).dimension();
  bool ok = d2 == 9 && d1 == 1 && dp == 10;
  return {ok, "dim A_M=" + std::to_string(d2) + " (expected 9), 1-dim module=" + std::to_string(d1) +
                  " (expected 1), product=" + std::to_string(dp) + " (expected 10)"};
}

// 6
Outcome phase_presentation() {
  FpAlgebra c = load("circle_q.alg");
  PhasePresentation ph = phase_space(c);
  NcPoly rel = ph.phase.parse_poly("dx*x + x*dx + dy*y + y*dy");
  if (!ph.phase.reduce(rel).is_zero()) return {false, "tangency relation is not in the ideal"};
  std::string printed = print_presentation(ph.pres());
  Presentation reparsed = parse_presentation(printed);
  if (!(reparsed == ph.pres())) return {false, "re-parse differs"};
  std::string again = print_presentation(phase_space(FpAlgebra(parse_presentation(print_presentation(c.pres())))).pres());
  if (again != printed) return {false, "re-derivation prints differently"};
  return {true, std::to_string(ph.pres().rels.size()) + " relations, round trip identical"};
}

// 7
Outcome metric() {
  std::mt19937_64 rng(707);
  Field q = Field::rational();
  FpAlgebra free = FpAlgebra::free(q, {"x", "y"});
  MetricTensor g = euclidean_metric(free);
  for (int i = 0; i < 20; ++i) {
    Point p = pt({random_scalar(rng, q), random_scalar(rng, q)});
    InnerProduct ip = metric_at(g, tangent_space_at(free, p));
    if (!(ip.gram == Matrix::identity(q, 2)) || ip.positive_definite != std::optional<bool>(true))
      return {false, "free chart Gram is not the identity"};
  }
  FpAlgebra c = load("circle_q.alg");
  MetricTensor gc = euclidean_metric(c);
  for (Point p : {pt({Scalar(1), Scalar(0)}), pt({Scalar(0), Scalar(1)}), pt({Scalar(3, 5), Scalar(4, 5)})}) {
    InnerProduct ip = metric_at(gc, orthonormalized(tangent_space_at(c, p)));
    if (!(ip.gram == Matrix::identity(q, 1)) || ip.positive_definite != std::optional<bool>(true))
      return {false, "circle Gram is " + to_string(ip.gram(0, 0))};
  }
  return {true, "identity at 20 free-chart points, [1] at 3 circle points"};
}

// 8
Outcome tangent_cross_check() {
  FpAlgebra c = load("circle_f5.alg");
  PhasePresentation ph = phase_space(c);
  PointSet total = enumerate_points(ph.phase);
  std::map<Point, std::vector<Vector>> fibers;
  for (const auto& p : total.points()) fibers[pt({p.values[0], p.values[1]})].push_back({p.values[2], p.values[3]});
  PointSet base = enumerate_points(c);
  if (fibers.size() != base.size()) return {false, "fibers over non-points"};
  for (const auto& bp : base.points()) {
    TangentSpace t = tangent_space_at(c, bp);
    // all solutions of the tangent system: span of the basis rows over F5
    std::vector<Vector> span{{Scalar(0), Scalar(0)}};
    for (std::size_t r = 0; r < t.dim(); ++r) {
      std::vector<Vector> next;
      for (const auto& v : span)
        for (long s = 0; s < 5; ++s)
          next.push_back({c.field().add(v[0], c.field().mul(Scalar(s), t.basis(r, 0))),
                          c.field().add(v[1], c.field().mul(Scalar(s), t.basis(r, 1)))});
      span = next;
    }
    std::sort(span.begin(), span.end());
    std::vector<Vector> fib = fibers[bp];
    std::sort(fib.begin(), fib.end());
    if (span != fib) return {false, "fiber differs from the tangent space"};
  }
  return {true, std::to_string(base.size()) + " points, fibers of size 5"};
}

// 9
Outcome geodesics() {
  using Eigen::VectorXd;
  RealChart sphere = RealChart::from_algebra(load("sphere.alg"));
  VectorXd p0(3), v0(3);
  p0 << 1, 0, 0;
  v0 << 0, 0.6, 0.8;
  auto t0 = std::chrono::steady_clock::now();
  GeodesicTrace tr = integrate_geodesic(sphere, p0, v0, 2 * std::numbers::pi, 1e-4);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  double err = (tr.samples.back().position - p0).norm();
  RealChart circle = RealChart::from_algebra(load("circle.alg"));
  VectorXd c0(2), d0(2), end(2);
  c0 << 1, 0;
  d0 << 0, 1;
  end << 0, 1;
  auto circle_err = [&](double h) {
    return (integrate_geodesic(circle, c0, d0, std::numbers::pi / 2, h).samples.back().position - end).norm();
  };
  double ratio = circle_err(1e-2) / circle_err(5e-3);
  bool ok = err <= 1e-6 && tr.max_constraint_drift <= 1e-9 && secs < 10 && ratio >= 3.5 && ratio <= 4.5;
  char buf[200];
  std::snprintf(buf, sizeof buf, "sphere error %.2e drift %.2e in %.2f s; circle ratio %.3f", err,
                tr.max_constraint_drift, secs, ratio);
  return {ok, buf};
}

// 10
Outcome rewrite_soundness() {
  std::mt19937_64 rng(1010);
  FpAlgebra weyl = load("weyl_f5.alg");
  FpAlgebra c = load("circle_q.alg");
  for (int i = 0; i < 200; ++i) {
    const FpAlgebra& a = i % 2 ? weyl : c;
    NcPoly f = random_poly(rng, a.field(), 2, 6);
    NcPoly nf = a.normal_form(f);
    if (!(a.normal_form(nf) == nf)) return {false, "NF not idempotent"};
    const NcPoly& r = a.pres().rels[rng() % a.pres().rels.size()];
    NcPoly u = NcPoly::monomial(a.field(), 2, random_word(rng, 2, 2));
    NcPoly v = NcPoly::monomial(a.field(), 2, random_word(rng, 2, 2));
    if (!a.normal_form(u * r * v).is_zero()) return {false, "NF(u r v) != 0"};
  }
  int instances = 0, attempts = 0;
  while (instances < 100 && attempts < 1000) {
    ++attempts;
    Field k = attempts % 2 ? Field::prime(5) : Field::rational();
    std::size_t n = 2 + attempts % 2;
    Presentation p = random_abelian_presentation(rng, k, n, 2, n == 2 ? 4 : 3, 10);
    FpAlgebra a(p);
    if (!a.rewriting().exact()) continue;
    std::vector<oracle::Poly> gens;
    for (std::size_t r = n * (n - 1) / 2; r < p.rels.size(); ++r) gens.push_back(oracle::from_nc(p.rels[r]));
    auto gb = oracle::groebner(gens, k);
    for (int t = 0; t < 5; ++t) {
      NcPoly f = random_poly(rng, k, n, 4);
      if (!(oracle::from_nc(a.normal_form(f)) == oracle::reduce(oracle::from_nc(f), gb, k)))
        return {false, "oracle disagreement on instance " + std::to_string(instances)};
    }
    ++instances;
  }
  bool ok = instances == 100;
  return {ok, std::to_string(instances) + " exact abelian instances agree (" + std::to_string(attempts) + " generated)"};
}

}  // namespace

int main() {
  report(1, "Leibniz suite", leibniz, 5);
  report(2, "representing property", representing, 30);
  report(3, "point-variety oracle", point_oracle);
  report(4, "continuity identity", continuity);
  report(5, "local ring closure", local_ring_closure);
  report(6, "phase presentation", phase_presentation);
  report(7, "metric", metric);
  report(8, "tangent cross-check", tangent_cross_check);
  report(9, "geodesic benchmarks", geodesics);
  report(10, "rewrite soundness", rewrite_soundness, 20);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
