#include "assocvar/metric.hpp"

#include <algorithm>

#include "assocvar/error.hpp"
#include "assocvar/phase.hpp"

namespace assocvar {

namespace {

Point normalized(const Field& k, const Point& p) {
  Point q = p;
  for (auto& v : q.values) v = k.normalize(v);
  return q;
}

std::string format_point(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    if (i) s += ", ";
    s += to_string(p.values[i]);
  }
  return s + ")";
}

void require_point(const FpAlgebra& a, const Point& p) {
  if (!is_point_of(a, p))
    throw Error(ErrorCode::InvalidArgument, "not a point of the algebra", format_point(p));
}

bool listed(const std::vector<NcPoly>& rels, const NcPoly& c) {
  return std::any_of(rels.begin(), rels.end(), [&](const NcPoly& r) { return r == c || r == -c; });
}

}  // namespace

TensorSquare tensor_square(const FpAlgebra& a) {
  Presentation p;
  p.field = a.field();
  p.gens = a.gens();
  auto dnames = differential_names(a.gens(), "d");
  auto enames = differential_names(a.gens(), "e");
  for (const auto& n : enames)
    if (std::find(dnames.begin(), dnames.end(), n) != dnames.end())
      throw Error(ErrorCode::NameClash, "second differential copy clashes with the first", n);
  p.gens.insert(p.gens.end(), dnames.begin(), dnames.end());
  p.gens.insert(p.gens.end(), enames.begin(), enames.end());
  p.bound = a.bound();
  const std::size_t m = a.num_gens();
  std::vector<Letter> into_dx(2 * m), into_dy(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    into_dx[i] = into_dy[i] = static_cast<Letter>(i);
    into_dx[m + i] = static_cast<Letter>(m + i);
    into_dy[m + i] = static_cast<Letter>(2 * m + i);
  }
  std::vector<Letter> base_map(m);
  for (std::size_t i = 0; i < m; ++i) base_map[i] = static_cast<Letter>(i);
  for (const auto& r : a.pres().rels) p.rels.push_back(relabel(r, base_map, 3 * m));
  for (const auto& r : a.pres().rels) {
    NcPoly dr = differentiate(r);
    if (dr.is_zero()) continue;
    p.rels.push_back(relabel(dr, into_dx, 3 * m));
  }
  for (const auto& r : a.pres().rels) {
    NcPoly dr = differentiate(r);
    if (dr.is_zero()) continue;
    p.rels.push_back(relabel(dr, into_dy, 3 * m));
  }
  return TensorSquare{a, FpAlgebra(std::move(p))};
}

bool is_bilinear(const TensorSquare& ts, const NcPoly& p) {
  const std::size_t m = ts.m();
  for (const auto& [w, c] : p.terms()) {
    std::size_t ndx = 0, ndy = 0;
    for (Letter l : w) {
      if (l >= 2 * m)
        ++ndy;
      else if (l >= m)
        ++ndx;
    }
    if (ndx != 1 || ndy != 1) return false;
  }
  return true;
}

MetricTensor make_metric(const TensorSquare& ts, NcPoly g) {
  if (g.num_gens() != ts.algebra.num_gens())
    throw Error(ErrorCode::Mismatch, "tensor is not over the tensor square");
  if (!is_bilinear(ts, g))
    throw Error(ErrorCode::NonHomogeneous, "tensor is not bilinear in the two differential copies",
                ts.algebra.format(g));
  return MetricTensor{ts, std::move(g)};
}

MetricTensor euclidean_metric(const TensorSquare& ts) {
  NcPoly g = ts.algebra.zero();
  for (std::size_t i = 0; i < ts.m(); ++i) g.add_term(Word{ts.dx(i), ts.dy(i)}, Scalar(1));
  return MetricTensor{ts, std::move(g)};
}

MetricTensor euclidean_metric(const FpAlgebra& a) { return euclidean_metric(tensor_square(a)); }

MetricTensor pullback_linear(const MetricTensor& g, const Matrix& l) {
  const TensorSquare& ts = g.ambient;
  const std::size_t m = ts.m();
  if (l.rows() != m || l.cols() != m)
    throw Error(ErrorCode::Mismatch, "chart change must be an m x m matrix");
  const FpAlgebra& t = ts.algebra;
  std::vector<NcPoly> images(3 * m, t.zero());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Scalar c = t.field().normalize(l(i, j));
      images[i].add_term(Word{ts.x(j)}, c);
      images[m + i].add_term(Word{ts.dx(j)}, c);
      images[2 * m + i].add_term(Word{ts.dy(j)}, c);
    }
  return MetricTensor{ts, m == 0 ? g.g_of_t : substitute(g.g_of_t, images)};
}

TangentSpace tangent_space_at(const FpAlgebra& a, const Point& p0) {
  const Field& k = a.field();
  Point p = normalized(k, p0);
  require_point(a, p);
  const std::size_t m = a.num_gens();
  const auto& rels = a.pres().rels;
  Matrix sys(k, std::max<std::size_t>(1, rels.size()), m);
  for (std::size_t r = 0; r < rels.size(); ++r) {
    NcPoly dr = differentiate(rels[r]);
    for (std::size_t j = 0; j < m; ++j) {
      Point q = p;
      q.values.resize(2 * m, Scalar(0));
      q.values[m + j] = 1;
      sys(r, j) = eval(dr, q);
    }
  }
  return TangentSpace{p, null_space(sys)};
}

namespace {

std::optional<Scalar> rational_sqrt(const Scalar& q) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Scalar r(rn, rd);
  r.canonicalize();
  return r;
}

Scalar dot(const Vector& a, const Vector& b) {
  Scalar acc(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

TangentSpace orthonormalized(const TangentSpace& t) {
  const Field& k = t.basis.field();
  if (!k.is_ordered()) return t;
  std::vector<Vector> out;
  for (std::size_t r = 0; r < t.basis.rows(); ++r) {
    Vector v = t.basis.row(r);
    for (const auto& u : out) {
      Scalar c = dot(v, u) / dot(u, u);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
    }
    out.push_back(std::move(v));
  }
  for (auto& v : out)
    if (auto s = rational_sqrt(dot(v, v)))
      for (auto& e : v) e /= *s;
  return TangentSpace{t.point, Matrix::from_rows(k, out, t.basis.cols())};
}

Scalar eval_tensor(const TensorSquare& ts, const NcPoly& g, const Point& p, const Vector& u,
                   const Vector& v) {
  const std::size_t m = ts.m();
  if (p.values.size() != m || u.size() != m || v.size() != m)
    throw Error(ErrorCode::Mismatch, "point or direction has the wrong length");
  Point q;
  q.values = p.values;
  q.values.insert(q.values.end(), u.begin(), u.end());
  q.values.insert(q.values.end(), v.begin(), v.end());
  return eval(g, q);
}

InnerProduct metric_at(const MetricTensor& g, const TangentSpace& t) {
  const Field& k = g.ambient.algebra.field();
  const std::size_t d = t.dim();
  InnerProduct ip;
  ip.gram = Matrix(k, d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      ip.gram(a, b) = eval_tensor(g.ambient, g.g_of_t, t.point, t.basis.row(a), t.basis.row(b));
  ip.symmetric = ip.gram.is_symmetric();
  if (k.is_ordered()) ip.positive_definite = ip.symmetric && (d == 0 || is_positive_definite(ip.gram));
  return ip;
}

RiemannianCheck is_riemannian(const MetricTensor& g, const std::vector<Point>& sample) {
  if (!g.ambient.algebra.field().is_ordered())
    throw Error(ErrorCode::InvalidArgument, "positive-definiteness needs an ordered field");
  RiemannianCheck res;
  res.vacuous = sample.empty();
  for (const auto& p : sample) {
    InnerProduct ip = metric_at(g, tangent_space_at(g.ambient.base, p));
    if (!ip.positive_definite.value_or(false)) {
      res.riemannian = false;
      res.witness = p;
      return res;
    }
  }
  return res;
}

FpAlgebra tensor_field_source(const FpAlgebra& a) {
  return tensor_over_k(a, FpAlgebra::polynomial(a.field(), {"t"}));
}

AlgebraHom tensor_field_hom(const MetricTensor& g) {
  const TensorSquare& ts = g.ambient;
  std::vector<NcPoly> images;
  for (std::size_t i = 0; i < ts.m(); ++i)
    images.push_back(NcPoly::generator(ts.algebra.field(), ts.algebra.num_gens(), ts.x(i)));
  images.push_back(g.g_of_t);
  return AlgebraHom(tensor_field_source(ts.base), ts.algebra, std::move(images));
}

TensorFieldCheck check_tensor_field(const AlgebraHom& h, const TensorSquare& ts,
                                    const std::vector<Point>& sample) {
  const std::size_t m = ts.m();
  if (h.source().num_gens() != m + 1 || !(h.target() == ts.algebra))
    throw Error(ErrorCode::Mismatch, "tensor field must map A (x) k[t] into the tensor square");
  TensorFieldCheck res;
  auto fail = [&](std::string why, std::optional<Point> p) {
    res.commutes = false;
    res.witness = std::move(why);
    res.point = std::move(p);
    return res;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (const auto& [w, c] : h.images()[i].terms())
      if (std::any_of(w.begin(), w.end(), [&](Letter l) { return l >= m; }))
        return fail("image of " + h.source().gens()[i] + " involves differentials", std::nullopt);
  if (!is_bilinear(ts, h.images()[m]))
    return fail("image of " + h.source().gens()[m] + " is not bilinear", std::nullopt);
  const Field& k = ts.algebra.field();
  for (const auto& p0 : sample) {
    Point p = normalized(k, p0);
    if (!is_point_of(ts.base, p)) return fail("sample is not a point of the base", p);
    Point q = p;
    q.values.resize(3 * m, Scalar(0));
    for (std::size_t i = 0; i < m; ++i)
      if (eval(h.images()[i], q) != p.values[i])
        return fail("image of " + h.source().gens()[i] + " disagrees with the point", p);
  }
  return res;
}

Bundle make_bundle(const FpAlgebra& base, const Presentation& total) {
  if (!(base.field() == total.field))
    throw Error(ErrorCode::Mismatch, "bundle and base over different fields");
  const std::size_t m = base.num_gens();
  Presentation p;
  p.field = total.field;
  p.gens = base.gens();
  std::vector<Letter> map(total.num_gens());
  for (std::size_t j = 0; j < total.num_gens(); ++j) {
    const int bi = base.pres().index_of(total.gens[j]);
    if (bi >= 0) {
      map[j] = static_cast<Letter>(bi);
    } else {
      map[j] = static_cast<Letter>(p.gens.size());
      p.gens.push_back(total.gens[j]);
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    if (total.index_of(base.gens()[i]) < 0)
      throw Error(ErrorCode::UnknownGenerator, "bundle does not contain the base generator",
                  base.gens()[i]);
  const std::size_t n = p.gens.size();
  p.bound = std::max({base.bound(), total.bound, 2});
  std::vector<Letter> base_map(m);
  for (std::size_t i = 0; i < m; ++i) base_map[i] = static_cast<Letter>(i);
  for (const auto& r : base.pres().rels) p.rels.push_back(relabel(r, base_map, n));
  for (const auto& r : total.rels) {
    NcPoly q = relabel(r, map, n);
    if (!listed(p.rels, q)) p.rels.push_back(std::move(q));
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = m; j < n; ++j) {
      NcPoly c = commutator(p.gen(i), p.gen(j));
      if (!listed(p.rels, c)) p.rels.push_back(std::move(c));
    }
  FpAlgebra e(std::move(p));
  std::vector<NcPoly> images;
  for (std::size_t i = 0; i < m; ++i) images.push_back(e.gen(i));
  AlgebraHom f(base, e, std::move(images));
  return Bundle{base, e, std::move(f)};
}

Presentation bundle_fiber_at(const Bundle& e, const Point& p0) {
  const Field& k = e.base.field();
  Point p = normalized(k, p0);
  require_point(e.base, p);
  const std::size_t m = e.base.num_gens();
  const std::size_t nf = e.fiber_gens();
  Presentation f;
  f.field = k;
  f.gens.assign(e.total.gens().begin() + static_cast<long>(m), e.total.gens().end());
  f.bound = e.total.bound();
  for (const auto& r : e.total.pres().rels) {
    NcPoly q(k, nf);
    for (const auto& [w, c] : r.terms()) {
      Scalar coef = c;
      Word fw;
      for (Letter l : w) {
        if (l < m)
          coef = k.mul(coef, p.values[l]);
        else
          fw.push_back(static_cast<Letter>(l - m));
      }
      q.add_term(fw, coef);
    }
    if (!q.is_zero() && !listed(f.rels, q)) f.rels.push_back(std::move(q));
  }
  return f;
}

RankCheck check_bundle_rank(const Bundle& e, const std::vector<Point>& sample, std::size_t rank) {
  RankCheck res;
  const Field& k = e.base.field();
  for (const auto& p0 : sample) {
    Point p = normalized(k, p0);
    auto fail = [&](std::string why) {
      res.ok = false;
      res.witness = std::move(why);
      res.point = p;
      return res;
    };
    if (!is_point_of(e.base, p)) return fail("sample is not a point of the base");
    FpAlgebra fiber(bundle_fiber_at(e, p));
    FpAlgebra ab = abelianization(fiber);
    std::size_t linear = 0;
    for (const auto& rule : ab.rewriting().rules()) {
      NcPoly rel = NcPoly::monomial(k, ab.num_gens(), rule.lead) - rule.rest;
      if (rule.lead.empty()) return fail("fiber is empty: 1 lies in the ideal");
      if (rule.lead.size() == 1) {
        ++linear;
        continue;
      }
      const Word& w = rule.lead;
      bool commutation = w.size() == 2 && w[0] > w[1] &&
                         rule.rest == NcPoly::monomial(k, ab.num_gens(), Word{w[1], w[0]});
      if (!commutation) return fail("nonlinear fiber relation " + ab.format(rel));
    }
    if (e.fiber_gens() - linear != rank)
      return fail("fiber has dimension " + std::to_string(e.fiber_gens() - linear));
    if (k.is_prime()) {
      std::uint64_t expected = 1;
      for (std::size_t i = 0; i < rank; ++i) expected *= k.characteristic();
      std::size_t count = enumerate_points(fiber).size();
      if (count != expected)
        return fail("fiber has " + std::to_string(count) + " points, expected " +
                    std::to_string(expected));
    }
  }
  return res;
}

TransitionCheck check_transition(const AlgebraHom& t) {
  TransitionCheck res;
  try {
    res.matrix = linear_part(t);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::NonHomogeneous) throw;
    res.witness = err.witness().value_or(err.what());
    return res;
  }
  res.linear = true;
  res.invertible = res.matrix->is_square() && !Field::is_zero(determinant(*res.matrix));
  if (!res.invertible) res.witness = "linear part is singular";
  return res;
}

bool check_section(const AlgebraHom& s, const AlgebraHom& f) {
  if (!(f.target() == s.source()) || !(s.target() == f.source()))
    throw Error(ErrorCode::Mismatch, "section and structure map do not compose to an endomorphism");
  AlgebraHom comp = compose_hom(s, f);
  const FpAlgebra& a = f.source();
  for (std::size_t i = 0; i < a.num_gens(); ++i)
    if (!a.equal(comp.images()[i], a.gen(i))) return false;
  return true;
}

}  // namespace assocvar
