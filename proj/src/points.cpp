#include "assocvar/points.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "assocvar/error.hpp"
#include "assocvar/simd/kernels.hpp"

namespace assocvar {

Scalar eval(const NcPoly& f, const Point& p) {
  if (p.values.size() != f.num_gens())
    throw Error(ErrorCode::Mismatch, "point has " + std::to_string(p.values.size()) +
                                         " coordinates, polynomial has " +
                                         std::to_string(f.num_gens()) + " generators");
  const Field& k = f.field();
  Scalar acc(0);
  for (const auto& [w, c] : f.terms()) {
    Scalar t = c;
    for (Letter l : w) t = k.mul(t, p.values[l]);
    acc = k.add(acc, t);
  }
  return acc;
}

bool is_point_of(const FpAlgebra& a, const Point& p) {
  if (p.values.size() != a.num_gens()) return false;
  return std::all_of(a.pres().rels.begin(), a.pres().rels.end(),
                     [&](const NcPoly& r) { return Field::is_zero(eval(r, p)); });
}

namespace {

std::string format_point(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.values.size(); ++i) s += (i ? "," : "") + to_string(p.values[i]);
  return s + ")";
}

}  // namespace

PointSet::PointSet(FpAlgebra algebra, std::vector<Point> points)
    : algebra_(std::move(algebra)), points_(std::move(points)) {
  for (auto& p : points_) {
    for (auto& v : p.values) v = algebra_.field().normalize(v);
    if (!is_point_of(algebra_, p))
      throw Error(ErrorCode::InvalidArgument, "not a point of the algebra: " + format_point(p),
                  format_point(p));
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

PointSet::PointSet(FpAlgebra algebra, std::vector<Point> points, Trusted)
    : algebra_(std::move(algebra)), points_(std::move(points)) {}

bool PointSet::contains(const Point& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

namespace {

// A relation evaluated at commuting scalars: exponent vector -> residue.
struct CompiledRelation {
  std::vector<std::pair<std::vector<unsigned>, std::uint32_t>> terms;
};

CompiledRelation compile(const NcPoly& r, const Field& k) {
  std::map<std::vector<unsigned>, Scalar> collected;
  for (const auto& [w, c] : r.terms()) {
    std::vector<unsigned> exps(r.num_gens(), 0);
    for (Letter l : w) ++exps[l];
    auto [it, inserted] = collected.try_emplace(exps, c);
    if (!inserted) it->second = k.add(it->second, c);
  }
  CompiledRelation out;
  for (const auto& [e, c] : collected)
    if (!Field::is_zero(c)) out.terms.emplace_back(e, k.residue(c));
  return out;
}

constexpr std::size_t kBlock = 1024;

// Scans candidate indices [begin, end); index digits in base p, most
// significant first, give the coordinates, so output is already sorted.
std::vector<Point> scan_range(const std::vector<CompiledRelation>& rels, std::size_t n,
                              std::uint32_t p, std::uint64_t begin, std::uint64_t end) {
  const auto& kt = simd::kernels();
  std::vector<unsigned> max_exp(n, 0);
  for (const auto& r : rels)
    for (const auto& [e, c] : r.terms)
      for (std::size_t v = 0; v < n; ++v) max_exp[v] = std::max(max_exp[v], e[v]);

  std::vector<Point> found;
  std::vector<std::vector<std::uint32_t>> coords(n, std::vector<std::uint32_t>(kBlock));
  std::vector<std::vector<std::vector<std::uint32_t>>> pows(n);
  for (std::size_t v = 0; v < n; ++v)
    pows[v].assign(max_exp[v] + 1, std::vector<std::uint32_t>(kBlock));
  std::vector<std::uint32_t> acc(kBlock), tmp(kBlock);
  std::vector<char> alive(kBlock);
  std::vector<std::uint32_t> digits(n);

  for (std::uint64_t start = begin; start < end; start += kBlock) {
    const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(kBlock, end - start));
    std::uint64_t idx = start;
    for (std::size_t v = n; v-- > 0;) {
      digits[v] = static_cast<std::uint32_t>(idx % p);
      idx /= p;
    }
    for (std::size_t b = 0; b < count; ++b) {
      for (std::size_t v = 0; v < n; ++v) coords[v][b] = digits[v];
      for (std::size_t v = n; v-- > 0;) {
        if (++digits[v] < p) break;
        digits[v] = 0;
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      std::fill_n(pows[v][0].begin(), count, p == 1 ? 0u : 1u);
      for (unsigned e = 1; e <= max_exp[v]; ++e)
        kt.mul(pows[v][e - 1].data(), coords[v].data(), pows[v][e].data(), count, p);
    }
    std::fill_n(alive.begin(), count, 1);
    for (const auto& r : rels) {
      std::fill_n(acc.begin(), count, 0u);
      for (const auto& [e, c] : r.terms) {
        std::fill_n(tmp.begin(), count, c);
        for (std::size_t v = 0; v < n; ++v)
          if (e[v]) kt.mul(tmp.data(), pows[v][e[v]].data(), tmp.data(), count, p);
        kt.add(acc.data(), tmp.data(), count, p);
      }
      for (std::size_t b = 0; b < count; ++b) alive[b] &= acc[b] == 0;
    }
    for (std::size_t b = 0; b < count; ++b) {
      if (!alive[b]) continue;
      Point pt;
      pt.values.reserve(n);
      for (std::size_t v = 0; v < n; ++v) pt.values.emplace_back(static_cast<unsigned long>(coords[v][b]));
      found.push_back(std::move(pt));
    }
  }
  return found;
}

}  // namespace

PointSet enumerate_points(const FpAlgebra& a, const EnumerateOptions& options) {
  const Field& k = a.field();
  if (!k.is_prime())
    throw Error(ErrorCode::InvalidArgument,
                "point search needs a prime field; over " + k.name() + " supply points explicitly");
  const std::uint32_t p = k.characteristic();
  const std::size_t n = a.num_gens();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > options.max_candidates / p)
      throw Error(ErrorCode::Guard, "search space " + std::to_string(p) + "^" + std::to_string(n) +
                                        " exceeds the guard of " +
                                        std::to_string(options.max_candidates));
    total *= p;
  }
  std::vector<CompiledRelation> rels;
  for (const auto& r : a.pres().rels) rels.push_back(compile(r, k));

  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, 64));
  std::vector<std::vector<Point>> parts(jobs);
  if (jobs == 1) {
    parts[0] = scan_range(rels, n, p, 0, total);
  } else {
    std::vector<std::thread> workers;
    for (unsigned j = 0; j < jobs; ++j) {
      std::uint64_t lo = total * j / jobs, hi = total * (j + 1) / jobs;
      workers.emplace_back([&, j, lo, hi] { parts[j] = scan_range(rels, n, p, lo, hi); });
    }
    for (auto& w : workers) w.join();
  }
  std::vector<Point> all;
  for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(all));
  return PointSet(a, std::move(all), PointSet::Trusted{});
}

PointSet basic_open(const NcPoly& f, const PointSet& x) {
  if (f.num_gens() != x.algebra().num_gens() || !(f.field() == x.algebra().field()))
    throw Error(ErrorCode::Mismatch, "polynomial is not over the point set's algebra");
  std::vector<Point> kept;
  for (const auto& p : x.points())
    if (!Field::is_zero(eval(f, p))) kept.push_back(p);
  return PointSet(x.algebra(), std::move(kept), PointSet::Trusted{});
}

PointSet induced_point_map(const AlgebraHom& h, const PointSet& x) {
  if (!(h.target() == x.algebra()))
    throw Error(ErrorCode::Mismatch, "homomorphism target is not the point set's algebra");
  if (!h.valid())
    throw Error(ErrorCode::InvalidHom, "homomorphism does not respect the source relations",
                h.check().witness ? std::optional(h.source().format(*h.check().witness)) : std::nullopt);
  std::vector<Point> image;
  image.reserve(x.size());
  for (const auto& p : x.points()) {
    Point q;
    for (const auto& im : h.images()) q.values.push_back(eval(im, p));
    image.push_back(std::move(q));
  }
  return PointSet(h.source(), std::move(image));
}

namespace {

void exponent_vectors(std::size_t n, int budget, std::vector<unsigned>& cur, std::size_t v,
                      std::vector<std::vector<unsigned>>& out) {
  if (v == n) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= budget; ++e) {
    cur[v] = static_cast<unsigned>(e);
    exponent_vectors(n, budget - e, cur, v + 1, out);
  }
  cur[v] = 0;
}

Vector pointwise_product(const Field& k, const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = k.mul(a[i], b[i]);
  return out;
}

}  // namespace

SectionSpace section_space(const PointSet& u) {
  if (u.empty()) throw Error(ErrorCode::EmptySet, "section space of the empty set");
  const FpAlgebra& a = u.algebra();
  const Field& k = a.field();
  const std::size_t n = a.num_gens();

  // Word tables only depend on exponent vectors since points commute.
  std::vector<std::vector<unsigned>> exps;
  std::vector<unsigned> cur(n, 0);
  exponent_vectors(n, a.bound(), cur, 0, exps);

  SpanBuilder span(k, u.size());
  for (const auto& e : exps) {
    Vector table;
    for (const auto& p : u.points()) {
      Scalar t = k.from_int(1);
      for (std::size_t v = 0; v < n; ++v) t = k.mul(t, k.pow(p.values[v], e[v]));
      table.push_back(t);
    }
    span.insert(table);
    if (span.dimension() == u.size()) break;
  }

  bool grew = true;
  while (grew) {
    grew = false;
    const auto basis = span.basis();
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i; j < basis.size(); ++j)
        grew |= span.insert(pointwise_product(k, basis[i], basis[j]));
    for (const auto& t : span.basis()) {
      if (std::any_of(t.begin(), t.end(), [](const Scalar& s) { return Field::is_zero(s); })) continue;
      Vector recip;
      for (const auto& s : t) recip.push_back(k.inv(s));
      grew |= span.insert(recip);
    }
  }
  return SectionSpace{u, span.basis(), true};
}

std::vector<Word> words_up_to(std::size_t num_gens, int degree) {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (int d = 1; d <= degree && num_gens > 0; ++d) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (Letter l = 0; l < num_gens; ++l) {
        Word v = w;
        v.push_back(l);
        next.push_back(std::move(v));
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::vector<NcPoly> kernel_of_rho(const PointSet& u, int degree) {
  const FpAlgebra& a = u.algebra();
  const Field& k = a.field();
  const auto words = words_up_to(a.num_gens(), degree);
  Matrix evals(k, u.size(), words.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < words.size(); ++j)
      evals(i, j) = eval(NcPoly::monomial(k, a.num_gens(), words[j]), u.points()[i]);
  Matrix kernel = null_space(evals);
  std::vector<NcPoly> out;
  for (std::size_t r = 0; r < kernel.rows(); ++r) {
    NcPoly f = a.zero();
    for (std::size_t j = 0; j < words.size(); ++j) f.add_term(words[j], kernel(r, j));
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace assocvar
