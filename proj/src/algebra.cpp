#include "assocvar/algebra.hpp"

#include <algorithm>

#include "assocvar/error.hpp"

namespace assocvar {

FpAlgebra::FpAlgebra(Presentation pres, const CompletionLimits& limits) {
  pres.validate();
  RewriteSystem sys = complete(pres, limits);
  data_ = std::make_shared<const Data>(Data{std::move(pres), std::move(sys)});
}

FpAlgebra FpAlgebra::ground(Field field) {
  Presentation p;
  p.field = field;
  return FpAlgebra(std::move(p));
}

FpAlgebra FpAlgebra::free(Field field, std::vector<std::string> gens, int bound) {
  Presentation p;
  p.field = field;
  p.gens = std::move(gens);
  p.bound = bound;
  return FpAlgebra(std::move(p));
}

FpAlgebra FpAlgebra::polynomial(Field field, std::vector<std::string> gens, int bound) {
  return abelianization(free(field, std::move(gens), bound));
}

FpAlgebra FpAlgebra::parse(std::string_view text) { return FpAlgebra(parse_presentation(text)); }

bool FpAlgebra::is_commutative() const {
  for (std::size_t i = 0; i < num_gens(); ++i)
    for (std::size_t j = i + 1; j < num_gens(); ++j)
      if (!reduce(commutator(gen(i), gen(j))).is_zero()) return false;
  return true;
}

NcPoly commutator(const NcPoly& a, const NcPoly& b) { return a * b - b * a; }

AlgebraHom::AlgebraHom(FpAlgebra source, FpAlgebra target, std::vector<NcPoly> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.num_gens())
    throw Error(ErrorCode::Mismatch, "homomorphism needs one image per source generator");
  if (!(source_.field() == target_.field()))
    throw Error(ErrorCode::Mismatch, "homomorphism between algebras over different fields");
  for (auto& im : images_) {
    if (im.num_gens() != target_.num_gens() || !(im.field() == target_.field()))
      throw Error(ErrorCode::Mismatch, "image does not live in the target algebra");
    im = target_.reduce(im);
  }
  check_ = check_hom(*this);
}

AlgebraHom AlgebraHom::identity(const FpAlgebra& a) {
  std::vector<NcPoly> images;
  for (std::size_t i = 0; i < a.num_gens(); ++i) images.push_back(a.gen(i));
  return AlgebraHom(a, a, std::move(images));
}

AlgebraHom AlgebraHom::parse(const FpAlgebra& source, const FpAlgebra& target,
                             const std::vector<std::string>& images) {
  std::vector<NcPoly> polys;
  for (const auto& s : images) polys.push_back(target.parse_poly(s));
  return AlgebraHom(source, target, std::move(polys));
}

NcPoly AlgebraHom::apply(const NcPoly& p) const {
  if (p.num_gens() != source_.num_gens())
    throw Error(ErrorCode::Mismatch, "polynomial is not over the source algebra");
  if (source_.num_gens() == 0) {
    NcPoly r = target_.zero();
    for (const auto& [w, c] : p.terms()) r.add_term(w, c);
    return r;
  }
  return target_.reduce(substitute(p, images_));
}

HomCheck check_hom(const AlgebraHom& h) {
  HomCheck res;
  const RewriteSystem& sys = h.target().rewriting();
  res.semidecision = !sys.exact();
  for (const auto& r : h.source().pres().rels) {
    NcPoly raw = h.source().num_gens() == 0 ? h.target().zero() : substitute(r, h.images());
    if (h.source().num_gens() == 0)
      for (const auto& [w, c] : r.terms()) raw.add_term(w, c);
    if (raw.degree() > sys.bound()) res.semidecision = true;
    NcPoly image = sys.reduce(raw);
    if (!image.is_zero()) {
      res.valid = false;
      res.witness = r;
      res.witness_image = image;
      return res;
    }
  }
  return res;
}

AlgebraHom compose_hom(const AlgebraHom& g, const AlgebraHom& h) {
  if (!(h.target() == g.source()))
    throw Error(ErrorCode::Mismatch, "cannot compose: target of the first map is not the source of the second");
  std::vector<NcPoly> images;
  for (const auto& im : h.images()) images.push_back(g.apply(im));
  return AlgebraHom(h.source(), g.target(), std::move(images));
}

FpAlgebra tensor_over_k(const FpAlgebra& a, const FpAlgebra& b) {
  if (!(a.field() == b.field()))
    throw Error(ErrorCode::Mismatch, "tensor product of algebras over different fields");
  Presentation p;
  p.field = a.field();
  p.gens = a.gens();
  for (const auto& name : b.gens()) {
    std::string n = name;
    while (std::find(p.gens.begin(), p.gens.end(), n) != p.gens.end()) n += "_2";
    p.gens.push_back(n);
  }
  p.bound = std::max({a.bound(), b.bound(), 2});
  const std::size_t na = a.num_gens(), total = p.gens.size();
  std::vector<Letter> map_a(na), map_b(b.num_gens());
  for (std::size_t i = 0; i < na; ++i) map_a[i] = static_cast<Letter>(i);
  for (std::size_t j = 0; j < b.num_gens(); ++j) map_b[j] = static_cast<Letter>(na + j);
  for (const auto& r : a.pres().rels) p.rels.push_back(relabel(r, map_a, total));
  for (const auto& r : b.pres().rels) p.rels.push_back(relabel(r, map_b, total));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < b.num_gens(); ++j)
      p.rels.push_back(commutator(p.gen(i), p.gen(na + j)));
  return FpAlgebra(std::move(p));
}

FpAlgebra abelianization(const FpAlgebra& a) {
  Presentation p = a.pres();
  p.bound = std::max(p.bound, 2);
  for (std::size_t i = 0; i < p.num_gens(); ++i)
    for (std::size_t j = i + 1; j < p.num_gens(); ++j) {
      NcPoly c = commutator(p.gen(i), p.gen(j));
      bool listed = std::any_of(p.rels.begin(), p.rels.end(), [&](const NcPoly& r) {
        return r == c || r == -c;
      });
      if (!listed) p.rels.push_back(std::move(c));
    }
  return FpAlgebra(std::move(p));
}

Matrix linear_part(const AlgebraHom& f) {
  const Field& k = f.source().field();
  Matrix m(k, f.target().num_gens(), f.source().num_gens());
  for (std::size_t j = 0; j < f.images().size(); ++j) {
    for (const auto& [w, c] : f.images()[j].terms()) {
      if (w.size() != 1)
        throw Error(ErrorCode::NonHomogeneous,
                    "image of " + f.source().gens()[j] + " is not a linear form",
                    f.target().format(f.images()[j]));
      m(w[0], j) = c;
    }
  }
  return m;
}

AlgebraHom hom_of_matrix(const Matrix& l, const FpAlgebra& a) {
  if (l.rows() != a.num_gens() || l.cols() != a.num_gens())
    throw Error(ErrorCode::Mismatch, "matrix size does not match the generator count");
  if (!a.is_free() && !a.is_commutative())
    throw Error(ErrorCode::InvalidArgument, "linear maps are only defined on free or commutative charts");
  std::vector<NcPoly> images;
  for (std::size_t j = 0; j < l.cols(); ++j) {
    NcPoly im = a.zero();
    for (std::size_t i = 0; i < l.rows(); ++i)
      im.add_term(Word{static_cast<Letter>(i)}, a.field().normalize(l(i, j)));
    images.push_back(std::move(im));
  }
  return AlgebraHom(a, a, std::move(images));
}

bool is_linear_isomorphism(const AlgebraHom& f) {
  Matrix m = linear_part(f);
  return m.is_square() && !Field::is_zero(determinant(m));
}

AlgebraHom structure_map(const FpAlgebra& a, std::size_t n) {
  if (n > a.num_gens()) throw Error(ErrorCode::InvalidArgument, "chart has fewer than n generators");
  std::vector<std::string> names(a.gens().begin(), a.gens().begin() + static_cast<long>(n));
  FpAlgebra base = FpAlgebra::polynomial(a.field(), names, a.bound());
  std::vector<NcPoly> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(a.gen(i));
  AlgebraHom h(base, a, std::move(images));
  if (!h.valid())
    throw Error(ErrorCode::InvalidHom, "chart coordinates do not commute",
                h.check().witness ? std::optional<std::string>(base.format(*h.check().witness)) : std::nullopt);
  return h;
}

}  // namespace assocvar
