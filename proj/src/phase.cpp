#include "assocvar/phase.hpp"

#include <algorithm>

#include "assocvar/error.hpp"

namespace assocvar {

NcPoly differentiate(const NcPoly& p) {
  const std::size_t m = p.num_gens();
  NcPoly out(p.field(), 2 * m);
  for (const auto& [w, c] : p.terms()) {
    for (std::size_t j = 0; j < w.size(); ++j) {
      Word v = w;
      v[j] = static_cast<Letter>(m + w[j]);
      out.add_term(v, c);
    }
  }
  return out;
}

NcPoly lift_to_phase(const NcPoly& p) {
  std::vector<Letter> map(p.num_gens());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = static_cast<Letter>(i);
  return relabel(p, map, 2 * p.num_gens());
}

std::vector<std::string> differential_names(const std::vector<std::string>& gens,
                                            const std::string& prefix) {
  std::vector<std::string> out;
  for (const auto& g : gens) {
    std::string n = prefix + g;
    if (std::find(gens.begin(), gens.end(), n) != gens.end())
      throw Error(ErrorCode::NameClash, "generator name reserved for a differential", n);
    out.push_back(std::move(n));
  }
  return out;
}

PhasePresentation phase_space(const FpAlgebra& a) {
  Presentation p;
  p.field = a.field();
  p.gens = a.gens();
  for (auto& n : differential_names(a.gens())) p.gens.push_back(std::move(n));
  p.bound = a.bound();
  for (const auto& r : a.pres().rels) p.rels.push_back(lift_to_phase(r));
  for (const auto& r : a.pres().rels) {
    NcPoly dr = differentiate(r);
    if (!dr.is_zero()) p.rels.push_back(std::move(dr));
  }
  FpAlgebra phase(std::move(p));
  std::vector<NcPoly> images;
  for (std::size_t i = 0; i < a.num_gens(); ++i) images.push_back(phase.gen(i));
  AlgebraHom emb(a, phase, std::move(images));
  return PhasePresentation{a, phase, std::move(emb)};
}

PhasePresentation tangent_chart(const FpAlgebra& a) { return phase_space(a); }

namespace {

std::vector<NcPoly> derivation_images(const DerivationSpec& delta) {
  if (delta.images.size() != delta.source().num_gens())
    throw Error(ErrorCode::Mismatch, "derivation needs one value per source generator");
  std::vector<NcPoly> all = delta.rho.images();
  for (const auto& im : delta.images) {
    if (im.num_gens() != delta.target().num_gens() || !(im.field() == delta.target().field()))
      throw Error(ErrorCode::Mismatch, "derivation value does not live in the target");
    all.push_back(im);
  }
  return all;
}

NcPoly substitute_or_constant(const NcPoly& p, const std::vector<NcPoly>& images,
                              const FpAlgebra& target) {
  if (images.empty()) {
    NcPoly r = target.zero();
    for (const auto& [w, c] : p.terms()) r.add_term(w, c);
    return r;
  }
  return substitute(p, images);
}

}  // namespace

NcPoly apply_derivation(const DerivationSpec& delta, const NcPoly& p) {
  auto images = derivation_images(delta);
  return delta.target().reduce(substitute_or_constant(differentiate(p), images, delta.target()));
}

DerivationCheck check_derivation(const DerivationSpec& delta) {
  DerivationCheck res;
  auto images = derivation_images(delta);
  const RewriteSystem& sys = delta.target().rewriting();
  res.semidecision = !sys.exact();
  for (const auto& r : delta.source().pres().rels) {
    NcPoly raw = substitute_or_constant(differentiate(r), images, delta.target());
    if (raw.degree() > sys.bound()) res.semidecision = true;
    NcPoly img = sys.reduce(raw);
    if (!img.is_zero()) {
      res.valid = false;
      res.witness = r;
      res.witness_image = img;
      return res;
    }
  }
  return res;
}

AlgebraHom induced_hom(const PhasePresentation& ph, const DerivationSpec& delta) {
  if (!(ph.base == delta.source()))
    throw Error(ErrorCode::Mismatch, "phase space of a different algebra");
  if (!delta.rho.valid())
    throw Error(ErrorCode::InvalidHom, "structure map is not a homomorphism",
                delta.source().format(*delta.rho.check().witness));
  DerivationCheck chk = check_derivation(delta);
  if (!chk.valid)
    throw Error(ErrorCode::InvalidHom, "values do not define a derivation",
                delta.source().format(*chk.witness));
  return AlgebraHom(ph.phase, delta.target(), derivation_images(delta));
}

AlgebraHom induced_hom(const DerivationSpec& delta) {
  return induced_hom(phase_space(delta.source()), delta);
}

bool represents(const PhasePresentation& ph, const DerivationSpec& delta, const AlgebraHom& psi) {
  if (!(psi.source() == ph.phase) || !(psi.target() == delta.target())) return false;
  if (!psi.valid()) return false;
  const std::size_t m = ph.m();
  for (std::size_t i = 0; i < m; ++i) {
    if (!delta.target().equal(psi.apply(ph.x(i)), delta.rho.images()[i])) return false;
    if (!delta.target().equal(psi.apply(ph.dx(i)), delta.images[i])) return false;
  }
  return true;
}

AlgebraHom ph_functor(const PhasePresentation& pa, const PhasePresentation& pb,
                      const AlgebraHom& phi) {
  if (!(pa.base == phi.source()) || !(pb.base == phi.target()))
    throw Error(ErrorCode::Mismatch, "phase spaces do not match the map");
  if (!phi.valid())
    throw Error(ErrorCode::InvalidHom, "map is not a homomorphism",
                phi.source().format(*phi.check().witness));
  std::vector<NcPoly> images;
  for (const auto& im : phi.images()) images.push_back(lift_to_phase(im));
  for (const auto& im : phi.images()) images.push_back(differentiate(im));
  return AlgebraHom(pa.phase, pb.phase, std::move(images));
}

AlgebraHom ph_functor(const AlgebraHom& phi) {
  return ph_functor(phase_space(phi.source()), phase_space(phi.target()), phi);
}

}  // namespace assocvar
