#pragma once

#include <optional>
#include <string>
#include <vector>

#include "assocvar/algebra.hpp"

namespace assocvar {

/// d on the free algebra: letters 0..m-1 are x_i, letters m..2m-1 are dx_i.
/// d(w) = sum over positions j of w with x_{i_j} replaced by dx_{i_j}.
NcPoly differentiate(const NcPoly& p);

/// p over x_1..x_m viewed in the alphabet x_1..x_m, dx_1..dx_m.
NcPoly lift_to_phase(const NcPoly& p);

/// Names "d"+name; throws NameClash if one is already a generator name.
std::vector<std::string> differential_names(const std::vector<std::string>& gens,
                                            const std::string& prefix = "d");

/// Ph(A) = k<x, dx>/(J, dJ) with the embedding A -> Ph(A).
struct PhasePresentation {
  FpAlgebra base;
  FpAlgebra phase;
  AlgebraHom embedding;

  const Presentation& pres() const { return phase.pres(); }
  std::size_t m() const { return base.num_gens(); }
  NcPoly x(std::size_t i) const { return phase.gen(i); }
  NcPoly dx(std::size_t i) const { return phase.gen(m() + i); }
};

PhasePresentation phase_space(const FpAlgebra& a);
/// The affine tangent chart; same presentation as phase_space.
PhasePresentation tangent_chart(const FpAlgebra& a);

/// A derivation delta: source -> target over rho: source -> target, given by
/// its values on the generators.
struct DerivationSpec {
  AlgebraHom rho;
  std::vector<NcPoly> images;

  const FpAlgebra& source() const { return rho.source(); }
  const FpAlgebra& target() const { return rho.target(); }
};

/// Leibniz extension of delta to a source polynomial, reduced in the target.
NcPoly apply_derivation(const DerivationSpec& delta, const NcPoly& p);

struct DerivationCheck {
  bool valid = true;
  std::optional<NcPoly> witness;
  std::optional<NcPoly> witness_image;
  bool semidecision = false;
};

DerivationCheck check_derivation(const DerivationSpec& delta);

/// Ph(source) -> target, x_i -> rho(x_i), dx_i -> delta(x_i). Throws
/// InvalidHom if delta is not a derivation.
AlgebraHom induced_hom(const PhasePresentation& ph, const DerivationSpec& delta);
AlgebraHom induced_hom(const DerivationSpec& delta);

/// psi: Ph(A) -> B represents delta: psi is a valid hom with psi(x_i) = rho(x_i)
/// and psi(dx_i) = delta(x_i) in B.
bool represents(const PhasePresentation& ph, const DerivationSpec& delta, const AlgebraHom& psi);

/// Ph(phi): x_i -> phi(x_i), dx_i -> d(phi(x_i)). Throws InvalidHom for an invalid phi.
AlgebraHom ph_functor(const PhasePresentation& pa, const PhasePresentation& pb,
                      const AlgebraHom& phi);
AlgebraHom ph_functor(const AlgebraHom& phi);

}  // namespace assocvar
