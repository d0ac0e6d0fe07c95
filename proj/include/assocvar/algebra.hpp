#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "assocvar/linalg.hpp"
#include "assocvar/presentation.hpp"
#include "assocvar/rewrite.hpp"

namespace assocvar {

/// A finitely presented algebra with its completed rewriting system.
/// Cheap to copy; the presentation and system are shared and immutable.
class FpAlgebra {
 public:
  explicit FpAlgebra(Presentation pres, const CompletionLimits& limits = {});

  /// The ground field as an algebra (no generators).
  static FpAlgebra ground(Field field);
  static FpAlgebra free(Field field, std::vector<std::string> gens, int bound = kDefaultBound);
  /// Polynomial ring: free algebra modulo all generator commutators.
  static FpAlgebra polynomial(Field field, std::vector<std::string> gens,
                              int bound = kDefaultBound);
  static FpAlgebra parse(std::string_view text);

  const Presentation& pres() const { return data_->pres; }
  const RewriteSystem& rewriting() const { return data_->system; }
  const Field& field() const { return data_->pres.field; }
  std::size_t num_gens() const { return data_->pres.num_gens(); }
  const std::vector<std::string>& gens() const { return data_->pres.gens; }
  int bound() const { return data_->pres.bound; }

  NcPoly zero() const { return pres().zero(); }
  NcPoly one() const { return pres().one(); }
  NcPoly gen(std::size_t i) const { return pres().gen(i); }
  NcPoly constant(const Scalar& c) const { return pres().constant(c); }

  NcPoly parse_poly(std::string_view text) const { return assocvar::parse_poly(text, pres()); }
  std::string format(const NcPoly& p) const { return format_poly(p, gens()); }

  /// Normal form; throws Truncation above the bound.
  NcPoly normal_form(const NcPoly& p) const { return rewriting().normal_form(p); }
  /// Normal form without the degree guard (see RewriteSystem::reduce).
  NcPoly reduce(const NcPoly& p) const { return rewriting().reduce(p); }
  bool equal(const NcPoly& a, const NcPoly& b) const { return reduce(a - b).is_zero(); }
  bool is_zero_ring() const { return rewriting().is_zero_ring(); }
  /// True when every pair of generators commutes in the quotient.
  bool is_commutative() const;
  bool is_free() const { return pres().rels.empty(); }

  friend bool operator==(const FpAlgebra& a, const FpAlgebra& b) {
    return a.data_ == b.data_ || a.pres() == b.pres();
  }

 private:
  struct Data {
    Presentation pres;
    RewriteSystem system;
  };
  std::shared_ptr<const Data> data_;
};

NcPoly commutator(const NcPoly& a, const NcPoly& b);

struct HomCheck {
  bool valid = true;
  /// Source relation whose image does not vanish.
  std::optional<NcPoly> witness;
  /// Normal form of the witness image in the target.
  std::optional<NcPoly> witness_image;
  /// The target system was not exact, or an image exceeded the bound.
  bool semidecision = false;
};

/// k-algebra map source -> target given by generator images.
class AlgebraHom {
 public:
  AlgebraHom(FpAlgebra source, FpAlgebra target, std::vector<NcPoly> images);

  static AlgebraHom identity(const FpAlgebra& a);
  /// Parses images given in the target's syntax, one per source generator.
  static AlgebraHom parse(const FpAlgebra& source, const FpAlgebra& target,
                          const std::vector<std::string>& images);

  const FpAlgebra& source() const { return source_; }
  const FpAlgebra& target() const { return target_; }
  const std::vector<NcPoly>& images() const { return images_; }

  bool valid() const { return check_.valid; }
  const HomCheck& check() const { return check_; }

  /// Image of a source polynomial, reduced in the target.
  NcPoly apply(const NcPoly& p) const;

 private:
  FpAlgebra source_;
  FpAlgebra target_;
  std::vector<NcPoly> images_;
  HomCheck check_;
};

HomCheck check_hom(const AlgebraHom& h);

/// g o h : h.source -> g.target. Requires h.target == g.source.
AlgebraHom compose_hom(const AlgebraHom& g, const AlgebraHom& h);

/// A (x)_k B: disjoint generators (right-factor clashes get a "_2" suffix),
/// both relation sets, and all cross commutators a_i b_j - b_j a_i.
FpAlgebra tensor_over_k(const FpAlgebra& a, const FpAlgebra& b);

/// Adds every generator commutator not already listed.
FpAlgebra abelianization(const FpAlgebra& a);

/// Matrix whose column j holds the coefficients of the image of generator j.
/// Throws NonHomogeneous unless every image is a linear form.
Matrix linear_part(const AlgebraHom& f);

/// Endomorphism x_j -> sum_i l(i, j) x_i of a free or commutative algebra.
AlgebraHom hom_of_matrix(const Matrix& l, const FpAlgebra& a);

/// f is invertible iff its linear part has nonzero determinant.
bool is_linear_isomorphism(const AlgebraHom& f);

/// The R[n] -> A structure map of an n-geometric chart: the first n
/// generators of A, which must commute pairwise.
AlgebraHom structure_map(const FpAlgebra& a, std::size_t n);

}  // namespace assocvar
