#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "assocvar/field.hpp"

namespace assocvar {

/// Generator index into the ambient generator list.
using Letter = std::uint32_t;

/// A monomial of the free algebra. The empty word is the unit.
using Word = std::vector<Letter>;

/// Degree-lexicographic order: shorter words first, then lexicographic by
/// generator index (the file order of the generators).
struct DeglexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

Word concat(const Word& a, const Word& b);
Word concat(const Word& a, const Word& b, const Word& c);

/// Element of k<x_1..x_n>: a finite map from words to nonzero coefficients.
/// The map never stores zero coefficients, so structural equality is
/// equality of polynomials.
class NcPoly {
 public:
  using Terms = std::map<Word, Scalar, DeglexLess>;

  static constexpr int kZeroDegree = INT_MIN;

  NcPoly() = default;
  NcPoly(Field field, std::size_t num_gens) : field_(field), num_gens_(num_gens) {}

  static NcPoly constant(Field field, std::size_t num_gens, const Scalar& c);
  static NcPoly monomial(Field field, std::size_t num_gens, Word w,
                         const Scalar& c = Scalar(1));
  static NcPoly generator(Field field, std::size_t num_gens, Letter i);

  const Field& field() const { return field_; }
  std::size_t num_gens() const { return num_gens_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  /// Maximum word length; kZeroDegree for the zero polynomial.
  int degree() const;
  bool is_constant() const;

  Scalar coeff(const Word& w) const;
  /// Leading (deglex-maximal) word; requires a nonzero polynomial.
  const Word& leading_word() const { return terms_.rbegin()->first; }
  const Scalar& leading_coeff() const { return terms_.rbegin()->second; }

  /// Accumulates c*w, dropping the term if it cancels.
  void add_term(const Word& w, const Scalar& c);

  NcPoly& operator+=(const NcPoly& q);
  NcPoly& operator-=(const NcPoly& q);
  NcPoly operator-() const;
  NcPoly scaled(const Scalar& c) const;
  /// The polynomial divided by its leading coefficient.
  NcPoly monic() const;

  friend NcPoly operator+(NcPoly p, const NcPoly& q) { return p += q; }
  friend NcPoly operator-(NcPoly p, const NcPoly& q) { return p -= q; }
  friend NcPoly operator*(const NcPoly& p, const NcPoly& q);

  friend bool operator==(const NcPoly& a, const NcPoly& b) {
    return a.field_ == b.field_ && a.num_gens_ == b.num_gens_ && a.terms_ == b.terms_;
  }

  /// Throws Mismatch unless both live in the same free algebra.
  void require_same_ambient(const NcPoly& q) const;

 private:
  Field field_;
  std::size_t num_gens_ = 0;
  Terms terms_;
};

NcPoly nc_add(const NcPoly& p, const NcPoly& q);
NcPoly nc_mul(const NcPoly& p, const NcPoly& q);
NcPoly nc_scale(const Scalar& c, const NcPoly& p);

/// Applies the unital algebra map x_i -> images[i]. All images must share
/// one ambient free algebra, which becomes the ambient of the result.
NcPoly substitute(const NcPoly& p, std::span<const NcPoly> images);

/// Re-indexes letters through `letter_map` into a free algebra on
/// `num_gens` generators (used when embedding into larger alphabets).
NcPoly relabel(const NcPoly& p, std::span<const Letter> letter_map, std::size_t num_gens);

}  // namespace assocvar
