#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "assocvar/ncpoly.hpp"

namespace assocvar {

inline constexpr int kDefaultBound = 8;

/// A finitely presented algebra k<gens>/(rels), ordered deglex by the
/// generator list, with the truncation degree used by completion.
struct Presentation {
  Field field;
  std::vector<std::string> gens;
  std::vector<NcPoly> rels;
  int bound = kDefaultBound;

  std::size_t num_gens() const { return gens.size(); }
  /// -1 when absent.
  int index_of(std::string_view name) const;

  NcPoly zero() const { return NcPoly(field, gens.size()); }
  NcPoly one() const { return NcPoly::constant(field, gens.size(), Scalar(1)); }
  NcPoly constant(const Scalar& c) const { return NcPoly::constant(field, gens.size(), c); }
  NcPoly gen(std::size_t i) const {
    return NcPoly::generator(field, gens.size(), static_cast<Letter>(i));
  }

  /// Checks generator names, relation ambients and the bound invariant.
  void validate() const;

  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.field == b.field && a.gens == b.gens && a.rels == b.rels && a.bound == b.bound;
  }
};

/// Raw `module r=N; name = [[...]]` block kept for the localrep parser.
struct ModuleBlock {
  int dim = 0;
  std::vector<std::pair<std::string, std::string>> assignments;
  int line = 0;
};

struct PresentationFile {
  Presentation pres;
  std::vector<ModuleBlock> modules;
};

PresentationFile parse_presentation_file(std::string_view text);
Presentation parse_presentation(std::string_view text);

/// Parses a polynomial over the generators of `pres`.
NcPoly parse_poly(std::string_view text, const Presentation& pres);
NcPoly parse_poly(std::string_view text, const Field& field,
                  const std::vector<std::string>& names);

/// Terms in descending deglex order, e.g. "x*y - 2*x + 1/2".
std::string format_poly(const NcPoly& p, const std::vector<std::string>& names);

/// Canonical file text: field, gens, one rel per line, bound.
std::string print_presentation(const Presentation& pres);

bool is_valid_name(std::string_view name);

}  // namespace assocvar
