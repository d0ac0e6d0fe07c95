#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "assocvar/ncpoly.hpp"
#include "assocvar/presentation.hpp"

namespace assocvar {

namespace detail {
class Completion;
}

/// Oriented relation lead -> rest, encoding lead - rest in the ideal.
/// Every word of `rest` is deglex-smaller than `lead`.
struct RewriteRule {
  Word lead;
  NcPoly rest;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = w.size();
    for (Letter l : w) h = h * 1000003u ^ l;
    return h;
  }
};

/// Work limits for completion. Hitting one stops early and lowers
/// complete_up_to below the bound instead of failing.
struct CompletionLimits {
  std::size_t max_rules = 20000;
  std::size_t max_pairs = 2000000;
};

/// Inter-reduced, degree-truncated two-sided rewriting system.
///
/// All overlap ambiguities whose word has degree <= complete_up_to() have
/// been resolved. When complete_up_to() == bound() and no overlap above the
/// bound was skipped, the system is a finite noncommutative Groebner basis
/// (`exact()`), and normal forms decide ideal membership outright.
class RewriteSystem {
 public:
  RewriteSystem() = default;
  RewriteSystem(Field field, std::size_t num_gens, int bound)
      : field_(field), num_gens_(num_gens), bound_(bound), complete_up_to_(bound) {}

  const std::vector<RewriteRule>& rules() const { return rules_; }
  const Field& field() const { return field_; }
  std::size_t num_gens() const { return num_gens_; }
  int bound() const { return bound_; }
  int complete_up_to() const { return complete_up_to_; }
  bool complete() const { return complete_up_to_ >= bound_; }
  bool exact() const { return complete() && !skipped_above_bound_; }
  /// 1 reduces to 0: the quotient is the zero ring.
  bool is_zero_ring() const;

  /// Throws Truncation when deg p exceeds the bound.
  NcPoly normal_form(const NcPoly& p) const;
  /// Same reduction without the degree guard (reduction never raises degree
  /// under deglex, so this is safe; the answer is only certified up to the
  /// bound).
  NcPoly reduce(const NcPoly& p) const;
  bool is_irreducible(const Word& w) const { return find_reducer(w).rule < 0; }

 private:
  friend RewriteSystem complete(const Presentation&, const CompletionLimits&);
  friend class detail::Completion;

  struct Match {
    long rule = -1;
    std::size_t pos = 0;
  };
  Match find_reducer(const Word& w) const;
  void rebuild_index();

  Field field_;
  std::size_t num_gens_ = 0;
  int bound_ = kDefaultBound;
  int complete_up_to_ = kDefaultBound;
  bool skipped_above_bound_ = false;
  std::vector<RewriteRule> rules_;
  std::unordered_map<Word, std::size_t, WordHash> index_;
  std::vector<std::size_t> lead_lengths_;
};

/// Truncated Buchberger-Mora completion of the presentation's relations.
/// Overlaps are processed by ascending degree, then deglex ambiguity word.
RewriteSystem complete(const Presentation& pres, const CompletionLimits& limits = {});

NcPoly normal_form(const NcPoly& p, const RewriteSystem& system);

enum class Membership { Yes, NoUpToBound };

struct MembershipResult {
  Membership answer = Membership::NoUpToBound;
  /// Set when the system is not known to be a full Groebner basis, so a
  /// "no" may be an artifact of truncation.
  bool semidecision = false;
  int complete_up_to = 0;
  NcPoly normal_form;
};

MembershipResult ideal_member(const NcPoly& p, const RewriteSystem& system);
MembershipResult ideal_member(const NcPoly& p, const Presentation& pres);

}  // namespace assocvar
