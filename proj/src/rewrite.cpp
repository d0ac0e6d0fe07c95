#include "assocvar/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

#include "assocvar/error.hpp"

namespace assocvar {

void RewriteSystem::rebuild_index() {
  index_.clear();
  lead_lengths_.clear();
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    index_.emplace(rules_[i].lead, i);
    lead_lengths_.push_back(rules_[i].lead.size());
  }
  std::sort(lead_lengths_.begin(), lead_lengths_.end());
  lead_lengths_.erase(std::unique(lead_lengths_.begin(), lead_lengths_.end()),
                      lead_lengths_.end());
}

RewriteSystem::Match RewriteSystem::find_reducer(const Word& w) const {
  Word probe;
  for (std::size_t pos = 0; pos < w.size() || (pos == 0 && w.empty()); ++pos) {
    for (std::size_t len : lead_lengths_) {
      if (pos + len > w.size()) break;
      probe.assign(w.begin() + static_cast<long>(pos), w.begin() + static_cast<long>(pos + len));
      auto it = index_.find(probe);
      if (it != index_.end()) return {static_cast<long>(it->second), pos};
    }
    if (w.empty()) break;
  }
  return {};
}

NcPoly RewriteSystem::reduce(const NcPoly& p) const {
  if (p.num_gens() != num_gens_ || !(p.field() == field_))
    throw Error(ErrorCode::Mismatch, "polynomial does not live over the rewrite system");
  if (rules_.empty()) return p;
  NcPoly work = p;
  NcPoly result(field_, num_gens_);
  // Reduction only ever introduces deglex-smaller words, so pulling the
  // largest remaining term each round visits every word at most once.
  while (!work.is_zero()) {
    Word w = work.leading_word();
    Scalar c = work.leading_coeff();
    work.add_term(w, field_.neg(c));
    Match m = find_reducer(w);
    if (m.rule < 0) {
      result.add_term(w, c);
      continue;
    }
    const RewriteRule& rule = rules_[static_cast<std::size_t>(m.rule)];
    Word prefix(w.begin(), w.begin() + static_cast<long>(m.pos));
    Word suffix(w.begin() + static_cast<long>(m.pos + rule.lead.size()), w.end());
    for (const auto& [rw, rc] : rule.rest.terms())
      work.add_term(concat(prefix, rw, suffix), field_.mul(c, rc));
  }
  return result;
}

NcPoly RewriteSystem::normal_form(const NcPoly& p) const {
  if (p.degree() > bound_)
    throw Error(ErrorCode::Truncation,
                "degree " + std::to_string(p.degree()) + " exceeds truncation bound " +
                    std::to_string(bound_));
  return reduce(p);
}

bool RewriteSystem::is_zero_ring() const {
  return reduce(NcPoly::constant(field_, num_gens_, Scalar(1))).is_zero();
}

namespace {

struct Overlap {
  Word ambiguity;
  std::size_t left = 0;   // rule whose lead is a prefix of the ambiguity
  std::size_t right = 0;  // rule whose lead is a suffix
  std::size_t shared = 0;
};

struct OverlapLess {
  bool operator()(const Overlap& a, const Overlap& b) const {
    if (a.ambiguity.size() != b.ambiguity.size()) return a.ambiguity.size() < b.ambiguity.size();
    if (a.ambiguity != b.ambiguity) return a.ambiguity < b.ambiguity;
    return std::tie(a.left, a.right, a.shared) < std::tie(b.left, b.right, b.shared);
  }
};

bool contains_subword(const Word& hay, const Word& needle) {
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

}  // namespace

namespace detail {

class Completion {
 public:
  Completion(const Presentation& pres, const CompletionLimits& limits)
      : sys_(pres.field, pres.num_gens(), pres.bound), limits_(limits) {}

  RewriteSystem run(const std::vector<NcPoly>& rels) {
    for (const auto& r : rels) queue_.push_back(r);
    drain();
    std::size_t processed = 0;
    while (!pairs_.empty()) {
      Overlap o = *pairs_.begin();
      pairs_.erase(pairs_.begin());
      if (!alive_[o.left] || !alive_[o.right]) continue;
      if (++processed > limits_.max_pairs || live_count() > limits_.max_rules) {
        sys_.complete_up_to_ = static_cast<int>(o.ambiguity.size()) - 1;
        break;
      }
      queue_.push_back(s_poly(o));
      drain();
    }
    return finish();
  }

 private:
  std::size_t live_count() const {
    return static_cast<std::size_t>(std::count(alive_.begin(), alive_.end(), true));
  }

  // The reducer index mirrors the live rules so reduce() sees them.
  void sync_index() {
    sys_.rules_.clear();
    for (std::size_t i = 0; i < all_.size(); ++i)
      if (alive_[i]) sys_.rules_.push_back(all_[i]);
    sys_.rebuild_index();
  }

  NcPoly s_poly(const Overlap& o) const {
    const RewriteRule& l = all_[o.left];
    const RewriteRule& r = all_[o.right];
    Word a(l.lead.begin(), l.lead.end() - static_cast<long>(o.shared));
    Word c(r.lead.begin() + static_cast<long>(o.shared), r.lead.end());
    NcPoly lhs(sys_.field_, sys_.num_gens_), rhs(sys_.field_, sys_.num_gens_);
    for (const auto& [w, k] : l.rest.terms()) lhs.add_term(concat(w, c), k);
    for (const auto& [w, k] : r.rest.terms()) rhs.add_term(concat(a, w), k);
    return lhs - rhs;
  }

  void drain() {
    while (!queue_.empty()) {
      // Smallest leading word first keeps intake deterministic.
      auto it = std::min_element(queue_.begin(), queue_.end(), [](const NcPoly& a, const NcPoly& b) {
        if (a.is_zero() || b.is_zero()) return b.is_zero() < a.is_zero();
        return DeglexLess{}(a.leading_word(), b.leading_word());
      });
      NcPoly p = std::move(*it);
      queue_.erase(it);
      NcPoly q = sys_.reduce(p);
      if (q.is_zero()) continue;
      add_rule(q.monic());
    }
  }

  void add_rule(const NcPoly& monic) {
    RewriteRule rule;
    rule.lead = monic.leading_word();
    rule.rest = NcPoly::monomial(sys_.field_, sys_.num_gens_, rule.lead) - monic;
    std::size_t id = all_.size();
    // Rules whose lead contains the new lead are no longer inter-reduced.
    for (std::size_t i = 0; i < all_.size(); ++i) {
      if (!alive_[i] || !contains_subword(all_[i].lead, rule.lead)) continue;
      alive_[i] = false;
      queue_.push_back(NcPoly::monomial(sys_.field_, sys_.num_gens_, all_[i].lead) - all_[i].rest);
    }
    all_.push_back(rule);
    alive_.push_back(true);
    for (std::size_t i = 0; i <= id; ++i) {
      if (!alive_[i]) continue;
      add_overlaps(i, id);
      if (i != id) add_overlaps(id, i);
    }
    sync_index();
  }

  // Proper overlaps: a suffix of lead(left) equals a prefix of lead(right).
  void add_overlaps(std::size_t left, std::size_t right) {
    const Word& a = all_[left].lead;
    const Word& b = all_[right].lead;
    std::size_t max_shared = std::min(a.size(), b.size());
    for (std::size_t k = 1; k < max_shared; ++k) {
      if (!std::equal(a.end() - static_cast<long>(k), a.end(), b.begin())) continue;
      Overlap o;
      o.ambiguity = concat(a, Word(b.begin() + static_cast<long>(k), b.end()));
      o.left = left;
      o.right = right;
      o.shared = k;
      if (static_cast<int>(o.ambiguity.size()) > sys_.bound_) {
        sys_.skipped_above_bound_ = true;
        continue;
      }
      pairs_.insert(std::move(o));
    }
  }

  RewriteSystem finish() {
    // Tail-reduce every right-hand side against the final rule set.
    sync_index();
    std::vector<RewriteRule> rules = sys_.rules_;
    for (auto& r : rules) r.rest = sys_.reduce(r.rest);
    std::sort(rules.begin(), rules.end(), [](const RewriteRule& a, const RewriteRule& b) {
      return DeglexLess{}(a.lead, b.lead);
    });
    sys_.rules_ = std::move(rules);
    sys_.rebuild_index();
    return std::move(sys_);
  }

  RewriteSystem sys_;
  CompletionLimits limits_;
  std::vector<RewriteRule> all_;
  std::vector<bool> alive_;
  std::deque<NcPoly> queue_;
  std::set<Overlap, OverlapLess> pairs_;
};

}  // namespace detail

RewriteSystem complete(const Presentation& pres, const CompletionLimits& limits) {
  pres.validate();
  std::vector<NcPoly> rels;
  for (const auto& r : pres.rels)
    if (!r.is_zero()) rels.push_back(r);
  return detail::Completion(pres, limits).run(rels);
}

NcPoly normal_form(const NcPoly& p, const RewriteSystem& system) {
  return system.normal_form(p);
}

MembershipResult ideal_member(const NcPoly& p, const RewriteSystem& system) {
  MembershipResult res;
  res.normal_form = system.normal_form(p);
  res.complete_up_to = system.complete_up_to();
  res.answer = res.normal_form.is_zero() ? Membership::Yes : Membership::NoUpToBound;
  res.semidecision = res.answer == Membership::NoUpToBound && !system.exact();
  return res;
}

MembershipResult ideal_member(const NcPoly& p, const Presentation& pres) {
  return ideal_member(p, complete(pres));
}

}  // namespace assocvar
