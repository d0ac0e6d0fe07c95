#include "assocvar/ncpoly.hpp"

#include "assocvar/error.hpp"

namespace assocvar {

Word concat(const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

Word concat(const Word& a, const Word& b, const Word& c) {
  Word w;
  w.reserve(a.size() + b.size() + c.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  w.insert(w.end(), c.begin(), c.end());
  return w;
}

NcPoly NcPoly::constant(Field field, std::size_t num_gens, const Scalar& c) {
  return monomial(field, num_gens, {}, c);
}

NcPoly NcPoly::monomial(Field field, std::size_t num_gens, Word w, const Scalar& c) {
  NcPoly p(field, num_gens);
  p.add_term(w, field.normalize(c));
  return p;
}

NcPoly NcPoly::generator(Field field, std::size_t num_gens, Letter i) {
  return monomial(field, num_gens, Word{i});
}

int NcPoly::degree() const {
  if (terms_.empty()) return kZeroDegree;
  return static_cast<int>(terms_.rbegin()->first.size());
}

bool NcPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Scalar NcPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void NcPoly::add_term(const Word& w, const Scalar& c) {
  if (Field::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second = field_.add(it->second, c);
  if (Field::is_zero(it->second)) terms_.erase(it);
}

void NcPoly::require_same_ambient(const NcPoly& q) const {
  if (!(field_ == q.field_) || num_gens_ != q.num_gens_)
    throw Error(ErrorCode::Mismatch, "polynomials live in different free algebras");
}

NcPoly& NcPoly::operator+=(const NcPoly& q) {
  require_same_ambient(q);
  for (const auto& [w, c] : q.terms_) add_term(w, c);
  return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& q) {
  require_same_ambient(q);
  for (const auto& [w, c] : q.terms_) add_term(w, field_.neg(c));
  return *this;
}

NcPoly NcPoly::operator-() const {
  NcPoly r(field_, num_gens_);
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, field_.neg(c));
  return r;
}

NcPoly NcPoly::scaled(const Scalar& c) const {
  NcPoly r(field_, num_gens_);
  Scalar cn = field_.normalize(c);
  if (Field::is_zero(cn)) return r;
  for (const auto& [w, a] : terms_) r.terms_.emplace(w, field_.mul(cn, a));
  return r;
}

NcPoly NcPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_.inv(leading_coeff()));
}

NcPoly operator*(const NcPoly& p, const NcPoly& q) {
  p.require_same_ambient(q);
  NcPoly r(p.field_, p.num_gens_);
  for (const auto& [u, a] : p.terms_)
    for (const auto& [v, b] : q.terms_) r.add_term(concat(u, v), p.field_.mul(a, b));
  return r;
}

NcPoly nc_add(const NcPoly& p, const NcPoly& q) { return p + q; }
NcPoly nc_mul(const NcPoly& p, const NcPoly& q) { return p * q; }
NcPoly nc_scale(const Scalar& c, const NcPoly& p) { return p.scaled(c); }

NcPoly substitute(const NcPoly& p, std::span<const NcPoly> images) {
  if (images.size() != p.num_gens())
    throw Error(ErrorCode::Mismatch, "substitution needs one image per generator (got " +
                                         std::to_string(images.size()) + ", expected " +
                                         std::to_string(p.num_gens()) + ")");
  if (images.empty()) {
    NcPoly r(p.field(), 0);
    for (const auto& [w, c] : p.terms()) r.add_term(w, c);
    return r;
  }
  const NcPoly& first = images.front();
  for (const auto& im : images) first.require_same_ambient(im);
  if (!(first.field() == p.field()))
    throw Error(ErrorCode::Mismatch, "substitution target has a different field");

  NcPoly result(first.field(), first.num_gens());
  for (const auto& [w, c] : p.terms()) {
    NcPoly acc = NcPoly::constant(first.field(), first.num_gens(), c);
    for (Letter l : w) {
      acc = acc * images[l];
      if (acc.is_zero()) break;
    }
    result += acc;
  }
  return result;
}

NcPoly relabel(const NcPoly& p, std::span<const Letter> letter_map, std::size_t num_gens) {
  NcPoly r(p.field(), num_gens);
  for (const auto& [w, c] : p.terms()) {
    Word v;
    v.reserve(w.size());
    for (Letter l : w) v.push_back(letter_map[l]);
    r.add_term(v, c);
  }
  return r;
}

}  // namespace assocvar
