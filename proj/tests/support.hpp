#pragma once

#include <random>
#include <string>

#include "assocvar/algebra.hpp"
#include "assocvar/points.hpp"

namespace testing_support {

using namespace assocvar;

inline std::string data_path(const std::string& name) { return std::string(ASSOCVAR_DATA_DIR) + "/" + name; }

inline Scalar random_scalar(std::mt19937_64& rng, const Field& k) {
  if (k.is_prime()) return Scalar(static_cast<long>(rng() % k.characteristic()));
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  Scalar v(num(rng), den(rng));
  v.canonicalize();
  return v;
}

inline Word random_word(std::mt19937_64& rng, std::size_t n, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  Word w(static_cast<std::size_t>(len(rng)));
  for (auto& l : w) l = static_cast<Letter>(rng() % n);
  return w;
}

inline NcPoly random_poly(std::mt19937_64& rng, const Field& k, std::size_t n, int max_deg,
                          int max_terms = 4) {
  NcPoly p(k, n);
  const int terms = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_terms));
  for (int t = 0; t < terms; ++t) p.add_term(random_word(rng, n, max_deg), k.normalize(random_scalar(rng, k)));
  return p;
}

/// Commutative presentation on n generators: all commutators plus `nrels`
/// random relations of degree <= max_deg.
inline Presentation random_abelian_presentation(std::mt19937_64& rng, const Field& k, std::size_t n,
                                                int nrels, int max_deg, int bound) {
  Presentation p;
  p.field = k;
  for (std::size_t i = 0; i < n; ++i) p.gens.push_back(std::string(1, static_cast<char>('a' + i)));
  p.bound = bound;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) p.rels.push_back(p.gen(i) * p.gen(j) - p.gen(j) * p.gen(i));
  for (int r = 0; r < nrels; ++r) {
    NcPoly f = random_poly(rng, k, n, max_deg, 3);
    if (!f.is_zero()) p.rels.push_back(f);
  }
  return p;
}

}  // namespace testing_support
