#include "assocvar/localrep.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

#include "assocvar/error.hpp"

namespace assocvar {

namespace {

// Above this many field elements in a span we test basis elements only.
constexpr double kEnumerateLimit = 1e5;

Matrix zero_matrix(const Field& k, std::size_t r) { return Matrix(k, r, r); }

bool is_identity(const Matrix& m) { return m == Matrix::identity(m.field(), m.rows()); }

double power(double base, std::size_t e) {
  double r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

Matrix combine(const Field& k, std::size_t r, const std::vector<Matrix>& basis, const Vector& c) {
  Matrix out = zero_matrix(k, r);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!Field::is_zero(c[i])) out = out + basis[i].scaled(c[i]);
  return out;
}

// Every linear combination of `basis` over F_p (including zero).
template <class F>
void for_each_combination(const Field& k, const std::vector<Matrix>& basis, std::size_t r, F&& f) {
  const std::uint32_t p = k.characteristic();
  Vector c(basis.size(), Scalar(0));
  while (true) {
    if (!f(combine(k, r, basis, c))) return;
    std::size_t i = 0;
    while (i < c.size()) {
      c[i] = c[i] + 1;
      if (c[i] == p) {
        c[i] = 0;
        ++i;
      } else {
        break;
      }
    }
    if (i == c.size()) return;
  }
}

std::vector<Matrix> intersect_spans(const Field& k, std::size_t r, const std::vector<Matrix>& a,
                                    const std::vector<Matrix>& b) {
  // Solve sum s_i a_i - sum t_j b_j = 0; the a-part of each solution spans the intersection.
  const std::size_t n = r * r;
  Matrix sys(k, n, a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t e = 0; e < n; ++e) sys(e, i) = a[i].flat()[e];
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t e = 0; e < n; ++e) sys(e, a.size() + j) = k.neg(b[j].flat()[e]);
  Matrix ns = null_space(sys);
  SpanBuilder span(k, n);
  std::vector<Matrix> out;
  for (std::size_t s = 0; s < ns.rows(); ++s) {
    Vector c = ns.row(s);
    c.resize(a.size());
    Matrix m = combine(k, r, a, c);
    if (span.insert(m.flat())) out.push_back(std::move(m));
  }
  return out;
}

// Incremental subring of End(k^r) with construction recipes.
class Closure {
 public:
  Closure(Field k, std::size_t r, std::vector<Matrix> gens)
      : k_(k), r_(r), gens_(std::move(gens)), span_(k, r * r) {}

  void start() {
    add(Matrix::identity(k_, r_), {BasisRecipe::Kind::Identity, 0, 0, {}});
    for (std::size_t g = 0; g < gens_.size(); ++g)
      add(gens_[g], {BasisRecipe::Kind::Generator, g, 0, {}});
    close();
  }

  bool add(const Matrix& m, BasisRecipe recipe) {
    if (!span_.insert(m.flat())) return false;
    basis_.push_back(m);
    recipes_.push_back(std::move(recipe));
    return true;
  }

  // Closes the span under products of basis elements.
  void close() {
    while (closed_ < basis_.size()) {
      const std::size_t i = closed_++;
      for (std::size_t j = 0; j <= i && j < basis_.size(); ++j) {
        add(basis_[i] * basis_[j], {BasisRecipe::Kind::Product, i, j, {}});
        if (i != j) add(basis_[j] * basis_[i], {BasisRecipe::Kind::Product, j, i, {}});
      }
    }
  }

  Vector coordinates(const Matrix& m) const {
    Matrix sys(k_, r_ * r_, basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t e = 0; e < r_ * r_; ++e) sys(e, i) = basis_[i].flat()[e];
    auto c = solve(sys, m.flat());
    if (!c) throw Error(ErrorCode::InvalidArgument, "element outside the closure span");
    return *c;
  }

  // Adjoins inverses of the candidates; returns true when the span grew.
  bool adjoin(const std::vector<Matrix>& candidates, std::vector<Matrix>& adjoined) {
    bool grew = false;
    for (const auto& c : candidates) {
      auto inv = inverse(c);
      if (!inv) throw Error(ErrorCode::NotInvertible, "unit test accepted a singular element");
      if (std::find(adjoined.begin(), adjoined.end(), c) == adjoined.end()) adjoined.push_back(c);
      if (add(*inv, {BasisRecipe::Kind::InverseOf, 0, 0, coordinates(c)})) grew = true;
    }
    if (grew) close();
    return grew;
  }

  const std::vector<Matrix>& basis() const { return basis_; }

  LocalRing finish(std::vector<Matrix> adjoined) {
    LocalRing ring;
    ring.field = k_;
    ring.matrix_dim = r_;
    ring.blocks = {r_};
    ring.basis = basis_;
    ring.adjoined_inverses = std::move(adjoined);
    ring.recipes = recipes_;
    return ring;
  }

 private:
  Field k_;
  std::size_t r_;
  std::vector<Matrix> gens_;
  SpanBuilder span_;
  std::vector<Matrix> basis_;
  std::vector<BasisRecipe> recipes_;
  std::size_t closed_ = 0;
};

// Elements of span(basis) accepted by `accept`: all of them over a small
// prime field, otherwise the basis elements and their sum.
std::vector<Matrix> candidates_in(const Field& k, std::size_t r, const std::vector<Matrix>& basis,
                                  const std::function<bool(const Matrix&)>& accept) {
  std::vector<Matrix> out;
  if (k.is_prime() && power(k.characteristic(), basis.size()) <= kEnumerateLimit) {
    for_each_combination(k, basis, r, [&](const Matrix& m) {
      if (!m.is_zero() && accept(m)) out.push_back(m);
      return true;
    });
    return out;
  }
  std::vector<Matrix> trial = basis;
  if (basis.size() > 1) {
    Matrix sum = zero_matrix(k, r);
    for (const auto& b : basis) sum = sum + b;
    trial.push_back(sum);
  }
  for (auto& m : trial)
    if (!m.is_zero() && accept(m)) out.push_back(std::move(m));
  return out;
}

LocalRing run_closure(const MatrixModule& m,
                      const std::function<std::vector<Matrix>(const std::vector<Matrix>&)>& cands) {
  Closure cl(m.field(), m.dim(), m.action());
  cl.start();
  std::vector<Matrix> adjoined;
  while (cl.adjoin(cands(cl.basis()), adjoined)) {
  }
  return cl.finish(std::move(adjoined));
}

Matrix block_diagonal(const Field& k, const std::vector<std::size_t>& sizes,
                      const std::vector<const Matrix*>& blocks) {
  std::size_t total = 0;
  for (auto s : sizes) total += s;
  Matrix out(k, total, total);
  std::size_t off = 0;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    if (blocks[b])
      for (std::size_t i = 0; i < sizes[b]; ++i)
        for (std::size_t j = 0; j < sizes[b]; ++j) out(off + i, off + j) = (*blocks[b])(i, j);
    off += sizes[b];
  }
  return out;
}

}  // namespace

MatrixModule::MatrixModule(FpAlgebra algebra, std::vector<Matrix> action)
    : algebra_(std::move(algebra)), action_(std::move(action)) {
  if (action_.size() != algebra_.num_gens())
    throw Error(ErrorCode::Mismatch, "module needs one matrix per generator");
  if (action_.empty()) {
    dim_ = 1;
    return;
  }
  dim_ = action_[0].rows();
  if (dim_ == 0) throw Error(ErrorCode::Mismatch, "module dimension must be positive");
  for (const auto& a : action_) {
    if (!a.is_square() || a.rows() != dim_)
      throw Error(ErrorCode::Mismatch, "action matrices must be square of equal size");
    if (!(a.field() == algebra_.field()))
      throw Error(ErrorCode::Mismatch, "action matrix over the wrong field");
  }
}

Matrix MatrixModule::act(const NcPoly& f) const {
  if (f.num_gens() != algebra_.num_gens())
    throw Error(ErrorCode::Mismatch, "polynomial is not over the module's algebra");
  const Field& k = field();
  Matrix out = zero_matrix(k, dim_);
  for (const auto& [w, c] : f.terms()) {
    Matrix term = Matrix::identity(k, dim_);
    for (Letter l : w) term = term * action_[l];
    out = out + term.scaled(c);
  }
  return out;
}

Matrix parse_matrix(const std::string& text, const Field& field, std::size_t dim) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto fail = [&](const std::string& why) -> Matrix {
    throw Error(ErrorCode::Syntax, "bad matrix literal: " + why, text);
  };
  if (s.size() < 4 || s.front() != '[' || s.back() != ']') return fail("expected [[...],...]");
  std::vector<Vector> rows;
  std::size_t i = 1;
  while (i < s.size() - 1) {
    if (s[i] != '[') return fail("expected '['");
    std::size_t close = s.find(']', i);
    if (close == std::string::npos) return fail("unclosed row");
    std::string body = s.substr(i + 1, close - i - 1);
    Vector row;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = body.find(',', start);
      std::string item = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      Scalar v;
      if (!parse_scalar(item, v)) return fail("bad entry '" + item + "'");
      row.push_back(field.normalize(v));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
    i = close + 1;
    if (i < s.size() - 1) {
      if (s[i] != ',') return fail("expected ',' between rows");
      ++i;
    }
  }
  if (rows.size() != dim) return fail("expected " + std::to_string(dim) + " rows");
  for (const auto& r : rows)
    if (r.size() != dim) return fail("expected " + std::to_string(dim) + " entries per row");
  return Matrix::from_rows(field, rows, dim);
}

std::vector<MatrixModule> modules_from_file(const FpAlgebra& algebra,
                                            const std::vector<ModuleBlock>& blocks) {
  std::vector<MatrixModule> out;
  for (const auto& b : blocks) {
    std::vector<std::optional<Matrix>> action(algebra.num_gens());
    for (const auto& [name, text] : b.assignments) {
      const int idx = algebra.pres().index_of(name);
      if (idx < 0)
        throw Error(ErrorCode::UnknownGenerator,
                    "line " + std::to_string(b.line) + ": module assigns unknown generator", name);
      action[static_cast<std::size_t>(idx)] =
          parse_matrix(text, algebra.field(), static_cast<std::size_t>(b.dim));
    }
    std::vector<Matrix> mats;
    for (std::size_t g = 0; g < action.size(); ++g) {
      if (!action[g])
        throw Error(ErrorCode::InvalidArgument,
                    "line " + std::to_string(b.line) + ": module leaves a generator unassigned",
                    algebra.gens()[g]);
      mats.push_back(*action[g]);
    }
    out.emplace_back(algebra, std::move(mats));
  }
  return out;
}

ModuleCheck check_module(const MatrixModule& m) {
  ModuleCheck res;
  for (const auto& r : m.algebra().pres().rels) {
    if (!m.act(r).is_zero()) {
      res.valid = false;
      res.witness = r;
      return res;
    }
  }
  return res;
}

bool is_simple(const MatrixModule& m) {
  const Field& k = m.field();
  const std::size_t r = m.dim();
  if (!k.is_prime()) throw Error(ErrorCode::InvalidArgument, "simplicity test needs a prime field");
  if (r > 6 || power(k.characteristic(), r) > 1e7)
    throw Error(ErrorCode::Guard, "simplicity search too large");
  const std::uint32_t p = k.characteristic();
  // Vectors with leading nonzero entry 1: one per line through the origin.
  for (std::size_t lead = 0; lead < r; ++lead) {
    const std::size_t tail = r - lead - 1;
    Vector v(r, Scalar(0));
    v[lead] = 1;
    while (true) {
      SpanBuilder span(k, r);
      std::vector<Vector> queue{v};
      span.insert(v);
      for (std::size_t q = 0; q < queue.size() && span.dimension() < r; ++q)
        for (const auto& a : m.action()) {
          Vector w = row_times(queue[q], a);
          if (span.insert(w)) queue.push_back(std::move(w));
        }
      if (span.dimension() < r) return false;
      std::size_t i = 0;
      while (i < tail) {
        Scalar& c = v[lead + 1 + i];
        c = c + 1;
        if (c == p) {
          c = 0;
          ++i;
        } else {
          break;
        }
      }
      if (i == tail) break;
    }
  }
  return true;
}

std::vector<Matrix> commutant(const MatrixModule& m) {
  const Field& k = m.field();
  const std::size_t r = m.dim();
  // Unknown X(i,l) sits at column i*r + l; row (g,i,j) encodes (X A_g - A_g X)(i,j).
  Matrix sys(k, std::max<std::size_t>(1, m.action().size() * r * r), r * r);
  std::size_t row = 0;
  for (const auto& a : m.action())
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j, ++row)
        for (std::size_t l = 0; l < r; ++l) {
          sys(row, i * r + l) = k.add(sys(row, i * r + l), a(l, j));
          sys(row, l * r + j) = k.sub(sys(row, l * r + j), a(i, l));
        }
  Matrix ns = null_space(sys);
  std::vector<Matrix> out;
  for (std::size_t s = 0; s < ns.rows(); ++s) out.push_back(Matrix::from_flat(k, r, r, ns.row(s)));
  return out;
}

bool LocalRing::contains(const Matrix& x) const { return coordinates(x).has_value(); }

std::optional<Vector> LocalRing::coordinates(const Matrix& x) const {
  if (x.rows() != matrix_dim || x.cols() != matrix_dim) return std::nullopt;
  Matrix sys(field, matrix_dim * matrix_dim, basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t e = 0; e < matrix_dim * matrix_dim; ++e) sys(e, i) = basis[i].flat()[e];
  return solve(sys, x.flat());
}

LocalRing local_ring(const MatrixModule& m) {
  const Field& k = m.field();
  const std::size_t r = m.dim();
  const std::vector<Matrix> d = commutant(m);
  return run_closure(m, [&](const std::vector<Matrix>& span) {
    return candidates_in(k, r, intersect_spans(k, r, span, d),
                         [](const Matrix& x) { return inverse(x).has_value(); });
  });
}

bool are_isomorphic(const MatrixModule& m, const MatrixModule& n) {
  if (!(m.algebra() == n.algebra())) return false;
  if (m.dim() != n.dim()) return false;
  const Field& k = m.field();
  const std::size_t r = m.dim();
  // Intertwiners T with A_g T = T B_g; unknown T(i,l) at column i*r + l.
  Matrix sys(k, std::max<std::size_t>(1, m.action().size() * r * r), r * r);
  std::size_t row = 0;
  for (std::size_t g = 0; g < m.action().size(); ++g) {
    const Matrix& a = m.action()[g];
    const Matrix& b = n.action()[g];
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j, ++row)
        for (std::size_t l = 0; l < r; ++l) {
          sys(row, l * r + j) = k.add(sys(row, l * r + j), a(i, l));
          sys(row, i * r + l) = k.sub(sys(row, i * r + l), b(l, j));
        }
  }
  Matrix ns = null_space(sys);
  std::vector<Matrix> basis;
  for (std::size_t s = 0; s < ns.rows(); ++s) basis.push_back(Matrix::from_flat(k, r, r, ns.row(s)));
  if (basis.empty()) return false;
  bool found = false;
  if (k.is_prime() && power(k.characteristic(), basis.size()) <= 1e6) {
    for_each_combination(k, basis, r, [&](const Matrix& t) {
      found = !Field::is_zero(determinant(t));
      return !found;
    });
    return found;
  }
  return !candidates_in(k, r, basis, [](const Matrix& t) {
            return !Field::is_zero(determinant(t));
          }).empty();
}

LocalRing product_local_rings(const std::vector<MatrixModule>& modules) {
  if (modules.empty()) throw Error(ErrorCode::InvalidArgument, "no modules given");
  for (std::size_t i = 0; i < modules.size(); ++i)
    for (std::size_t j = i + 1; j < modules.size(); ++j) {
      if (!(modules[i].algebra() == modules[j].algebra()))
        throw Error(ErrorCode::Mismatch, "modules over different algebras");
      if (are_isomorphic(modules[i], modules[j]))
        throw Error(ErrorCode::Isomorphic, "modules " + std::to_string(i) + " and " +
                                               std::to_string(j) + " are isomorphic");
    }
  if (modules.size() == 1) return local_ring(modules[0]);
  const Field& k = modules[0].field();
  LocalRing out;
  out.field = k;
  for (const auto& m : modules) {
    out.blocks.push_back(m.dim());
    out.matrix_dim += m.dim();
  }
  for (std::size_t b = 0; b < modules.size(); ++b) {
    LocalRing part = local_ring(modules[b]);
    std::vector<const Matrix*> slots(modules.size(), nullptr);
    for (const auto& x : part.basis) {
      slots[b] = &x;
      out.basis.push_back(block_diagonal(k, out.blocks, slots));
    }
    for (const auto& x : part.adjoined_inverses) {
      slots[b] = &x;
      out.adjoined_inverses.push_back(block_diagonal(k, out.blocks, slots));
    }
  }
  return out;
}

LocalRing localize_along(const MatrixModule& f, const UnitTest& unit_test) {
  const Field& k = f.field();
  const std::size_t r = f.dim();
  return run_closure(f, [&](const std::vector<Matrix>& span) {
    return candidates_in(k, r, span, unit_test);
  });
}

UniversalWitness universal_factorization(const LocalRing& ring, const MatrixModule& f,
                                         const MatrixModule& h) {
  UniversalWitness w;
  if (ring.recipes.size() != ring.basis.size()) {
    w.failure = "ring carries no construction recipes";
    return w;
  }
  if (!(f.algebra() == h.algebra())) {
    w.failure = "f and h are over different algebras";
    return w;
  }
  const Field& k = ring.field;
  const std::size_t rc = h.dim();
  std::vector<Matrix> psi;
  for (const auto& rec : ring.recipes) {
    switch (rec.kind) {
      case BasisRecipe::Kind::Identity:
        psi.push_back(Matrix::identity(k, rc));
        break;
      case BasisRecipe::Kind::Generator:
        psi.push_back(h.action()[rec.left]);
        break;
      case BasisRecipe::Kind::Product:
        psi.push_back(psi[rec.left] * psi[rec.right]);
        break;
      case BasisRecipe::Kind::InverseOf: {
        Matrix pre = Matrix(k, rc, rc);
        for (std::size_t i = 0; i < rec.combination.size(); ++i)
          pre = pre + psi[i].scaled(rec.combination[i]);
        auto inv = inverse(pre);
        if (!inv) {
          w.failure = "image of an adjoined unit is not invertible in C";
          return w;
        }
        psi.push_back(std::move(*inv));
        break;
      }
    }
  }
  auto psi_of = [&](const Matrix& x) -> std::optional<Matrix> {
    auto c = ring.coordinates(x);
    if (!c) return std::nullopt;
    Matrix out(k, rc, rc);
    for (std::size_t i = 0; i < c->size(); ++i) out = out + psi[i].scaled((*c)[i]);
    return out;
  };
  w.basis_images = psi;
  auto one = psi_of(Matrix::identity(k, ring.matrix_dim));
  if (!one || !is_identity(*one)) {
    w.failure = "psi is not unital";
    return w;
  }
  for (std::size_t g = 0; g < f.action().size(); ++g) {
    auto img = psi_of(f.action()[g]);
    if (!img || !(*img == h.action()[g])) {
      w.failure = "psi o g differs from h on generator " + f.algebra().gens()[g];
      return w;
    }
  }
  for (std::size_t i = 0; i < ring.basis.size(); ++i)
    for (std::size_t j = 0; j < ring.basis.size(); ++j) {
      auto img = psi_of(ring.basis[i] * ring.basis[j]);
      if (!img || !(*img == psi[i] * psi[j])) {
        w.failure = "psi is not multiplicative on basis pair (" + std::to_string(i) + ", " +
                    std::to_string(j) + ")";
        return w;
      }
    }
  w.verified = true;
  return w;
}

}  // namespace assocvar
