#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "assocvar/algebra.hpp"
#include "assocvar/linalg.hpp"

namespace assocvar {

/// Right A-module k^r: generator i acts by action[i] on row vectors, v -> v * X_i.
/// A word x_{i1}...x_{il} therefore acts by the product X_{i1} ... X_{il}.
class MatrixModule {
 public:
  MatrixModule(FpAlgebra algebra, std::vector<Matrix> action);

  const FpAlgebra& algebra() const { return algebra_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Matrix>& action() const { return action_; }
  const Field& field() const { return algebra_.field(); }

  /// eta(f): the matrix by which f acts.
  Matrix act(const NcPoly& f) const;

 private:
  FpAlgebra algebra_;
  std::size_t dim_ = 0;
  std::vector<Matrix> action_;
};

/// Parses `[[a,b],[c,d]]` into an r x r matrix over the field.
Matrix parse_matrix(const std::string& text, const Field& field, std::size_t dim);

/// Builds the modules declared in `module r=..` blocks of a presentation file.
std::vector<MatrixModule> modules_from_file(const FpAlgebra& algebra,
                                            const std::vector<ModuleBlock>& blocks);

struct ModuleCheck {
  bool valid = true;
  std::optional<NcPoly> witness;
};

ModuleCheck check_module(const MatrixModule& m);

/// Decided by spinning every nonzero vector (up to scalars) under the
/// generators. Needs F_p, r <= 6 and p^r <= 10^7.
bool is_simple(const MatrixModule& m);

/// Basis of End_A(M): matrices commuting with every generator matrix.
std::vector<Matrix> commutant(const MatrixModule& m);

/// How a basis element of a local ring was produced, so that maps out of
/// the ring can be evaluated on it.
struct BasisRecipe {
  enum class Kind { Identity, Generator, Product, InverseOf } kind = Kind::Identity;
  std::size_t left = 0;   // Generator: generator index; Product: left factor
  std::size_t right = 0;  // Product: right factor (earlier basis indices)
  Vector combination;     // InverseOf: coordinates over earlier basis entries
};

/// Subring of End(k^r) generated by the image of A and adjoined inverses.
struct LocalRing {
  Field field;
  std::size_t matrix_dim = 0;
  /// Block sizes of the block-diagonal embedding (one block per module).
  std::vector<std::size_t> blocks;
  std::vector<Matrix> basis;
  /// Elements whose inverses were adjoined during the closure.
  std::vector<Matrix> adjoined_inverses;
  /// Recipes parallel to `basis` (empty for assembled products).
  std::vector<BasisRecipe> recipes;

  std::size_t dimension() const { return basis.size(); }
  bool contains(const Matrix& x) const;
  /// Coordinates of x over `basis`, if x lies in the ring.
  std::optional<Vector> coordinates(const Matrix& x) const;
};

/// A_M: the image of A with inverses of its nonzero commutant elements.
LocalRing local_ring(const MatrixModule& m);

/// Block-diagonal product of the local rings of pairwise non-isomorphic
/// modules. Throws Isomorphic on a repeated module.
LocalRing product_local_rings(const std::vector<MatrixModule>& modules);

/// Existence of an invertible intertwiner M -> N.
bool are_isomorphic(const MatrixModule& m, const MatrixModule& n);

using UnitTest = std::function<bool(const Matrix&)>;

/// Subring of B = End(k^r) generated by the image of f and the inverses of
/// images passing `unit_test`. Throws NotInvertible if the test accepts a
/// singular element.
LocalRing localize_along(const MatrixModule& f, const UnitTest& unit_test);

/// The map psi: A_S -> C extending h, evaluated on the basis of A_S.
struct UniversalWitness {
  bool verified = false;
  std::vector<Matrix> basis_images;
  std::string failure;
};

/// Builds psi with psi o g = h and checks it is a well-defined unital ring
/// map on the span (multiplicative on basis pairs, matching h on generators).
UniversalWitness universal_factorization(const LocalRing& ring, const MatrixModule& f,
                                         const MatrixModule& h);

}  // namespace assocvar
