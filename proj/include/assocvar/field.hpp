#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace assocvar {

/// Field elements. Over F_p the value is an integer in [0, p); over Q and R
/// it is an exact reduced fraction.
using Scalar = mpq_class;

enum class FieldKind { Rational, Prime, Real };

/// The coefficient field k. Real is accepted for presentations that feed
/// the geodesic module; all symbolic arithmetic over R stays exact.
class Field {
 public:
  Field() = default;

  static Field rational() { return Field(FieldKind::Rational, 0); }
  static Field real() { return Field(FieldKind::Real, 0); }
  /// Throws NonPrimeModulus unless p is a prime below 2^31.
  static Field prime(std::uint64_t p);

  FieldKind kind() const { return kind_; }
  bool is_prime() const { return kind_ == FieldKind::Prime; }
  bool is_ordered() const { return kind_ != FieldKind::Prime; }
  std::uint32_t characteristic() const { return p_; }

  /// "Q", "R" or "F<p>", as written in presentation files.
  std::string name() const;

  Scalar from_int(long v) const { return normalize(Scalar(v)); }
  Scalar normalize(const Scalar& v) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  /// Throws NotInvertible on zero.
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
  Scalar pow(const Scalar& a, unsigned e) const;

  static bool is_zero(const Scalar& a) { return sgn(a) == 0; }
  static bool is_one(const Scalar& a) { return a == 1; }

  /// Residue as a machine word; only meaningful over F_p.
  std::uint32_t residue(const Scalar& a) const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

 private:
  Field(FieldKind kind, std::uint32_t p) : kind_(kind), p_(p) {}

  FieldKind kind_ = FieldKind::Rational;
  std::uint32_t p_ = 0;
};

bool is_prime_u64(std::uint64_t n);

/// Decimal or fraction rendering: "3", "-3/5".
std::string to_string(const Scalar& v);

/// Parses "3", "-3/5", "0.25", "1e-3" exactly. Returns false on bad input.
bool parse_scalar(const std::string& text, Scalar& out);

}  // namespace assocvar
