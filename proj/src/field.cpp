#include "assocvar/field.hpp"

#include <cctype>

#include "assocvar/error.hpp"

namespace assocvar {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::UnknownGenerator: return "unknown_generator";
    case ErrorCode::DuplicateGenerator: return "duplicate_generator";
    case ErrorCode::NonPrimeModulus: return "non_prime_modulus";
    case ErrorCode::Mismatch: return "mismatch";
    case ErrorCode::Truncation: return "truncation";
    case ErrorCode::Guard: return "guard";
    case ErrorCode::InvalidHom: return "invalid_hom";
    case ErrorCode::NameClash: return "name_clash";
    case ErrorCode::EmptySet: return "empty_set";
    case ErrorCode::NonHomogeneous: return "non_homogeneous";
    case ErrorCode::Isomorphic: return "isomorphic";
    case ErrorCode::NotInvertible: return "not_invertible";
    case ErrorCode::RankDeficient: return "rank_deficient";
    case ErrorCode::NoConvergence: return "no_convergence";
    case ErrorCode::InvalidArgument: return "invalid_argument";
  }
  return "unknown";
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31) || !is_prime_u64(p))
    throw Error(ErrorCode::NonPrimeModulus,
                "modulus " + std::to_string(p) + " is not a prime below 2^31");
  return Field(FieldKind::Prime, static_cast<std::uint32_t>(p));
}

std::string Field::name() const {
  switch (kind_) {
    case FieldKind::Rational: return "Q";
    case FieldKind::Real: return "R";
    case FieldKind::Prime: return "F" + std::to_string(p_);
  }
  return "?";
}

Scalar Field::normalize(const Scalar& v) const {
  if (kind_ != FieldKind::Prime) {
    Scalar r = v;
    r.canonicalize();
    return r;
  }
  mpz_class mod(p_);
  mpz_class num = v.get_num() % mod;
  mpz_class den = v.get_den() % mod;
  if (den == 0)
    throw Error(ErrorCode::NotInvertible,
                "denominator vanishes modulo " + std::to_string(p_));
  if (num < 0) num += mod;
  if (den != 1) {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    num = (num * inv) % mod;
  }
  return Scalar(num);
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (kind_ != FieldKind::Prime) return a + b;
  std::uint64_t s = std::uint64_t(residue(a)) + residue(b);
  if (s >= p_) s -= p_;
  return Scalar(static_cast<unsigned long>(s));
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (kind_ != FieldKind::Prime) return a - b;
  std::uint64_t s = std::uint64_t(residue(a)) + p_ - residue(b);
  if (s >= p_) s -= p_;
  return Scalar(static_cast<unsigned long>(s));
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (kind_ != FieldKind::Prime) return a * b;
  std::uint64_t s = std::uint64_t(residue(a)) * residue(b) % p_;
  return Scalar(static_cast<unsigned long>(s));
}

Scalar Field::neg(const Scalar& a) const {
  if (kind_ != FieldKind::Prime) return -a;
  std::uint32_t r = residue(a);
  return Scalar(static_cast<unsigned long>(r == 0 ? 0 : p_ - r));
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) throw Error(ErrorCode::NotInvertible, "division by zero");
  if (kind_ != FieldKind::Prime) return 1 / a;
  // Fermat: a^(p-2).
  std::uint64_t base = residue(a), acc = 1, e = p_ - 2;
  while (e) {
    if (e & 1) acc = acc * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return Scalar(static_cast<unsigned long>(acc));
}

Scalar Field::pow(const Scalar& a, unsigned e) const {
  Scalar acc = from_int(1), base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

std::uint32_t Field::residue(const Scalar& a) const {
  return static_cast<std::uint32_t>(a.get_num().get_ui());
}

std::string to_string(const Scalar& v) { return v.get_str(); }

bool parse_scalar(const std::string& text, Scalar& out) {
  if (text.empty()) return false;
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits, frac, den, expo;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
  if (i < text.size() && text[i] == '/') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) den += text[i++];
    if (digits.empty() || den.empty() || i != text.size()) return false;
    mpz_class d(den, 10);
    if (d == 0) return false;
    out = Scalar(mpz_class(digits, 10), d);
    out.canonicalize();
    if (negative) out = -out;
    return true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) frac += text[i++];
  }
  if (digits.empty() && frac.empty()) return false;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) expo += text[i++];
    std::size_t start = expo.size();
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) expo += text[i++];
    if (expo.size() == start) return false;
  }
  if (i != text.size()) return false;
  mpz_class num(digits.empty() ? std::string("0") : digits + frac, 10);
  if (digits.empty()) num = mpz_class(frac, 10);
  long shift = -static_cast<long>(frac.size());
  if (!expo.empty()) shift += std::stol(expo);
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  out = shift < 0 ? Scalar(num, ten_pow) : Scalar(num * ten_pow);
  out.canonicalize();
  if (negative) out = -out;
  return true;
}

}  // namespace assocvar
