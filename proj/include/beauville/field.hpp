#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "beauville/numtheory.hpp"

namespace beauville {

/// Characteristic, degree and defining polynomial of GF(p^e).
///
/// `modulus` holds the e+1 coefficients of a monic irreducible polynomial,
/// lowest degree first.
struct FieldSpec {
  u64 p = 0;
  unsigned e = 0;
  std::vector<u64> modulus;

  u64 order() const;
  /// `p` for prime fields, `p^e` otherwise.
  std::string to_string() const;
  /// Parses `p` or `p^e` and selects the canonical modulus.
  static FieldSpec parse(std::string_view text);

  bool operator==(const FieldSpec&) const = default;
};

/// An element of GF(p^e), stored as its coefficient vector packed in base p:
/// code = c0 + c1*p + ... + c(e-1)*p^(e-1). Always fully reduced.
struct FieldElement {
  u64 code = 0;
  auto operator<=>(const FieldElement&) const = default;
};

/// Monic degree-e irreducible over F_p, lowest coefficient first. Among all
/// candidates it is the one whose coefficients, read from x^(e-1) down to
/// x^0, form the smallest base-p number.
std::vector<u64> find_irreducible(u64 p, unsigned e);

/// Rabin's irreducibility test for a monic polynomial over F_p.
bool is_irreducible(u64 p, std::span<const u64> monic);

/// Exact arithmetic in GF(p^e). Immutable after construction and cheap to
/// copy; lookup tables are shared between copies.
class Field {
 public:
  explicit Field(FieldSpec spec);
  static Field make(u64 p, unsigned e);
  static Field parse(std::string_view text) { return Field(FieldSpec::parse(text)); }

  const FieldSpec& spec() const { return spec_; }
  u64 p() const { return spec_.p; }
  unsigned e() const { return spec_.e; }
  u64 order() const { return q_; }
  bool is_prime_field() const { return spec_.e == 1; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  /// Image of an integer under Z -> F_p -> GF(q).
  FieldElement from_int(std::int64_t v) const;
  FieldElement from_coeffs(std::span<const u64> coeffs) const;
  std::vector<u64> coeffs(FieldElement a) const;
  bool contains(FieldElement a) const { return a.code < q_; }

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  /// Throws DivisionByZero for a = 0.
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
  FieldElement pow(FieldElement a, u64 k) const;

  bool is_square(FieldElement a) const;
  /// Some square root of a, when one exists.
  bool sqrt(FieldElement a, FieldElement& root) const;
  /// All roots in GF(q) of a*x^2 + b*x + c, ascending by code. Requires a != 0.
  std::vector<FieldElement> solve_quadratic(FieldElement a, FieldElement b, FieldElement c) const;
  /// Smallest d dividing e with a in GF(p^d).
  unsigned subfield_degree(FieldElement a) const;
  /// a^p.
  FieldElement frobenius(FieldElement a) const { return pow(a, spec_.p); }
  /// Trace from GF(q) down to F_p, as an integer in [0, p).
  u64 absolute_trace(FieldElement a) const;
  /// A generator of the multiplicative group.
  FieldElement primitive_element() const { return primitive_; }

  /// `c0+c1*t+...+c(e-1)*t^(e-1)`, or a bare residue for prime fields.
  std::string format(FieldElement a) const;
  FieldElement parse_element(std::string_view text) const;

 private:
  struct Tables;

  FieldElement poly_mul(FieldElement a, FieldElement b) const;
  FieldElement pow_slow(FieldElement a, u64 k) const;
  FieldElement find_primitive() const;

  FieldSpec spec_;
  u64 q_ = 0;
  std::vector<u64> digit_weight_;  // p^i
  std::shared_ptr<const Tables> tables_;
  FieldElement primitive_{};
  FieldElement nonsquare_{};       // odd q only
  FieldElement trace_one_{};       // p = 2 only: element of absolute trace 1
};

/// An element of the residue ring Z/nZ.
struct Residue {
  u64 n = 1;
  u64 value = 0;

  static Residue make(u64 n, std::int64_t v);
  Residue operator+(Residue o) const;
  Residue operator-(Residue o) const;
  Residue operator-() const;
  Residue operator*(Residue o) const;
  /// Throws DivisionByZero unless gcd(value, n) = 1.
  Residue inverse() const;
  /// Additive order of the residue.
  u64 additive_order() const { return n / gcd(value, n); }

  auto operator<=>(const Residue&) const = default;
};

}  // namespace beauville
