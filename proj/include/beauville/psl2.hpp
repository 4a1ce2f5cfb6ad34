#pragma once

#include <optional>
#include <string>
#include <vector>

#include "beauville/field.hpp"
#include "beauville/group.hpp"

namespace beauville {

enum class SplitType { identity, split, nonsplit, unipotent };

std::string to_string(SplitType t);

/// Traces (alpha, beta, gamma) of SL2 lifts A, B and C with ABC = I.
struct TraceTriple {
  FieldElement alpha, beta, gamma;
  auto operator<=>(const TraceTriple&) const = default;
};

/// Dickson class of a two-generated subgroup of PSL2(q).
///
/// Overlapping isomorphism types are labelled by the first matching entry of:
/// full group, structural (Borel or cyclic), dihedral (Klein four included),
/// A4, S4, A5, subfield subgroup PSL2(p^d) or PGL2(p^d).
struct SubgroupClass {
  enum class Kind { structural, dihedral, a4, s4, a5, subfield, full };
  enum class Projective { psl, pgl };

  Kind kind = Kind::full;
  unsigned subfield_degree = 0;          // d with q0 = p^d, subfield only
  Projective projective = Projective::psl;  // subfield only

  std::string to_string() const;
  bool operator==(const SubgroupClass&) const = default;
};

struct MacbeathSolution {
  Mat2 a, b, c;
};

/// PSL2(q) for q = p^e >= 4, acting through canonical SL2 representatives.
///
/// The canonical lift of {A, -A} is the one whose first nonzero entry, in the
/// scan order a, b, c, d, has the smaller field code of {v, -v}.
class Psl2Group final : public GroupImpl {
 public:
  explicit Psl2Group(Field field);

  const Field& field() const { return field_; }
  u64 q() const { return field_.order(); }
  u64 p() const { return field_.p(); }
  /// gcd(2, q - 1).
  u64 d() const { return d_; }
  u64 split_order() const { return (q() - 1) / d_; }
  u64 nonsplit_order() const { return (q() + 1) / d_; }

  // SL2 level.
  Mat2 sl_identity() const;
  Mat2 sl_mul(const Mat2& x, const Mat2& y) const;
  Mat2 sl_inverse(const Mat2& x) const;
  Mat2 sl_pow(Mat2 x, u64 k) const;
  Mat2 sl_negate(const Mat2& x) const;
  FieldElement trace(const Mat2& x) const;
  FieldElement det(const Mat2& x) const;
  bool is_scalar(const Mat2& x) const;
  /// [[0, -1], [1, alpha]], trace alpha.
  Mat2 companion(FieldElement alpha) const;

  // PSL2 level.
  ProjElement project(const Mat2& x) const;
  ProjElement mul(const ProjElement& x, const ProjElement& y) const;
  ProjElement inv(const ProjElement& x) const;
  ProjElement pow(const ProjElement& x, u64 k) const;
  u64 order_of(const ProjElement& x) const;
  SplitType split_type(const ProjElement& x) const;
  Fingerprint class_fingerprint(const ProjElement& x) const;

  TraceTriple trace_triple(const ProjElement& x, const ProjElement& y) const;
  /// alpha^2 + beta^2 + gamma^2 - alpha*beta*gamma - 4 = 0.
  bool is_singular(const TraceTriple& t) const;
  /// Matrices with the given traces and product I. Deterministic.
  MacbeathSolution macbeath_solve(const TraceTriple& t) const;
  SubgroupClass classify_subgroup(const ProjElement& x, const ProjElement& y) const;

  /// Orders of PSL2 images of SL2 elements with trace alpha.
  std::vector<u64> order_from_trace(FieldElement alpha) const;
  /// Traces whose non-scalar lifts have projective order exactly k (k >= 2).
  std::vector<FieldElement> traces_of_order(u64 k) const;
  bool order_is_realizable(u64 k) const;
  /// Throws InvalidArgument with the divisor analysis when k is impossible.
  ProjElement find_element_of_order(u64 k) const;
  ProjElement random_uniform(Rng& rng) const;

  std::string format_matrix(const Mat2& m) const;
  Mat2 parse_matrix(std::string_view text) const;

  GroupKind kind() const override { return GroupKind::psl2; }
  std::string descriptor() const override { return "psl2:" + field_.spec().to_string(); }
  u64 order() const override;
  Element identity() const override { return project(sl_identity()); }
  Element multiply(const Element& a, const Element& b) const override;
  Element inverse(const Element& a) const override;
  Element power(const Element& a, u64 k) const override;
  u64 element_order(const Element& a) const override;
  bool generates(const Element& x, const Element& y) const override;
  std::string describe_generated(const Element& x, const Element& y) const override;
  Fingerprint fingerprint(const Element& a) const override;
  std::string describe_class(const Fingerprint& f) const override;
  void for_each_element(const std::function<void(const Element&)>& visit) const override;
  Element random_element(Rng& rng) const override { return random_uniform(rng); }
  std::string format(const Element& a) const override;
  Element parse_element(std::string_view text) const override;
  void check_member(const Element& a) const override;

 private:
  const ProjElement& get(const Element& a) const;
  bool is_split_trace(FieldElement t) const;
  std::optional<MacbeathSolution> sweep_companion(FieldElement alpha, FieldElement beta, FieldElement gamma) const;
  /// Size of <x, y> when it has at most `limit` elements.
  std::optional<u64> bounded_closure(const ProjElement& x, const ProjElement& y, u64 limit) const;

  Field field_;
  u64 d_;
  FieldElement two_, minus_two_;
  std::vector<u64> split_primes_, nonsplit_primes_;
};

}  // namespace beauville
