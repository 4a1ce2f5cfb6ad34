#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "beauville/field.hpp"
#include "beauville/permutation.hpp"

namespace beauville {

/// SL2 matrix [[a, b], [c, d]] over a finite field.
struct Mat2 {
  FieldElement a, b, c, d;
  auto operator<=>(const Mat2&) const = default;
};

/// An element of PSL2(q): the canonical member of the pair {A, -A}.
struct ProjElement {
  Mat2 m;
  auto operator<=>(const ProjElement&) const = default;
};

/// An element of Z_n x Z_n.
struct AbelianPair {
  Residue x, y;
  auto operator<=>(const AbelianPair&) const = default;
};

using Element = std::variant<ProjElement, Permutation, AbelianPair>;

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

/// Conjugacy class label: two elements have equal fingerprints exactly when
/// they are conjugate in their group.
struct Fingerprint {
  std::vector<std::int64_t> key;

  std::string to_string() const;
  static Fingerprint parse(std::string_view text);
  auto operator<=>(const Fingerprint&) const = default;
};

struct FingerprintHash {
  std::size_t operator()(const Fingerprint& f) const noexcept;
};

using Rng = std::mt19937_64;

/// Independent generator for sample `index` under `master_seed`; streams
/// depend only on the pair, never on scheduling.
Rng stream_rng(u64 master_seed, u64 index);

enum class GroupKind { psl2, alternating, symmetric, abelian };

/// Interface every group realization implements.
class GroupImpl {
 public:
  virtual ~GroupImpl() = default;

  virtual GroupKind kind() const = 0;
  virtual std::string descriptor() const = 0;
  /// Exact order; throws CapExceeded when it does not fit in 64 bits.
  virtual u64 order() const = 0;
  virtual std::string order_string() const { return std::to_string(order()); }

  virtual Element identity() const = 0;
  virtual Element multiply(const Element& a, const Element& b) const = 0;
  virtual Element inverse(const Element& a) const = 0;
  virtual Element power(const Element& a, u64 k) const;
  virtual u64 element_order(const Element& a) const = 0;
  virtual bool generates(const Element& x, const Element& y) const = 0;
  /// Short description of the subgroup generated by x and y.
  virtual std::string describe_generated(const Element& x, const Element& y) const = 0;
  virtual Fingerprint fingerprint(const Element& a) const = 0;
  virtual std::string describe_class(const Fingerprint& f) const { return f.to_string(); }

  /// Visits every element exactly once, in a fixed order.
  virtual void for_each_element(const std::function<void(const Element&)>& visit) const = 0;
  /// Exactly uniform over the group.
  virtual Element random_element(Rng& rng) const = 0;

  virtual std::string format(const Element& a) const = 0;
  virtual Element parse_element(std::string_view text) const = 0;
  /// Throws HandleMismatch unless `a` is a valid element of this group.
  virtual void check_member(const Element& a) const = 0;
};

class Psl2Group;
class PermGroup;
class AbelianGroup;

/// Shared, immutable handle to a concrete group.
class Group {
 public:
  static Group psl2(u64 p, unsigned e);
  static Group alternating(unsigned n);
  static Group symmetric(unsigned n);
  static Group abelian(u64 n);
  /// `psl2:p^e`, `alt:n`, `sym:n` or `ab:n`.
  static Group parse(std::string_view descriptor);

  explicit Group(std::shared_ptr<const GroupImpl> impl) : impl_(std::move(impl)) {}

  GroupKind kind() const { return impl_->kind(); }
  std::string descriptor() const { return impl_->descriptor(); }
  u64 order() const { return impl_->order(); }
  std::string order_string() const { return impl_->order_string(); }

  Element identity() const { return impl_->identity(); }
  Element multiply(const Element& a, const Element& b) const { return impl_->multiply(a, b); }
  Element inverse(const Element& a) const { return impl_->inverse(a); }
  Element power(const Element& a, u64 k) const { return impl_->power(a, k); }
  /// g^-1 a g.
  Element conjugate(const Element& a, const Element& g) const;
  u64 element_order(const Element& a) const { return impl_->element_order(a); }
  bool generates(const Element& x, const Element& y) const { return impl_->generates(x, y); }
  std::string describe_generated(const Element& x, const Element& y) const {
    return impl_->describe_generated(x, y);
  }
  Fingerprint fingerprint(const Element& a) const { return impl_->fingerprint(a); }
  std::string describe_class(const Fingerprint& f) const { return impl_->describe_class(f); }
  Element random_element(Rng& rng) const { return impl_->random_element(rng); }
  std::string format(const Element& a) const { return impl_->format(a); }
  Element parse_element(std::string_view text) const { return impl_->parse_element(text); }
  void check_member(const Element& a) const { impl_->check_member(a); }
  bool is_identity(const Element& a) const { return a == identity(); }

  /// Visits all elements; throws CapExceeded when |G| > limit.
  void enumerate(u64 limit, const std::function<void(const Element&)>& visit) const;
  std::vector<Element> elements(u64 limit) const;

  const Psl2Group* as_psl2() const;
  const PermGroup* as_perm() const;
  const AbelianGroup* as_abelian() const;
  const GroupImpl& impl() const { return *impl_; }

  bool operator==(const Group& o) const { return descriptor() == o.descriptor(); }

 private:
  std::shared_ptr<const GroupImpl> impl_;
};

std::string to_string(GroupKind kind);

}  // namespace beauville
