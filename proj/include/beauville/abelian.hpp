#pragma once

#include "beauville/group.hpp"

namespace beauville {

/// Z_n x Z_n under componentwise addition. Conjugacy classes are singletons.
class AbelianGroup final : public GroupImpl {
 public:
  explicit AbelianGroup(u64 n);

  u64 modulus() const { return n_; }
  AbelianPair make(std::int64_t x, std::int64_t y) const;
  AbelianPair add(const AbelianPair& a, const AbelianPair& b) const;
  AbelianPair negate(const AbelianPair& a) const;
  u64 order_of(const AbelianPair& a) const;
  /// x and y generate iff det [[x1, y1], [x2, y2]] is a unit mod n.
  bool generates_pair(const AbelianPair& x, const AbelianPair& y) const;

  GroupKind kind() const override { return GroupKind::abelian; }
  std::string descriptor() const override { return "ab:" + std::to_string(n_); }
  u64 order() const override { return n_ * n_; }

  Element identity() const override { return make(0, 0); }
  Element multiply(const Element& a, const Element& b) const override;
  Element inverse(const Element& a) const override;
  Element power(const Element& a, u64 k) const override;
  u64 element_order(const Element& a) const override;
  bool generates(const Element& x, const Element& y) const override;
  std::string describe_generated(const Element& x, const Element& y) const override;
  Fingerprint fingerprint(const Element& a) const override;
  std::string describe_class(const Fingerprint& f) const override;
  void for_each_element(const std::function<void(const Element&)>& visit) const override;
  Element random_element(Rng& rng) const override;
  std::string format(const Element& a) const override;
  Element parse_element(std::string_view text) const override;
  void check_member(const Element& a) const override;

 private:
  const AbelianPair& get(const Element& a) const;
  u64 n_;
};

}  // namespace beauville
