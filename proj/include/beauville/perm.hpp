#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "beauville/group.hpp"

namespace beauville {

/// Base and strong generating set with explicit transversals.
class Bsgs {
 public:
  unsigned degree() const { return n_; }
  const std::vector<unsigned>& base() const { return base_; }
  const std::vector<Permutation>& strong_generators() const { return gens_; }
  /// Basic orbit lengths; their product is the group order.
  std::vector<u64> orbit_lengths() const;
  /// Decimal group order.
  std::string order_string() const;
  /// Order compared with n!/2 (alternating) or n! (symmetric).
  bool has_order_factorial(bool half) const;
  bool contains(const Permutation& g) const;

 private:
  friend Bsgs schreier_sims(unsigned n, const std::vector<Permutation>& gens);

  struct Level {
    // transversal[pt] maps the base point to pt; empty when pt is off the orbit.
    std::vector<std::optional<Permutation>> transversal;
    std::vector<unsigned> orbit;
  };

  /// Residue of g after sifting, and the level where sifting stopped.
  std::pair<Permutation, std::size_t> strip(Permutation g) const;
  void rebuild_level(std::size_t i);

  unsigned n_ = 0;
  std::vector<unsigned> base_;
  std::vector<Permutation> gens_;
  std::vector<Level> levels_;
};

/// Deterministic Schreier-Sims.
Bsgs schreier_sims(unsigned n, const std::vector<Permutation>& gens);

/// A_n (alternating = true) or S_n, n >= 3.
class PermGroup final : public GroupImpl {
 public:
  PermGroup(unsigned n, bool alternating);

  unsigned n() const { return n_; }
  bool is_alternating() const { return alternating_; }

  /// Cycle shape, plus a class flag for A_n when every cycle length (fixed
  /// points included) is odd and the lengths are distinct: the parity of the
  /// permutation carrying the canonical layout onto the element. -1 otherwise.
  Fingerprint class_fingerprint(const Permutation& x) const;
  /// True when x and y generate this group.
  bool generates_perm(const Permutation& x, const Permutation& y) const;
  bool order_is_realizable(u64 k) const;
  /// All shapes of degree n and element order k admissible in this group.
  std::vector<CycleShape> shapes_of_order(u64 k, std::size_t limit = 4096) const;
  /// Uniform element of the S_n-class of `shape`.
  Permutation random_with_shape(const CycleShape& shape, Rng& rng) const;
  /// Cycles of `shape` laid out left to right on 1..n, longest first.
  Permutation layout(const CycleShape& shape) const;

  GroupKind kind() const override { return alternating_ ? GroupKind::alternating : GroupKind::symmetric; }
  std::string descriptor() const override { return (alternating_ ? "alt:" : "sym:") + std::to_string(n_); }
  u64 order() const override;
  std::string order_string() const override;
  Element identity() const override { return Permutation::identity(n_); }
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
  const Permutation& get(const Element& a) const;

  unsigned n_;
  bool alternating_;
};

/// x^k computed on cycles.
Permutation perm_power(const Permutation& x, u64 k);

/// Shape (m^k, 1^f) with k = (n - f) / m, cycles (1..m)(m+1..2m)... and the
/// fixed points last. Throws InvalidArgument with the divisibility or parity
/// diagnosis when infeasible.
Permutation construct_almost_homogeneous(unsigned n, unsigned m, unsigned f, bool even = true);

/// Even almost homogeneous shapes of the six requested orders with pairwise
/// distinct fixed-point counts. For each order o the fixed-point count starts
/// at n mod o and grows in steps of o until the shape is even and unused.
std::vector<CycleShape> select_six_classes(unsigned n, const std::array<unsigned, 6>& orders);

/// Smallest n' >= n accepted by select_six_classes, if any below `bound`.
std::optional<unsigned> smallest_six_class_degree(unsigned n, const std::array<unsigned, 6>& orders,
                                                  unsigned bound = 100000);

}  // namespace beauville
