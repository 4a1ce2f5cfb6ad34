#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "beauville/numtheory.hpp"

namespace beauville {

/// Multiset of cycle lengths of a permutation, fixed points included,
/// sorted in descending order.
struct CycleShape {
  std::vector<unsigned> lengths;

  unsigned degree() const;
  unsigned fixed_points() const;
  u64 element_order() const;
  /// Parity of any permutation of this shape.
  bool is_even() const;
  /// True for shapes (m^k, 1^f) with m >= 2 and k >= 1.
  bool is_almost_homogeneous() const;
  /// Cycle length m of an almost homogeneous shape.
  unsigned cycle_length() const;
  /// Number k of non-trivial cycles of an almost homogeneous shape.
  unsigned cycle_count() const;

  /// Text form `3^2,1^1`, descending lengths with multiplicities.
  std::string to_string() const;
  static CycleShape parse(std::string_view text);

  auto operator<=>(const CycleShape&) const = default;
};

/// A permutation of {0, ..., n-1}. Text forms are 1-based cycle notation.
/// Products compose left to right: (a * b)(i) = b(a(i)).
class Permutation {
 public:
  Permutation() = default;
  /// Validates that `images` is a bijection.
  explicit Permutation(std::vector<std::uint32_t> images);
  static Permutation identity(unsigned n);
  /// Cycles given with 0-based points.
  static Permutation from_cycles(unsigned n, const std::vector<std::vector<unsigned>>& cycles);
  /// Parses `(1 2 3)(4 5)`; `()` is the identity.
  static Permutation parse(unsigned n, std::string_view text);

  unsigned degree() const { return static_cast<unsigned>(img_.size()); }
  std::uint32_t operator[](unsigned point) const { return img_[point]; }
  const std::vector<std::uint32_t>& images() const { return img_; }

  Permutation operator*(const Permutation& other) const;
  Permutation inverse() const;
  /// g^-1 * this * g.
  Permutation conjugate_by(const Permutation& g) const;
  bool is_identity() const;
  bool is_even() const { return even_; }

  /// Non-trivial cycles, each starting at its smallest point, ordered by that point.
  std::vector<std::vector<unsigned>> cycles() const;
  CycleShape shape() const;
  u64 order() const;
  unsigned fixed_points() const;

  std::string to_string() const;

  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  auto operator<=>(const Permutation& o) const { return img_ <=> o.img_; }

 private:
  std::vector<std::uint32_t> img_;
  bool even_ = true;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace beauville
