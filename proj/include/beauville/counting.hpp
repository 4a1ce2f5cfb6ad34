#pragma once

#include <complex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "beauville/group.hpp"

namespace beauville {

struct ClassData {
  Fingerprint fingerprint;
  u64 size = 0;
  Element representative;
  u64 element_order = 0;
};

/// Conjugacy classes ordered by element order, then size, then fingerprint.
class ClassPartition {
 public:
  ClassPartition(Group group, std::vector<ClassData> classes, std::vector<std::vector<Element>> members);

  const Group& group() const { return group_; }
  const std::vector<ClassData>& classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }
  const ClassData& operator[](std::size_t i) const { return classes_[i]; }
  const std::vector<Element>& members(std::size_t i) const { return members_[i]; }
  std::optional<std::size_t> find(const Fingerprint& f) const;
  std::size_t index_of(const Element& x) const;
  /// Index of the class of x^-1 for members of class i.
  std::size_t inverse_class(std::size_t i) const;

 private:
  Group group_;
  std::vector<ClassData> classes_;
  std::vector<std::vector<Element>> members_;
  std::unordered_map<Fingerprint, std::size_t, FingerprintHash> index_;
};

/// Throws CapExceeded when |G| > cap.
ClassPartition conjugacy_classes(const Group& g, u64 cap = 1'000'000);

/// Number of (x, y, z) in X x Y x Z with xyz = 1, by direct convolution.
u64 frobenius_count_brute(const ClassPartition& classes, std::size_t x, std::size_t y, std::size_t z);

/// Rows are irreducible characters (trivial first, then ascending degree),
/// columns follow the class partition order.
struct CharacterTable {
  std::string group;
  std::vector<Fingerprint> fingerprints;
  std::vector<u64> class_sizes;
  std::vector<u64> class_orders;
  std::vector<std::vector<std::complex<double>>> values;
  double tolerance = 1e-8;

  std::size_t size() const { return values.size(); }
  u64 group_order() const;
  /// Rounded degrees chi(1).
  std::vector<u64> degrees() const;
  /// Largest deviation from row orthogonality, column orthogonality and
  /// sum of squared degrees = |G|.
  double orthogonality_defect() const;

  std::string serialize() const;
  static CharacterTable parse(std::string_view text);
};

/// Class-algebra eigenvector method. Requires |G| <= cap and at most 60 classes.
CharacterTable character_table_small(const ClassPartition& classes, u64 cap = 10'000, u64 seed = 1729);

/// Frobenius character sum |X||Y||Z|/|G| sum chi(x)chi(y)chi(z)/chi(1),
/// returned when it lies within 1e-6 of a non-negative integer.
u64 frobenius_count_char(const CharacterTable& table, std::size_t x, std::size_t y, std::size_t z,
                         double* raw = nullptr);

/// Trivial-character term |X||Y||Z|/|G| of the Frobenius sum.
double frobenius_main_term(const CharacterTable& table, std::size_t x, std::size_t y, std::size_t z);

double witten_zeta(const std::vector<u64>& degrees, double s);

/// Table for `classes`, read from BEAUVILLE_CACHE_DIR when a matching file
/// exists and written there after computing otherwise.
CharacterTable cached_character_table(const ClassPartition& classes, u64 cap = 10'000, u64 seed = 1729);

}  // namespace beauville
