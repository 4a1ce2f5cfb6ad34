#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "beauville/group.hpp"
#include "beauville/numtheory.hpp"

namespace beauville {

using Type = std::array<u64, 3>;

Type sorted_type(Type t);
std::string to_string(const Type& t);
/// Parses `r,s,t`.
Type parse_type(std::string_view text);

/// Sorted fingerprints of the prime-order elements among the powers of x, y
/// and z = (xy)^-1. Two triples have Sigma sets meeting only in 1 exactly
/// when these sets are disjoint.
using SigmaFingerprint = std::vector<Fingerprint>;

SigmaFingerprint sigma_prime_classes(const Group& g, const Element& x, const Element& y);
bool disjoint(const SigmaFingerprint& a, const SigmaFingerprint& b);

struct GeneratingTriple {
  Element x, y, z;
  Type type{};  // (|x|, |y|, |z|)
};

struct BeauvilleQuadruple {
  Element x1, y1, x2, y2;

  /// `x1;y1;x2;y2` in the group's element encoding.
  std::string to_string(const Group& g) const;
  static BeauvilleQuadruple parse(const Group& g, std::string_view text);
};

struct VerificationReport {
  bool cond_i = true;
  std::array<bool, 2> cond_ii{};
  bool cond_iii = false;
  bool coprime_fast_path = false;
  std::array<std::string, 2> generated;      // description of <x_i, y_i>
  std::optional<Fingerprint> common_class;   // witness when cond_iii fails
  std::string common_class_text;
  std::array<Type, 2> types{};               // ascending
  std::array<bool, 2> hyperbolic{};

  bool overall() const { return cond_i && cond_ii[0] && cond_ii[1] && cond_iii; }
};

VerificationReport verify(const Group& g, const BeauvilleQuadruple& quad);

enum class SearchStrategy { exhaustive, macbeath, random };

std::string to_string(SearchStrategy s);
SearchStrategy parse_strategy(std::string_view text);

struct SearchOptions {
  SearchStrategy strategy = SearchStrategy::exhaustive;
  std::optional<Type> type1, type2;
  u64 seed = 1729;
  u64 cap_enum = 1'000'000;
  u64 cap_search = 1'000'000'000;
  /// Quadruples drawn by the random strategy.
  u64 random_attempts = 200'000;
};

enum class SearchStatus { found, nonexistent, inconclusive };

std::string to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::inconclusive;
  std::optional<BeauvilleQuadruple> quad;
  std::optional<VerificationReport> report;
  u64 iterations = 0;
  std::string note;
};

/// Exhaustive search is a certificate: x1 runs over class representatives
/// and y1 over the whole group, which covers every pair up to simultaneous
/// conjugation. Non-hyperbolic target types are rejected up front.
SearchResult search_structure(const Group& g, const SearchOptions& options);

/// Generating pairs grouped by Sigma set.
struct SigmaCensusEntry {
  SigmaFingerprint sigma;
  Type type{};            // sorted; zero when the census ignores types
  u128 weight = 0;        // ordered generating pairs (x, y) with this key
  Element x, y;           // witness
};

struct SigmaCensus {
  std::vector<SigmaCensusEntry> entries;
  u64 iterations = 0;
  u64 group_order = 0;
};

/// Walks class representatives x and all y. When `types` is non-empty only
/// pairs whose sorted type is listed are kept, and entries are keyed by
/// (type, Sigma); otherwise by Sigma alone.
SigmaCensus sigma_census(const Group& g, const std::vector<Type>& types, u64 cap_enum, u64 cap_search);

/// Exact P(G) = sum over disjoint census entries of w_a w_b / |G|^4.
struct ExactProbability {
  u128 numerator = 0;
  u128 denominator = 1;
  double value() const;
  std::string to_string() const;
};

ExactProbability exact_probability(const Group& g, u64 cap_enum = 1'000'000, u64 cap_search = 1'000'000'000);

struct TripleOptions {
  u64 seed = 1729;
  u64 random_attempts = 100'000;
  u64 cap_enum = 1'000'000;
};

struct TripleResult {
  SearchStatus status = SearchStatus::inconclusive;
  std::optional<GeneratingTriple> triple;
  bool unrealizable = false;  // some requested order does not occur in G
  std::string note;
};

/// Generating x, y with |x| = r, |y| = s, |(xy)^-1| = t.
TripleResult find_generating_triple(const Group& g, u64 r, u64 s, u64 t, const TripleOptions& options = {});

std::string to_string(const u128& v);

}  // namespace beauville
