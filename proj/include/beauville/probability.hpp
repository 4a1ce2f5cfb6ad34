#pragma once

#include <optional>
#include <string>

#include "beauville/beauville.hpp"
#include "beauville/group.hpp"

namespace beauville {

struct Interval {
  double lo = 0, hi = 1;
};

/// 95% Wilson score interval for `hits` successes in `n` trials.
Interval wilson_interval(u64 hits, u64 n, double z = 1.959964);

struct Fraction {
  u64 hits = 0;
  u64 total = 0;
  double value() const { return total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0; }
  Interval interval() const { return wilson_interval(hits, total); }
  Fraction& operator+=(const Fraction& o) {
    hits += o.hits;
    total += o.total;
    return *this;
  }
};

struct EstimationConfig {
  Group group;
  u64 samples = 20000;
  u64 seed = 1729;
  unsigned workers = 1;
  bool component_stats = false;
};

/// Fractions over sampled elements and pairs. The split counters are only
/// filled for psl2 groups.
struct ComponentStats {
  Fraction split, nonsplit, unipotent;  // over sampled elements
  Fraction triple_split;                // pairs with x, y and xy all split
  Fraction generating;                  // pairs generating G
  Fraction even_order;                  // elements of even order (q odd)
  Fraction order_div3;                  // elements of order divisible by 3 (q even)
  /// Failing quadruples whose two triples both contain an involution and
  /// share an involution class.
  Fraction involution_overlap;

  ComponentStats& operator+=(const ComponentStats& o);
};

struct EstimateResult {
  Fraction estimate;
  std::optional<ComponentStats> components;
  double elapsed_seconds = 0;
};

/// Fraction of i.i.d. uniform quadruples passing verify(). Sample i draws
/// from stream_rng(seed, i), so the result does not depend on `workers`.
EstimateResult estimate_beauville_probability(const EstimationConfig& cfg);

/// Component statistics from `samples` i.i.d. uniform pairs (x, y).
ComponentStats estimate_component_stats(const EstimationConfig& cfg);

/// Exact P(G) by the class-reduced census.
inline ExactProbability exact_probability_exhaustive(const Group& g, u64 cap_enum = 1'000'000,
                                                     u64 cap_search = 1'000'000'000) {
  return exact_probability(g, cap_enum, cap_search);
}

}  // namespace beauville
