#include "beauville/probability.hpp"

#include <chrono>
#include <cmath>
#include <thread>

#include "beauville/psl2.hpp"

namespace beauville {

namespace {

// Runs body(i, acc) for i in [0, n) on `workers` threads with contiguous
// index blocks, then sums the per-thread accumulators.
template <typename Acc, typename Body>
Acc parallel_sum(u64 n, unsigned workers, Body body) {
  workers = std::max(1u, workers);
  if (workers > n) workers = static_cast<unsigned>(std::max<u64>(n, 1));
  std::vector<Acc> partial(workers);
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        const u64 begin = n * w / workers, end = n * (w + 1) / workers;
        for (u64 i = begin; i < end; ++i) body(i, partial[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  Acc total{};
  for (const auto& p : partial) total += p;
  return total;
}

void element_stats(const Group& g, const Element& x, ComponentStats& s) {
  const u64 k = g.element_order(x);
  if (const auto* G = g.as_psl2()) {
    const SplitType t = G->split_type(std::get<ProjElement>(x));
    s.split.total++;
    s.nonsplit.total++;
    s.unipotent.total++;
    if (t == SplitType::split) s.split.hits++;
    if (t == SplitType::nonsplit) s.nonsplit.hits++;
    if (t == SplitType::unipotent) s.unipotent.hits++;
    if (G->p() == 2) {
      s.order_div3.total++;
      if (k % 3 == 0) s.order_div3.hits++;
      return;
    }
  }
  s.even_order.total++;
  if (k % 2 == 0) s.even_order.hits++;
}

void pair_stats(const Group& g, const Element& x, const Element& y, bool generates, ComponentStats& s) {
  element_stats(g, x, s);
  element_stats(g, y, s);
  s.generating.total++;
  if (generates) s.generating.hits++;
  if (const auto* G = g.as_psl2()) {
    const auto& a = std::get<ProjElement>(x);
    const auto& b = std::get<ProjElement>(y);
    s.triple_split.total++;
    if (G->split_type(a) == SplitType::split && G->split_type(b) == SplitType::split &&
        G->split_type(G->mul(a, b)) == SplitType::split)
      s.triple_split.hits++;
  }
}

std::vector<Fingerprint> involution_classes(const Group& g, const Element& x, const Element& y) {
  const Element z = g.inverse(g.multiply(x, y));
  std::vector<Fingerprint> out;
  for (const Element* e : {&x, &y, &z}) {
    const u64 k = g.element_order(*e);
    if (k % 2 == 0) out.push_back(g.fingerprint(g.power(*e, k / 2)));
  }
  return out;
}

}  // namespace

Interval wilson_interval(u64 hits, u64 n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2 * nn)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

ComponentStats& ComponentStats::operator+=(const ComponentStats& o) {
  split += o.split;
  nonsplit += o.nonsplit;
  unipotent += o.unipotent;
  triple_split += o.triple_split;
  generating += o.generating;
  even_order += o.even_order;
  order_div3 += o.order_div3;
  involution_overlap += o.involution_overlap;
  return *this;
}

EstimateResult estimate_beauville_probability(const EstimationConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const Group& g = cfg.group;
  struct Acc {
    Fraction estimate;
    ComponentStats stats;
    Acc& operator+=(const Acc& o) {
      estimate += o.estimate;
      stats += o.stats;
      return *this;
    }
  };
  const Acc total = parallel_sum<Acc>(cfg.samples, cfg.workers, [&](u64 i, Acc& acc) {
    Rng rng = stream_rng(cfg.seed, i);
    const BeauvilleQuadruple q{g.random_element(rng), g.random_element(rng), g.random_element(rng),
                               g.random_element(rng)};
    const VerificationReport rep = verify(g, q);
    acc.estimate.total++;
    if (rep.overall()) acc.estimate.hits++;
    if (!cfg.component_stats) return;
    pair_stats(g, q.x1, q.y1, rep.cond_ii[0], acc.stats);
    pair_stats(g, q.x2, q.y2, rep.cond_ii[1], acc.stats);
    if (!rep.overall()) {
      acc.stats.involution_overlap.total++;
      const auto a = involution_classes(g, q.x1, q.y1);
      const auto b = involution_classes(g, q.x2, q.y2);
      bool shared = false;
      for (const auto& f : a)
        for (const auto& h : b) shared = shared || f == h;
      if (shared) acc.stats.involution_overlap.hits++;
    }
  });
  EstimateResult res;
  res.estimate = total.estimate;
  if (cfg.component_stats) res.components = total.stats;
  res.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

ComponentStats estimate_component_stats(const EstimationConfig& cfg) {
  const Group& g = cfg.group;
  return parallel_sum<ComponentStats>(cfg.samples, cfg.workers, [&](u64 i, ComponentStats& acc) {
    Rng rng = stream_rng(cfg.seed, i);
    const Element x = g.random_element(rng);
    const Element y = g.random_element(rng);
    pair_stats(g, x, y, g.generates(x, y), acc);
  });
}

}  // namespace beauville
