#include "beauville/beauville.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "beauville/abelian.hpp"
#include "beauville/counting.hpp"
#include "beauville/errors.hpp"
#include "beauville/perm.hpp"
#include "beauville/psl2.hpp"
#include "beauville/triangle.hpp"

namespace beauville {

namespace {

bool all_coprime(const Type& a, const Type& b) {
  for (u64 x : a)
    for (u64 y : b)
      if (gcd(x, y) != 1) return false;
  return true;
}

bool is_hyperbolic(const Type& t) {
  if (t[0] < 2 || t[1] < 2 || t[2] < 2) return false;
  return classify_triangle(t[0], t[1], t[2]).geometry == Geometry::hyperbolic;
}

void require_hyperbolic(const Type& t) {
  if (t[0] < 2 || t[1] < 2 || t[2] < 2)
    throw InvalidArgument("type " + to_string(t) + " has an entry below 2; a generating pair needs orders >= 2");
  const TriangleType tt = classify_triangle(t[0], t[1], t[2]);
  if (tt.geometry != Geometry::hyperbolic)
    throw InvalidArgument("type " + to_string(t) + " is " + beauville::to_string(tt.geometry) +
                          " (1/r+1/s+1/t >= 1); such triangle groups admit no unmixed Beauville structure");
}

u128 gcd128(u128 a, u128 b) {
  while (b) {
    const u128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

// Fingerprint sets as bitsets over a shared index.
struct SigmaBits {
  std::vector<std::vector<u64>> bits;

  explicit SigmaBits(const std::vector<const SigmaFingerprint*>& sets) {
    std::map<Fingerprint, std::size_t> ids;
    for (const auto* s : sets)
      for (const auto& f : *s) ids.emplace(f, ids.size());
    const std::size_t words = (ids.size() + 63) / 64;
    for (const auto* s : sets) {
      std::vector<u64> b(words, 0);
      for (const auto& f : *s) {
        const std::size_t i = ids[f];
        b[i / 64] |= u64{1} << (i % 64);
      }
      bits.push_back(std::move(b));
    }
  }

  bool disjoint(std::size_t a, std::size_t b) const {
    for (std::size_t w = 0; w < bits[a].size(); ++w)
      if (bits[a][w] & bits[b][w]) return false;
    return true;
  }
};

struct TripleCandidate {
  Element x, y;
  SigmaFingerprint sigma;
};

// Every generating triple of PSL2(q) with orders (r, s, t), one per Sigma
// set. Each non-singular trace triple determines its matrices up to GL2(q)
// conjugation, so solving and twisting by an outer diagonal element covers
// all PSL2 conjugacy classes of triples.
template <typename Visit>
void for_each_macbeath_triple(const Group& g, const Type& type, Visit&& visit) {
  const Psl2Group& G = *g.as_psl2();
  const Field& f = G.field();
  for (u64 k : type)
    if (!G.order_is_realizable(k) || k < 2) return;
  const auto ta = G.traces_of_order(type[0]);
  const auto tb = G.traces_of_order(type[1]);
  const auto tc = G.traces_of_order(type[2]);
  std::optional<FieldElement> twist;
  if (f.p() != 2)
    for (u64 c = 2; c < f.order(); ++c)
      if (!f.is_square(FieldElement{c})) {
        twist = FieldElement{c};
        break;
      }
  for (FieldElement alpha : ta)
    for (FieldElement beta : tb)
      for (FieldElement gamma : tc) {
        const TraceTriple tr{alpha, beta, gamma};
        if (G.is_singular(tr)) continue;
        const MacbeathSolution sol = G.macbeath_solve(tr);
        std::vector<std::pair<Mat2, Mat2>> lifts{{sol.a, sol.b}};
        if (twist) {
          // diag(nu, 1)^-1 M diag(nu, 1)
          auto conj = [&](const Mat2& m) {
            return Mat2{m.a, f.div(m.b, *twist), f.mul(m.c, *twist), m.d};
          };
          lifts.emplace_back(conj(sol.a), conj(sol.b));
        }
        for (const auto& [a, b] : lifts) {
          const ProjElement x = G.project(a), y = G.project(b);
          if (G.order_of(x) != type[0] || G.order_of(y) != type[1]) continue;
          if (G.order_of(G.mul(x, y)) != type[2]) continue;
          if (G.classify_subgroup(x, y).kind != SubgroupClass::Kind::full) continue;
          if (!visit(Element{x}, Element{y})) return;
        }
      }
}

bool order_realizable(const Group& g, u64 k) {
  if (const auto* p = g.as_psl2()) return p->order_is_realizable(k);
  if (const auto* p = g.as_perm()) return p->order_is_realizable(k);
  if (const auto* a = g.as_abelian()) return a->modulus() % k == 0;
  return false;
}

}  // namespace

Type sorted_type(Type t) {
  std::sort(t.begin(), t.end());
  return t;
}

std::string to_string(const Type& t) {
  return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
}

Type parse_type(std::string_view text) {
  std::string cleaned;
  for (char c : text)
    if (c != '(' && c != ')' && c != ' ') cleaned += c;
  Type t{};
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t end = i < 2 ? cleaned.find(',', pos) : cleaned.size();
    if (end == std::string::npos) throw InvalidArgument("type must look like r,s,t: '" + std::string(text) + "'");
    const std::string_view part(cleaned.data() + pos, end - pos);
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), t[i]);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
      throw InvalidArgument("type must look like r,s,t: '" + std::string(text) + "'");
    if (t[i] == 0) throw InvalidArgument("type entries must be positive: '" + std::string(text) + "'");
    pos = end + 1;
  }
  return t;
}

SigmaFingerprint sigma_prime_classes(const Group& g, const Element& x, const Element& y) {
  const Element z = g.inverse(g.multiply(x, y));
  std::set<Fingerprint> out;
  for (const Element* e : {&x, &y, &z}) {
    const u64 n = g.element_order(*e);
    for (u64 r : prime_divisors(n)) {
      const Element h = g.power(*e, n / r);
      Element hj = h;
      for (u64 j = 1; j < r; ++j) {
        out.insert(g.fingerprint(hj));
        hj = g.multiply(hj, h);
      }
    }
  }
  return {out.begin(), out.end()};
}

bool disjoint(const SigmaFingerprint& a, const SigmaFingerprint& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return true;
}

std::string BeauvilleQuadruple::to_string(const Group& g) const {
  return g.format(x1) + ";" + g.format(y1) + ";" + g.format(x2) + ";" + g.format(y2);
}

BeauvilleQuadruple BeauvilleQuadruple::parse(const Group& g, std::string_view text) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto semi = text.find(';');
    parts.push_back(text.substr(0, semi));
    if (semi == std::string_view::npos) break;
    text.remove_prefix(semi + 1);
  }
  if (parts.size() != 4) throw InvalidArgument("quadruple must have four elements separated by ';'");
  return BeauvilleQuadruple{g.parse_element(parts[0]), g.parse_element(parts[1]), g.parse_element(parts[2]),
                            g.parse_element(parts[3])};
}

VerificationReport verify(const Group& g, const BeauvilleQuadruple& quad) {
  for (const Element* e : {&quad.x1, &quad.y1, &quad.x2, &quad.y2}) g.check_member(*e);
  VerificationReport rep;
  const std::array<std::pair<const Element*, const Element*>, 2> pairs{{{&quad.x1, &quad.y1}, {&quad.x2, &quad.y2}}};
  for (int i = 0; i < 2; ++i) {
    const Element& x = *pairs[i].first;
    const Element& y = *pairs[i].second;
    rep.cond_ii[i] = g.generates(x, y);
    rep.generated[i] = rep.cond_ii[i] ? "full group" : g.describe_generated(x, y);
    rep.types[i] = sorted_type({g.element_order(x), g.element_order(y), g.element_order(g.multiply(x, y))});
    rep.hyperbolic[i] = is_hyperbolic(rep.types[i]);
  }
  if (all_coprime(rep.types[0], rep.types[1])) {
    rep.coprime_fast_path = true;
    rep.cond_iii = true;
    return rep;
  }
  const auto s1 = sigma_prime_classes(g, quad.x1, quad.y1);
  const auto s2 = sigma_prime_classes(g, quad.x2, quad.y2);
  rep.cond_iii = true;
  for (const auto& f : s1) {
    if (std::binary_search(s2.begin(), s2.end(), f)) {
      rep.cond_iii = false;
      rep.common_class = f;
      rep.common_class_text = g.describe_class(f);
      break;
    }
  }
  return rep;
}

std::string to_string(SearchStrategy s) {
  switch (s) {
    case SearchStrategy::exhaustive: return "exhaustive";
    case SearchStrategy::macbeath: return "macbeath";
    case SearchStrategy::random: return "random";
  }
  return "?";
}

SearchStrategy parse_strategy(std::string_view text) {
  if (text == "exhaustive") return SearchStrategy::exhaustive;
  if (text == "macbeath") return SearchStrategy::macbeath;
  if (text == "random") return SearchStrategy::random;
  throw InvalidArgument("unknown strategy '" + std::string(text) + "' (exhaustive, macbeath or random)");
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::nonexistent: return "nonexistent";
    case SearchStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

SigmaCensus sigma_census(const Group& g, const std::vector<Type>& types, u64 cap_enum, u64 cap_search) {
  const ClassPartition classes = conjugacy_classes(g, cap_enum);
  const std::vector<Element> elements = g.elements(cap_enum);
  SigmaCensus census;
  census.group_order = elements.size();
  const u128 work = static_cast<u128>(classes.size()) * elements.size();
  if (work > cap_search)
    throw CapExceeded("exhaustive search over " + g.descriptor() + " needs " + beauville::to_string(work) +
                      " pair checks, above the cap of " + std::to_string(cap_search));
  std::vector<Type> wanted;
  for (const Type& t : types) wanted.push_back(sorted_type(t));
  std::map<std::pair<Type, SigmaFingerprint>, std::size_t> index;
  for (const ClassData& c : classes.classes()) {
    const Element& x = c.representative;
    for (const Element& y : elements) {
      ++census.iterations;
      Type key{};
      if (!wanted.empty()) {
        key = sorted_type({c.element_order, g.element_order(y), g.element_order(g.multiply(x, y))});
        if (std::find(wanted.begin(), wanted.end(), key) == wanted.end()) continue;
      }
      if (!g.generates(x, y)) continue;
      SigmaFingerprint sigma = sigma_prime_classes(g, x, y);
      auto [it, inserted] = index.try_emplace({key, sigma}, census.entries.size());
      if (inserted) census.entries.push_back(SigmaCensusEntry{std::move(sigma), key, 0, x, y});
      census.entries[it->second].weight += c.size;
    }
  }
  return census;
}

double ExactProbability::value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }

std::string ExactProbability::to_string() const {
  if (numerator == 0) return "0";
  return beauville::to_string(numerator) + "/" + beauville::to_string(denominator);
}

std::string to_string(const u128& v) {
  if (v == 0) return "0";
  std::string s;
  u128 x = v;
  while (x) {
    s += static_cast<char>('0' + static_cast<int>(x % 10));
    x /= 10;
  }
  return {s.rbegin(), s.rend()};
}

ExactProbability exact_probability(const Group& g, u64 cap_enum, u64 cap_search) {
  const SigmaCensus census = sigma_census(g, {}, cap_enum, cap_search);
  std::vector<const SigmaFingerprint*> sets;
  for (const auto& e : census.entries) sets.push_back(&e.sigma);
  const SigmaBits bits(sets);
  u128 num = 0;
  for (std::size_t a = 0; a < census.entries.size(); ++a)
    for (std::size_t b = 0; b < census.entries.size(); ++b)
      if (bits.disjoint(a, b)) num += census.entries[a].weight * census.entries[b].weight;
  const u128 n = census.group_order;
  ExactProbability p;
  p.numerator = num;
  p.denominator = n * n * n * n;
  const u128 d = gcd128(p.numerator, p.denominator);
  if (d > 1) {
    p.numerator /= d;
    p.denominator /= d;
  }
  if (p.numerator == 0) p.denominator = 1;
  return p;
}

namespace {

SearchResult finish(const Group& g, BeauvilleQuadruple quad, u64 iterations, std::string note) {
  SearchResult res;
  res.report = verify(g, quad);
  if (!res.report->overall()) throw InternalError("search produced a quadruple that fails verification");
  res.status = SearchStatus::found;
  res.quad = std::move(quad);
  res.iterations = iterations;
  res.note = std::move(note);
  return res;
}

SearchResult search_exhaustive(const Group& g, const SearchOptions& o) {
  std::vector<Type> types;
  if (o.type1) types = {*o.type1, *o.type2};
  const SigmaCensus census = sigma_census(g, types, o.cap_enum, o.cap_search);
  std::vector<const SigmaFingerprint*> sets;
  for (const auto& e : census.entries) sets.push_back(&e.sigma);
  const SigmaBits bits(sets);
  const auto& E = census.entries;
  for (std::size_t a = 0; a < E.size(); ++a) {
    if (o.type1 && E[a].type != sorted_type(*o.type1)) continue;
    for (std::size_t b = 0; b < E.size(); ++b) {
      if (o.type2 && E[b].type != sorted_type(*o.type2)) continue;
      if (!bits.disjoint(a, b)) continue;
      return finish(g, BeauvilleQuadruple{E[a].x, E[a].y, E[b].x, E[b].y}, census.iterations,
                    std::to_string(E.size()) + " distinct Sigma sets among generating pairs");
    }
  }
  SearchResult res;
  res.status = SearchStatus::nonexistent;
  res.iterations = census.iterations;
  res.note = "no two generating pairs" +
             (o.type1 ? " of types " + to_string(sorted_type(*o.type1)) + " and " + to_string(sorted_type(*o.type2))
                      : std::string()) +
             " have disjoint Sigma sets (" + std::to_string(E.size()) + " distinct Sigma sets checked)";
  return res;
}

SearchResult search_macbeath(const Group& g, const SearchOptions& o) {
  const Psl2Group* G = g.as_psl2();
  if (!G) throw InvalidArgument("the macbeath strategy needs a psl2 group");
  std::vector<std::pair<Type, Type>> families;
  if (o.type1) {
    families.emplace_back(*o.type1, *o.type2);
  } else {
    const u64 a = G->split_order(), b = G->nonsplit_order();
    families.push_back({{a, a, a}, {b, b, b}});
    families.push_back({{a, a, a}, {b, b, G->p()}});
  }
  u64 iterations = 0;
  std::string tried;
  for (const auto& [t1, t2] : families) {
    if (!is_hyperbolic(t1) || !is_hyperbolic(t2)) continue;
    auto collect = [&](const Type& t) {
      std::vector<TripleCandidate> out;
      std::set<SigmaFingerprint> seen;
      for_each_macbeath_triple(g, t, [&](const Element& x, const Element& y) {
        ++iterations;
        SigmaFingerprint s = sigma_prime_classes(g, x, y);
        if (seen.insert(s).second) out.push_back({x, y, std::move(s)});
        return iterations < o.cap_search;
      });
      return out;
    };
    const auto c1 = collect(t1);
    const auto c2 = collect(t2);
    for (const auto& a : c1)
      for (const auto& b : c2)
        if (disjoint(a.sigma, b.sigma))
          return finish(g, BeauvilleQuadruple{a.x, a.y, b.x, b.y}, iterations,
                        "types " + to_string(sorted_type(t1)) + " and " + to_string(sorted_type(t2)));
    if (!tried.empty()) tried += ", ";
    tried += "(" + to_string(sorted_type(t1)) + "," + to_string(sorted_type(t2)) + ")";
  }
  SearchResult res;
  res.iterations = iterations;
  if (o.type1 && iterations < o.cap_search) {
    res.status = SearchStatus::nonexistent;
    res.note = "every generating triple of the requested types was enumerated; no disjoint pair";
  } else {
    res.status = SearchStatus::inconclusive;
    res.note = tried.empty() ? "no hyperbolic candidate family" : "no structure of types " + tried;
  }
  return res;
}

SearchResult search_random(const Group& g, const SearchOptions& o) {
  for (u64 i = 0; i < o.random_attempts; ++i) {
    Rng rng = stream_rng(o.seed, i);
    BeauvilleQuadruple q{g.random_element(rng), g.random_element(rng), g.random_element(rng),
                         g.random_element(rng)};
    if (o.type1) {
      const Type a = sorted_type({g.element_order(q.x1), g.element_order(q.y1),
                                  g.element_order(g.multiply(q.x1, q.y1))});
      const Type b = sorted_type({g.element_order(q.x2), g.element_order(q.y2),
                                  g.element_order(g.multiply(q.x2, q.y2))});
      if (a != sorted_type(*o.type1) || b != sorted_type(*o.type2)) continue;
    }
    const VerificationReport rep = verify(g, q);
    if (rep.overall()) return finish(g, q, i + 1, "sample " + std::to_string(i));
  }
  SearchResult res;
  res.status = SearchStatus::inconclusive;
  res.iterations = o.random_attempts;
  res.note = "no structure among " + std::to_string(o.random_attempts) + " random quadruples";
  return res;
}

}  // namespace

SearchResult search_structure(const Group& g, const SearchOptions& o) {
  if (o.type1.has_value() != o.type2.has_value()) throw InvalidArgument("give both target types or neither");
  if (o.type1) {
    require_hyperbolic(*o.type1);
    require_hyperbolic(*o.type2);
    for (const Type* t : {&*o.type1, &*o.type2})
      for (u64 k : *t)
        if (!order_realizable(g, k)) {
          SearchResult res;
          res.status = SearchStatus::nonexistent;
          res.note = g.descriptor() + " has no element of order " + std::to_string(k);
          return res;
        }
  }
  switch (o.strategy) {
    case SearchStrategy::exhaustive: return search_exhaustive(g, o);
    case SearchStrategy::macbeath: return search_macbeath(g, o);
    case SearchStrategy::random: return search_random(g, o);
  }
  throw InternalError("unknown strategy");
}

namespace {

TripleResult triple_found(const Group& g, Element x, Element y, const Type& t, std::string note) {
  TripleResult res;
  res.status = SearchStatus::found;
  Element z = g.inverse(g.multiply(x, y));
  res.triple = GeneratingTriple{std::move(x), std::move(y), std::move(z), t};
  res.note = std::move(note);
  return res;
}

TripleResult triple_exhaustive(const Group& g, const Type& t, u64 cap_enum) {
  const ClassPartition classes = conjugacy_classes(g, cap_enum);
  const auto elements = g.elements(cap_enum);
  for (const ClassData& c : classes.classes()) {
    if (c.element_order != t[0]) continue;
    for (const Element& y : elements) {
      if (g.element_order(y) != t[1]) continue;
      if (g.element_order(g.multiply(c.representative, y)) != t[2]) continue;
      if (!g.generates(c.representative, y)) continue;
      return triple_found(g, c.representative, y, t, "exhaustive over class representatives");
    }
  }
  TripleResult res;
  res.status = SearchStatus::nonexistent;
  res.note = "exhaustive search: no generating pair with these orders";
  return res;
}

TripleResult triple_random(const Group& g, const Type& t, const TripleOptions& o) {
  const PermGroup* P = g.as_perm();
  std::array<std::vector<CycleShape>, 2> shapes;
  if (P) {
    for (int i = 0; i < 2; ++i) {
      auto all = P->shapes_of_order(t[i]);
      for (const auto& s : all)
        if (s.is_almost_homogeneous()) shapes[i].push_back(s);
      if (shapes[i].empty()) shapes[i] = std::move(all);
    }
  }
  for (u64 i = 0; i < o.random_attempts; ++i) {
    Rng rng = stream_rng(o.seed, i);
    Element x, y;
    if (P) {
      std::uniform_int_distribution<std::size_t> pick0(0, shapes[0].size() - 1), pick1(0, shapes[1].size() - 1);
      x = P->random_with_shape(shapes[0][pick0(rng)], rng);
      y = P->random_with_shape(shapes[1][pick1(rng)], rng);
    } else {
      x = g.random_element(rng);
      y = g.random_element(rng);
      if (g.element_order(x) != t[0] || g.element_order(y) != t[1]) continue;
    }
    if (g.element_order(g.multiply(x, y)) != t[2]) continue;
    if (!g.generates(x, y)) continue;
    return triple_found(g, x, y, t, "random search, attempt " + std::to_string(i));
  }
  TripleResult res;
  res.status = SearchStatus::inconclusive;
  res.note = "no triple among " + std::to_string(o.random_attempts) + " random attempts";
  return res;
}

}  // namespace

TripleResult find_generating_triple(const Group& g, u64 r, u64 s, u64 t, const TripleOptions& o) {
  if (r < 2 || s < 2 || t < 2) throw InvalidArgument("orders of a generating triple must be at least 2");
  const Type type{r, s, t};
  for (u64 k : type) {
    if (!order_realizable(g, k)) {
      TripleResult res;
      res.status = SearchStatus::nonexistent;
      res.unrealizable = true;
      res.note = g.descriptor() + " has no element of order " + std::to_string(k);
      return res;
    }
  }
  if (g.as_psl2()) {
    std::optional<TripleResult> found;
    for_each_macbeath_triple(g, type, [&](const Element& x, const Element& y) {
      found = triple_found(g, x, y, type, "trace triple solution");
      return false;
    });
    if (found) return *found;
    TripleResult res;
    res.status = SearchStatus::nonexistent;
    res.note = "no non-singular trace triple with these orders generates " + g.descriptor();
    return res;
  }
  const PermGroup* P = g.as_perm();
  bool small = false;
  try {
    small = (!P || P->n() <= 8) && g.order() <= o.cap_enum;
  } catch (const CapExceeded&) {
    small = false;
  }
  if (small) return triple_exhaustive(g, type, o.cap_enum);
  return triple_random(g, type, o);
}

}  // namespace beauville
