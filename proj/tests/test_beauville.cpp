#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "beauville/beauville.hpp"
#include "beauville/errors.hpp"
#include "beauville/psl2.hpp"
#include "beauville/triangle.hpp"
#include "oracles.hpp"

using namespace beauville;

namespace {

bool full_sigma_disjoint(const Group& g, const std::vector<Element>& all, const BeauvilleQuadruple& q) {
  const auto a = oracle::full_sigma(g, all, q.x1, q.y1);
  const auto b = oracle::full_sigma(g, all, q.x2, q.y2);
  for (const Element& e : a)
    if (!g.is_identity(e) && b.count(e)) return false;
  return true;
}

void check_triple(const Group& g, const TripleResult& r, u64 a, u64 b, u64 c) {
  REQUIRE(r.status == SearchStatus::found);
  REQUIRE(r.triple.has_value());
  const GeneratingTriple& t = *r.triple;
  CHECK(g.element_order(t.x) == a);
  CHECK(g.element_order(t.y) == b);
  CHECK(g.element_order(t.z) == c);
  CHECK(g.is_identity(g.multiply(g.multiply(t.x, t.y), t.z)));
  CHECK(g.generates(t.x, t.y));
}

Type type_of(const Group& g, const Element& x, const Element& y) {
  const Element z = g.inverse(g.multiply(x, y));
  return sorted_type({g.element_order(x), g.element_order(y), g.element_order(z)});
}

}  // namespace

TEST_CASE("types") {
  CHECK(sorted_type({7, 2, 3}) == Type{2, 3, 7});
  CHECK(to_string(Type{2, 3, 7}) == "(2,3,7)");
  CHECK(parse_type("7, 3,2") == Type{7, 3, 2});
  CHECK(parse_type("(2,3,7)") == Type{2, 3, 7});
  CHECK_THROWS_AS(parse_type("2,3"), InvalidArgument);
  CHECK_THROWS_AS(parse_type("2,3,x"), InvalidArgument);
  CHECK_THROWS_AS(parse_type("0,3,7"), InvalidArgument);
}

TEST_CASE("triangle groups") {
  const TriangleType h = classify_triangle(2, 3, 7);
  CHECK(h.geometry == Geometry::hyperbolic);
  CHECK(h.mu_num == 1);
  CHECK(h.mu_den == 42);
  CHECK(h.measure_string() == "1/42");
  CHECK(classify_triangle(7, 3, 2).orders == std::array<u64, 3>{2, 3, 7});
  CHECK(classify_triangle(2, 3, 6).geometry == Geometry::euclidean);
  CHECK(classify_triangle(2, 4, 4).geometry == Geometry::euclidean);
  CHECK(classify_triangle(3, 3, 3).geometry == Geometry::euclidean);
  CHECK(classify_triangle(3, 3, 3).mu_num == 0);
  CHECK(classify_triangle(2, 3, 5).geometry == Geometry::spherical);
  CHECK(classify_triangle(2, 3, 5).mu_num == -1);
  CHECK(classify_triangle(2, 3, 5).mu_den == 30);
  CHECK(classify_triangle(2, 2, 100).geometry == Geometry::spherical);
  CHECK_THROWS_AS(classify_triangle(1, 3, 7), InvalidArgument);

  // No hyperbolic type has smaller measure than (2,3,7).
  for (u64 r = 2; r <= 12; ++r)
    for (u64 s = r; s <= 12; ++s)
      for (u64 t = s; t <= 50; ++t) {
        const TriangleType c = classify_triangle(r, s, t);
        const double lhs = 1.0 / r + 1.0 / s + 1.0 / t;
        CHECK((c.geometry == Geometry::hyperbolic) == (lhs < 1 - 1e-12));
        if (c.geometry == Geometry::hyperbolic) CHECK(c.measure() >= 1.0 / 42 - 1e-15);
      }
}

TEST_CASE("hurwitz criterion") {
  CHECK(hurwitz_psl2(7, 1));
  CHECK(hurwitz_psl2(13, 1));
  CHECK(hurwitz_psl2(2, 3));
  CHECK_FALSE(hurwitz_psl2(5, 1));
  CHECK(hurwitz_psl2(29, 1));
  CHECK(hurwitz_psl2(3, 3));
  CHECK_FALSE(hurwitz_psl2(7, 3));
  CHECK_FALSE(hurwitz_psl2(2, 6));
}

TEST_CASE("hurwitz groups have (2,3,7) generating triples") {
  int count = 0;
  for (u64 p = 2; p <= 1024; ++p) {
    if (!is_prime(p)) continue;
    u64 q = 1;
    for (unsigned e = 1; e <= 10; ++e) {
      q *= p;
      if (q > 1024) break;
      if (q < 4 || !hurwitz_psl2(p, e)) continue;
      const Group g = Group::psl2(p, e);
      CAPTURE(q);
      check_triple(g, find_generating_triple(g, 2, 3, 7), 2, 3, 7);
      ++count;
    }
  }
  CHECK(count > 20);
}

TEST_CASE("generating triple examples") {
  const Group l7 = Group::psl2(7, 1);
  check_triple(l7, find_generating_triple(l7, 2, 3, 7), 2, 3, 7);
  const Group l13 = Group::psl2(13, 1);
  check_triple(l13, find_generating_triple(l13, 6, 6, 6), 6, 6, 6);
  const TripleResult a5 = find_generating_triple(Group::alternating(5), 2, 3, 7);
  CHECK(a5.status == SearchStatus::nonexistent);
  CHECK(a5.unrealizable);
  const Group a15 = Group::alternating(15);
  check_triple(a15, find_generating_triple(a15, 2, 3, 7), 2, 3, 7);
  const Group a9 = Group::alternating(9);
  check_triple(a9, find_generating_triple(a9, 3, 5, 7), 3, 5, 7);
  // Odd orders force every element into A_n.
  CHECK(find_generating_triple(Group::symmetric(8), 2, 3, 7).status == SearchStatus::nonexistent);
  const Group a6 = Group::alternating(6);
  check_triple(a6, find_generating_triple(a6, 4, 4, 5), 4, 4, 5);
  const Group ab5 = Group::abelian(5);
  check_triple(ab5, find_generating_triple(ab5, 5, 5, 5), 5, 5, 5);
}

TEST_CASE("sigma examples") {
  const Group a5 = Group::alternating(5);
  const Element c5 = a5.parse_element("(1 2 3 4 5)");
  const SigmaFingerprint s = sigma_prime_classes(a5, c5, c5);
  // Powers of x give both 5-cycle classes; z = x^-2 adds nothing new.
  CHECK(s.size() == 2);
  CHECK(sigma_prime_classes(a5, a5.identity(), a5.identity()).empty());

  const Group ab5 = Group::abelian(5);
  const SigmaFingerprint t = sigma_prime_classes(ab5, ab5.parse_element("(1,0)"), ab5.parse_element("(0,1)"));
  CHECK(t.size() == 12);  // nonzero multiples of (1,0), (0,1) and (4,4)
}

TEST_CASE("prime-order sigma reduction agrees with full sigma") {
  for (std::string d : {"alt:5", "alt:6", "psl2:7", "psl2:8", "ab:5"}) {
    const Group g = Group::parse(d);
    const auto all = g.elements(1000);
    Rng rng = stream_rng(30, 0);
    for (int i = 0; i < 300; ++i) {
      BeauvilleQuadruple q{g.random_element(rng), g.random_element(rng), g.random_element(rng), g.random_element(rng)};
      // Bias towards shared classes.
      if (i % 3 == 0) q.x2 = g.conjugate(q.x1, g.random_element(rng));
      const bool reduced =
          disjoint(sigma_prime_classes(g, q.x1, q.y1), sigma_prime_classes(g, q.x2, q.y2));
      CAPTURE(d);
      CHECK(reduced == full_sigma_disjoint(g, all, q));
    }
  }
}

TEST_CASE("verification examples") {
  const Group ab5 = Group::abelian(5);
  const auto q = BeauvilleQuadruple::parse(ab5, "(1,0);(0,1);(1,2);(2,1)");
  const VerificationReport r = verify(ab5, q);
  CHECK(r.cond_i);
  CHECK(r.cond_ii[0]);
  CHECK(r.cond_ii[1]);
  CHECK(r.cond_iii == full_sigma_disjoint(ab5, ab5.elements(100), q));
  CHECK(q.to_string(ab5) == "(1,0);(0,1);(1,2);(2,1)");

  const Group a5 = Group::alternating(5);
  const auto bad = BeauvilleQuadruple{a5.identity(), a5.identity(), a5.identity(), a5.identity()};
  const VerificationReport rb = verify(a5, bad);
  CHECK_FALSE(rb.cond_ii[0]);
  CHECK_FALSE(rb.overall());
  CHECK_THROWS_AS(BeauvilleQuadruple::parse(a5, "(1 2 3);(1 2 3 4 5)"), InvalidArgument);
  CHECK_THROWS_AS(verify(a5, BeauvilleQuadruple{ab5.identity(), a5.identity(), a5.identity(), a5.identity()}),
                  HandleMismatch);
}

TEST_CASE("verification invariances") {
  for (std::string d : {"alt:6", "psl2:11"}) {
    const Group g = Group::parse(d);
    Rng rng = stream_rng(31, 0);
    int positives = 0;
    for (int i = 0; i < 400; ++i) {
      BeauvilleQuadruple q{g.random_element(rng), g.random_element(rng), g.random_element(rng), g.random_element(rng)};
      const bool base = verify(g, q).overall();
      positives += base;
      const Element h1 = g.random_element(rng), h2 = g.random_element(rng);
      const BeauvilleQuadruple conj{g.conjugate(q.x1, h1), g.conjugate(q.y1, h1), g.conjugate(q.x2, h2),
                                    g.conjugate(q.y2, h2)};
      CHECK(verify(g, conj).overall() == base);
      CHECK(verify(g, BeauvilleQuadruple{q.x2, q.y2, q.x1, q.y1}).overall() == base);
    }
    CAPTURE(d);
    CHECK(positives > 0);
  }
}

TEST_CASE("coprime fast path agrees with sigma") {
  for (std::string d : {"psl2:11", "psl2:13", "alt:6", "psl2:8"}) {
    const Group g = Group::parse(d);
    Rng rng = stream_rng(32, 0);
    std::vector<std::pair<Element, Element>> pairs;
    for (int i = 0; i < 120; ++i) pairs.emplace_back(g.random_element(rng), g.random_element(rng));
    int fast = 0;
    for (const auto& [x1, y1] : pairs)
      for (const auto& [x2, y2] : pairs) {
        const BeauvilleQuadruple q{x1, y1, x2, y2};
        const VerificationReport r = verify(g, q);
        if (!r.coprime_fast_path) continue;
        ++fast;
        CHECK(r.cond_iii);
        CHECK(disjoint(sigma_prime_classes(g, x1, y1), sigma_prime_classes(g, x2, y2)));
      }
    CAPTURE(d);
    CHECK(fast > 0);
  }
}

TEST_CASE("abelian criterion") {
  for (u64 n = 2; n <= 13; ++n) {
    const Group g = Group::abelian(n);
    const SearchResult r = search_structure(g, SearchOptions{});
    CAPTURE(n);
    CHECK((r.status == SearchStatus::found) == (gcd(n, 6) == 1));
    CHECK(r.status != SearchStatus::inconclusive);
    if (r.quad) CHECK(verify(g, *r.quad).overall());
  }
}

TEST_CASE("search examples") {
  SearchOptions l13;
  l13.strategy = SearchStrategy::macbeath;
  l13.type1 = Type{6, 6, 6};
  l13.type2 = Type{7, 7, 7};
  const Group g13 = Group::psl2(13, 1);
  const SearchResult r13 = search_structure(g13, l13);
  REQUIRE(r13.status == SearchStatus::found);
  CHECK(verify(g13, *r13.quad).overall());
  CHECK(type_of(g13, r13.quad->x1, r13.quad->y1) == Type{6, 6, 6});
  CHECK(type_of(g13, r13.quad->x2, r13.quad->y2) == Type{7, 7, 7});

  SearchOptions l11;
  l11.strategy = SearchStrategy::macbeath;
  l11.type1 = Type{5, 5, 5};
  l11.type2 = Type{6, 6, 11};
  const Group g11 = Group::psl2(11, 1);
  const SearchResult r11 = search_structure(g11, l11);
  REQUIRE(r11.status == SearchStatus::found);
  CHECK(verify(g11, *r11.quad).overall());

  const SearchResult a5 = search_structure(Group::alternating(5), SearchOptions{});
  CHECK(a5.status == SearchStatus::nonexistent);
  CHECK(search_structure(Group::psl2(5, 1), SearchOptions{}).status == SearchStatus::nonexistent);

  for (std::string d : {"alt:6", "alt:7", "psl2:7", "psl2:8", "psl2:9"}) {
    const Group g = Group::parse(d);
    const SearchResult r = search_structure(g, SearchOptions{});
    CAPTURE(d);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(verify(g, *r.quad).overall());
  }

  SearchOptions random;
  random.strategy = SearchStrategy::random;
  for (std::string d : {"psl2:13", "alt:8", "ab:7"}) {
    const Group g = Group::parse(d);
    const SearchResult r = search_structure(g, random);
    CAPTURE(d);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(verify(g, *r.quad).overall());
  }
  // The random strategy never certifies nonexistence.
  random.random_attempts = 2000;
  CHECK(search_structure(Group::alternating(5), random).status == SearchStatus::inconclusive);

  SearchOptions spherical;
  spherical.type1 = Type{2, 3, 5};
  CHECK_THROWS_AS(search_structure(Group::alternating(5), spherical), InvalidArgument);
  SearchOptions euclid;
  euclid.type1 = Type{3, 3, 3};
  CHECK_THROWS_AS(search_structure(Group::abelian(7), euclid), InvalidArgument);

  SearchOptions missing;
  missing.type1 = Type{7, 7, 7};
  missing.type2 = Type{5, 5, 5};
  CHECK(search_structure(Group::alternating(6), missing).status == SearchStatus::nonexistent);

  SearchOptions capped;
  capped.cap_enum = 100;
  CHECK_THROWS_AS(search_structure(Group::psl2(7, 1), capped), CapExceeded);
}

TEST_CASE("macbeath search is a certificate") {
  // Exhaustive and trace-guided strategies agree on type feasibility.
  const Group g = Group::psl2(7, 1);
  for (const Type& t1 : {Type{3, 3, 4}, Type{2, 3, 7}, Type{4, 4, 4}})
    for (const Type& t2 : {Type{7, 7, 7}, Type{3, 4, 4}, Type{3, 3, 7}}) {
      SearchOptions a;
      a.type1 = t1;
      a.type2 = t2;
      SearchOptions b = a;
      b.strategy = SearchStrategy::macbeath;
      const SearchResult ra = search_structure(g, a), rb = search_structure(g, b);
      CAPTURE(to_string(t1));
      CAPTURE(to_string(t2));
      CHECK(ra.status == rb.status);
      CHECK(ra.status != SearchStatus::inconclusive);
    }
}

namespace {

// Structures of types ((p,p,t1), (p,p,t2)) with t1, t2 dividing (q-1)/2 or (q+1)/2.
int count_ppt_structures(const Group& g, SearchStrategy strategy) {
  const Psl2Group& G = *g.as_psl2();
  const u64 p = G.p();
  std::vector<u64> divisors;
  for (u64 t = 2; t <= G.nonsplit_order(); ++t)
    if (G.split_order() % t == 0 || G.nonsplit_order() % t == 0) divisors.push_back(t);
  int found = 0;
  for (u64 t1 : divisors)
    for (u64 t2 : divisors) {
      if (t1 > t2) continue;
      if (classify_triangle(p, p, t1).geometry != Geometry::hyperbolic) continue;
      if (classify_triangle(p, p, t2).geometry != Geometry::hyperbolic) continue;
      SearchOptions o;
      o.strategy = strategy;
      o.type1 = Type{p, p, t1};
      o.type2 = Type{p, p, t2};
      const SearchResult r = search_structure(g, o);
      CHECK(r.status != SearchStatus::inconclusive);
      if (r.status == SearchStatus::found) {
        CHECK(verify(g, *r.quad).overall());
        ++found;
      }
    }
  return found;
}

}  // namespace

TEST_CASE("(p,p,t) types in PSL2(p^2)") {
  CHECK(count_ppt_structures(Group::psl2(5, 2), SearchStrategy::macbeath) > 0);
  // PSL2(9) has none; both complete strategies agree.
  const Group g9 = Group::psl2(3, 2);
  CHECK(count_ppt_structures(g9, SearchStrategy::macbeath) == 0);
  CHECK(count_ppt_structures(g9, SearchStrategy::exhaustive) == 0);
}

TEST_CASE("sigma census and exact probability") {
  for (std::string d : {"alt:5", "psl2:7", "ab:5", "ab:6"}) {
    const Group g = Group::parse(d);
    const SigmaCensus c = sigma_census(g, {}, 1000000, 1000000000);
    u128 total = 0;
    for (const auto& e : c.entries) total += e.weight;
    u64 generating = 0;
    const auto all = g.elements(1000);
    for (const Element& x : all)
      for (const Element& y : all) generating += g.generates(x, y);
    CAPTURE(d);
    CHECK(total == generating);
    for (const auto& e : c.entries) CHECK(sigma_prime_classes(g, e.x, e.y) == e.sigma);
  }
  CHECK(exact_probability(Group::alternating(5)).numerator == 0);
  CHECK(exact_probability(Group::abelian(6)).numerator == 0);
  const ExactProbability p5 = exact_probability(Group::abelian(5));
  CHECK(p5.to_string() == "2304/78125");
}
