#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/distributions/chi_squared.hpp>

#include "beauville/abelian.hpp"
#include "beauville/errors.hpp"
#include "beauville/group.hpp"
#include "beauville/psl2.hpp"
#include "oracles.hpp"

using namespace beauville;

namespace {

// Fingerprint equality must coincide with conjugacy on every pair.
void check_fingerprints_exact(const Group& g) {
  const auto brute = oracle::conjugacy_partition(g);
  std::map<std::size_t, Fingerprint> by_class;
  std::map<Fingerprint, std::size_t> by_print;
  for (const auto& [x, cls] : brute) {
    const Fingerprint f = g.fingerprint(x);
    auto [it, fresh] = by_class.emplace(cls, f);
    CHECK(it->second == f);
    auto [jt, fresh2] = by_print.emplace(f, cls);
    CHECK(jt->second == cls);
  }
  CHECK(by_class.size() == by_print.size());
}

double chi_square_critical(std::size_t cells, double alpha) {
  boost::math::chi_squared dist(static_cast<double>(cells - 1));
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

}  // namespace

TEST_CASE("element orders") {
  const Group ab5 = Group::abelian(5);
  CHECK(ab5.element_order(ab5.parse_element("(1,0)")) == 5);
  const Group a5 = Group::alternating(5);
  CHECK(a5.element_order(a5.parse_element("(1 2 3 4 5)")) == 5);
  const Group l7 = Group::psl2(7, 1);
  CHECK(l7.element_order(l7.parse_element("[[1,1],[0,1]]")) == 7);
  CHECK(l7.element_order(l7.identity()) == 1);
}

TEST_CASE("abelian generation") {
  const Group ab5 = Group::abelian(5);
  CHECK(ab5.generates(ab5.parse_element("(1,0)"), ab5.parse_element("(0,1)")));
  CHECK_FALSE(ab5.generates(ab5.parse_element("(1,0)"), ab5.parse_element("(2,0)")));
}

TEST_CASE("abelian determinant criterion agrees with closure for n <= 10") {
  for (u64 n = 2; n <= 10; ++n) {
    const Group g = Group::abelian(n);
    const auto all = g.elements(1000);
    for (const Element& x : all)
      for (const Element& y : all) {
        const bool closed = oracle::closure(g, {x, y}).size() == n * n;
        CHECK(g.generates(x, y) == closed);
      }
  }
}

TEST_CASE("enumeration") {
  CHECK(Group::alternating(5).elements(100).size() == 60);
  CHECK(Group::symmetric(5).elements(1000).size() == 120);
  CHECK(Group::psl2(7, 1).elements(1000).size() == 168);
  CHECK(Group::psl2(2, 3).elements(1000).size() == 504);
  CHECK(Group::abelian(6).elements(1000).size() == 36);
  CHECK_THROWS_AS(Group::psl2(7, 1).elements(100), CapExceeded);
  CHECK_THROWS_AS(Group::alternating(30).elements(1000), CapExceeded);
  for (std::string d : {"alt:6", "sym:4", "psl2:9", "psl2:8", "ab:7"}) {
    const Group g = Group::parse(d);
    const auto all = g.elements(10000);
    const oracle::ElementSet distinct(all.begin(), all.end());
    CHECK(distinct.size() == all.size());
    CHECK(all.size() == g.order());
    for (const Element& x : all) CHECK_NOTHROW(g.check_member(x));
  }
}

TEST_CASE("group orders") {
  CHECK(Group::psl2(7, 1).order() == 168);
  CHECK(Group::psl2(2, 7).order() == 128ULL * (128 * 128 - 1));
  CHECK(Group::psl2(101, 1).order() == 101ULL * (101 * 101 - 1) / 2);
  CHECK(Group::alternating(20).order() == 1216451004088320000ULL);
  CHECK_THROWS_AS(Group::alternating(21).order(), CapExceeded);
  CHECK(Group::alternating(21).order_string() == "25545471085854720000");
}

TEST_CASE("descriptors") {
  CHECK(Group::parse("psl2:2^3").descriptor() == "psl2:2^3");
  CHECK(Group::parse("psl2:8").descriptor() == "psl2:2^3");
  CHECK(Group::parse("alt:7").descriptor() == "alt:7");
  CHECK(Group::parse("sym:4").kind() == GroupKind::symmetric);
  CHECK(Group::parse("ab:5").descriptor() == "ab:5");
  CHECK_THROWS_AS(Group::parse("foo:3"), InvalidArgument);
  CHECK_THROWS_AS(Group::parse("alt"), InvalidArgument);
  CHECK_THROWS_AS(Group::parse("alt:2"), InvalidArgument);
  CHECK_THROWS_AS(Group::parse("psl2:3"), InvalidArgument);
  CHECK_THROWS_AS(Group::parse("psl2:6"), InvalidArgument);
  CHECK_THROWS_AS(Group::parse("ab:1"), InvalidArgument);
  CHECK_THROWS_AS(Group::parse("ab:x"), InvalidArgument);
}

TEST_CASE("handle mismatch") {
  const Group a5 = Group::alternating(5);
  const Group a6 = Group::alternating(6);
  const Group l7 = Group::psl2(7, 1);
  const Group ab5 = Group::abelian(5), ab7 = Group::abelian(7);
  CHECK_THROWS_AS(l7.multiply(a5.identity(), l7.identity()), HandleMismatch);
  CHECK_THROWS_AS(a6.multiply(a5.identity(), a6.identity()), HandleMismatch);
  CHECK_THROWS_AS(ab7.inverse(ab5.identity()), HandleMismatch);
  CHECK_THROWS_AS(a5.check_member(Permutation::parse(5, "(1 2)")), HandleMismatch);
  CHECK_THROWS_AS(a5.parse_element("(1 2)"), InvalidArgument);
  CHECK_NOTHROW(Group::symmetric(5).parse_element("(1 2)"));
}

TEST_CASE("fingerprints coincide with brute conjugacy") {
  for (std::string d : {"alt:5", "alt:6", "sym:5", "psl2:4", "psl2:5", "psl2:7", "psl2:8", "psl2:9", "psl2:11",
                        "psl2:13"}) {
    CAPTURE(d);
    check_fingerprints_exact(Group::parse(d));
  }
  for (u64 n = 2; n <= 10; ++n) check_fingerprints_exact(Group::abelian(n));
}

TEST_CASE("fingerprint text round trip") {
  const Fingerprint f{{3, 1, 1, -1}};
  CHECK(f.to_string() == "3.1.1.-1");
  CHECK(Fingerprint::parse(f.to_string()) == f);
  CHECK_THROWS_AS(Fingerprint::parse("1..2"), InvalidArgument);
  CHECK_THROWS_AS(Fingerprint::parse(""), InvalidArgument);
}

TEST_CASE("lagrange on random elements") {
  for (std::string d : {"psl2:101", "psl2:2^7", "psl2:5^2", "alt:9", "sym:7", "ab:12"}) {
    const Group g = Group::parse(d);
    Rng rng = stream_rng(3, 0);
    for (int i = 0; i < 10000; ++i) {
      const Element x = g.random_element(rng);
      const u64 k = g.element_order(x);
      CHECK(g.order() % k == 0);
      CHECK(g.is_identity(g.power(x, k)));
    }
  }
}

TEST_CASE("generation is symmetric and conjugation invariant") {
  for (std::string d : {"psl2:11", "psl2:2^4", "alt:6", "sym:5", "ab:9"}) {
    const Group g = Group::parse(d);
    Rng rng = stream_rng(4, 0);
    for (int i = 0; i < 300; ++i) {
      const Element x = g.random_element(rng), y = g.random_element(rng), h = g.random_element(rng);
      const bool gen = g.generates(x, y);
      CHECK(gen == g.generates(y, x));
      CHECK(gen == g.generates(g.conjugate(x, h), g.conjugate(y, h)));
    }
  }
}

TEST_CASE("random elements are uniform on small groups") {
  for (std::string d : {"alt:5", "sym:4", "psl2:7", "psl2:8", "ab:6"}) {
    const Group g = Group::parse(d);
    const auto all = g.elements(1000);
    std::unordered_map<Element, u64, ElementHash> counts;
    const u64 per_cell = 200;
    const u64 n = per_cell * all.size();
    for (u64 i = 0; i < n; ++i) {
      Rng rng = stream_rng(77, i);
      counts[g.random_element(rng)]++;
    }
    double chi2 = 0;
    for (const Element& x : all) {
      const double diff = static_cast<double>(counts[x]) - static_cast<double>(per_cell);
      chi2 += diff * diff / static_cast<double>(per_cell);
    }
    CAPTURE(d);
    CHECK(counts.size() == all.size());
    CHECK(chi2 < chi_square_critical(all.size(), 0.01));
  }
}

TEST_CASE("rng streams depend only on seed and index") {
  Rng a = stream_rng(1729, 5), b = stream_rng(1729, 5), c = stream_rng(1729, 6), d = stream_rng(1730, 5);
  const u64 va = a();
  CHECK(va == b());
  CHECK(va != c());
  CHECK(va != d());
}
