#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "beauville/counting.hpp"
#include "beauville/errors.hpp"
#include "oracles.hpp"

using namespace beauville;

namespace {

std::vector<u64> sizes(const ClassPartition& c) {
  std::vector<u64> out;
  for (const auto& cl : c.classes()) out.push_back(cl.size);
  return out;
}

// Sum of |N - main term| over sum of main terms, nontrivial classes only.
double remainder_ratio(const CharacterTable& t) {
  double dev = 0, main = 0;
  for (std::size_t x = 1; x < t.size(); ++x)
    for (std::size_t y = 1; y < t.size(); ++y)
      for (std::size_t z = 1; z < t.size(); ++z) {
        double raw = 0;
        frobenius_count_char(t, x, y, z, &raw);
        const double m = frobenius_main_term(t, x, y, z);
        dev += std::abs(raw - m);
        main += m;
      }
  return dev / main;
}

}  // namespace

TEST_CASE("class examples") {
  const ClassPartition a5 = conjugacy_classes(Group::alternating(5));
  CHECK(sizes(a5) == std::vector<u64>{1, 15, 20, 12, 12});
  const ClassPartition ab5 = conjugacy_classes(Group::abelian(5));
  CHECK(ab5.size() == 25);
  for (const auto& c : ab5.classes()) CHECK(c.size == 1);
  const ClassPartition l7 = conjugacy_classes(Group::psl2(7, 1));
  CHECK(l7.size() == 6);
  u64 total = 0;
  for (u64 s : sizes(l7)) total += s;
  CHECK(total == 168);
  CHECK_THROWS_AS(conjugacy_classes(Group::psl2(101, 1), 100000), CapExceeded);
}

TEST_CASE("classes match the brute partition") {
  for (std::string d : {"alt:5", "alt:6", "sym:5", "psl2:7", "psl2:8", "psl2:9", "ab:4"}) {
    const Group g = Group::parse(d);
    const ClassPartition c = conjugacy_classes(g);
    const auto brute = oracle::conjugacy_partition(g);
    std::set<std::size_t> brute_ids;
    for (const auto& [x, id] : brute) brute_ids.insert(id);
    CAPTURE(d);
    CHECK(c.size() == brute_ids.size());
    u64 total = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const ClassData& cl = c[i];
      total += cl.size;
      CHECK(g.order() % cl.size == 0);
      CHECK(cl.size == c.members(i).size());
      CHECK(g.element_order(cl.representative) == cl.element_order);
      for (const Element& m : c.members(i)) {
        CHECK(brute.at(m) == brute.at(cl.representative));
        CHECK(c.index_of(m) == i);
      }
      CHECK(c.index_of(g.inverse(cl.representative)) == c.inverse_class(i));
      if (i > 0) {
        const ClassData& prev = c[i - 1];
        CHECK(std::tie(prev.element_order, prev.size, prev.fingerprint) <
              std::tie(cl.element_order, cl.size, cl.fingerprint));
      }
    }
    CHECK(total == g.order());
    CHECK(c[0].size == 1);
  }
}

TEST_CASE("frobenius brute examples") {
  const ClassPartition a5 = conjugacy_classes(Group::alternating(5));
  CHECK(frobenius_count_brute(a5, 0, 0, 0) == 1);
  CHECK(frobenius_count_brute(a5, 0, 1, 2) == 0);
  CHECK(frobenius_count_brute(a5, 0, 3, 4) == 0);
  CHECK(frobenius_count_brute(a5, 0, 3, 3) == 12);  // 5-cycle classes are self-inverse
  // Order-3 class: 20 * 20 * 20 / 60 * (1 + 0 + 0 + 1/4 - 1/5).
  const std::size_t three = *a5.find(a5.group().fingerprint(a5.group().parse_element("(1 2 3)")));
  CHECK(frobenius_count_brute(a5, three, three, three) == 140);
}

TEST_CASE("character tables") {
  const ClassPartition a5 = conjugacy_classes(Group::alternating(5));
  const CharacterTable t5 = character_table_small(a5);
  CHECK(t5.degrees() == std::vector<u64>{1, 3, 3, 4, 5});
  CHECK(t5.orthogonality_defect() < 1e-8);
  for (const auto& v : t5.values.front()) CHECK(std::abs(v - std::complex<double>(1, 0)) < 1e-12);

  const CharacterTable tab = character_table_small(conjugacy_classes(Group::abelian(5)));
  CHECK(tab.size() == 25);
  for (u64 d : tab.degrees()) CHECK(d == 1);

  for (std::string d : {"psl2:7", "psl2:8", "psl2:9", "psl2:11", "psl2:13", "alt:6", "sym:5", "sym:4", "ab:6",
                        "alt:7"}) {
    const Group g = Group::parse(d);
    const CharacterTable t = character_table_small(conjugacy_classes(g));
    u64 sum = 0;
    for (u64 deg : t.degrees()) sum += deg * deg;
    CAPTURE(d);
    CHECK(sum == g.order());
    CHECK(t.orthogonality_defect() < 1e-8);
    CHECK(t.size() == t.fingerprints.size());
  }
  CHECK(character_table_small(conjugacy_classes(Group::psl2(7, 1))).degrees() ==
        std::vector<u64>{1, 3, 3, 6, 7, 8});
  CHECK_THROWS_AS(character_table_small(conjugacy_classes(Group::psl2(23, 1)), 1000), CapExceeded);
  // Z_8 x Z_8 has 64 classes, above the 60 class limit.
  CHECK_THROWS_AS(character_table_small(conjugacy_classes(Group::abelian(8))), CapExceeded);
}

TEST_CASE("character sums agree with brute counts on every class triple") {
  for (std::string d : {"alt:5", "alt:6", "psl2:7", "psl2:8", "ab:5"}) {
    const ClassPartition c = conjugacy_classes(Group::parse(d));
    const CharacterTable t = character_table_small(c);
    CAPTURE(d);
    for (std::size_t x = 0; x < c.size(); ++x)
      for (std::size_t y = 0; y < c.size(); ++y)
        for (std::size_t z = 0; z < c.size(); ++z) {
          const u64 brute = frobenius_count_brute(c, x, y, z);
          CHECK(frobenius_count_char(t, x, y, z) == brute);
        }
  }
}

TEST_CASE("frobenius counts are invariant under rotation and inversion") {
  for (std::string d : {"alt:6", "psl2:11", "sym:5"}) {
    const ClassPartition c = conjugacy_classes(Group::parse(d));
    for (std::size_t x = 0; x < c.size(); ++x)
      for (std::size_t y = 0; y < c.size(); ++y)
        for (std::size_t z = 0; z < c.size(); ++z) {
          const u64 n = frobenius_count_brute(c, x, y, z);
          CHECK(n == frobenius_count_brute(c, y, z, x));
          CHECK(n == frobenius_count_brute(c, c.inverse_class(x), c.inverse_class(y), c.inverse_class(z)));
        }
  }
}

TEST_CASE("trivial character dominates as q grows") {
  double previous = 1e9;
  for (u64 q : {5, 7, 9, 11, 13}) {
    const CharacterTable t = character_table_small(conjugacy_classes(Group::parse("psl2:" + std::to_string(q))));
    const double r = remainder_ratio(t);
    MESSAGE("psl2:" << q << " remainder ratio " << r);
    CHECK(r < previous);
    previous = r;
  }
}

TEST_CASE("table text round trip is bit exact") {
  for (std::string d : {"alt:5", "psl2:8", "psl2:13"}) {
    const CharacterTable t = character_table_small(conjugacy_classes(Group::parse(d)));
    const std::string text = t.serialize();
    const CharacterTable back = CharacterTable::parse(text);
    CHECK(back.serialize() == text);
    CHECK(back.group == t.group);
    CHECK(back.fingerprints == t.fingerprints);
    CHECK(back.class_sizes == t.class_sizes);
    CHECK(back.class_orders == t.class_orders);
    CHECK(back.tolerance == t.tolerance);
    REQUIRE(back.values.size() == t.values.size());
    for (std::size_t i = 0; i < t.values.size(); ++i)
      for (std::size_t j = 0; j < t.values[i].size(); ++j) {
        CHECK(back.values[i][j].real() == t.values[i][j].real());
        CHECK(back.values[i][j].imag() == t.values[i][j].imag());
      }
  }
  CHECK_THROWS_AS(CharacterTable::parse("{}"), InvalidArgument);
  CHECK_THROWS_AS(CharacterTable::parse("not json"), InvalidArgument);
}

TEST_CASE("table cache") {
  const auto dir = std::filesystem::temp_directory_path() / "beauville_table_cache_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  ::setenv("BEAUVILLE_CACHE_DIR", dir.c_str(), 1);
  const ClassPartition c = conjugacy_classes(Group::psl2(7, 1));
  const CharacterTable first = cached_character_table(c);
  const auto file = dir / "psl2_7.json";
  REQUIRE(std::filesystem::exists(file));
  const CharacterTable second = cached_character_table(c);
  CHECK(second.serialize() == first.serialize());
  // A cached file is trusted when it matches the class list.
  CHECK(CharacterTable::parse([&] {
          std::ifstream in(file);
          return std::string(std::istreambuf_iterator<char>(in), {});
        }())
            .serialize() == first.serialize());
  ::unsetenv("BEAUVILLE_CACHE_DIR");
  std::filesystem::remove_all(dir);
}

TEST_CASE("witten zeta") {
  CHECK(witten_zeta({1, 3, 3, 4, 5}, 2) == doctest::Approx(1 + 2.0 / 9 + 1.0 / 16 + 1.0 / 25).epsilon(1e-12));
  CHECK(witten_zeta({1, 3, 3, 4, 5}, 2) == doctest::Approx(1.3247).epsilon(1e-4));
  const CharacterTable ab = character_table_small(conjugacy_classes(Group::abelian(7)));
  for (double s : {0.5, 1.0, 2.0, 3.7}) CHECK(witten_zeta(ab.degrees(), s) == doctest::Approx(49));
  double previous = 1e9;
  for (u64 q : {5, 7, 9, 11, 13}) {
    const CharacterTable t = character_table_small(conjugacy_classes(Group::parse("psl2:" + std::to_string(q))));
    const double z = witten_zeta(t.degrees(), 2);
    CHECK(z < previous);
    CHECK(z > 1);
    previous = z;
  }
}
