#include "sharp/perm.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace sharp;

namespace {

Permutation random_element(const GroupEnumeration& g, std::mt19937_64& rng) {
  return g.element(std::uniform_int_distribution<std::size_t>(0, g.order() - 1)(rng));
}

}  // namespace

TEST_CASE("compose acts left to right") {
  auto id = Permutation::identity(3);
  auto a = Permutation::from_cycles(3, {{0, 1}});
  auto b = Permutation::from_cycles(3, {{1, 2}});
  CHECK(compose(id, a) == a);

  // x^(ab) = (x^a)^b: 0 -> 1 -> 2, 1 -> 0 -> 0, 2 -> 2 -> 1
  auto ab = compose(a, b);
  CHECK(ab(0) == 2);
  CHECK(ab(1) == 0);
  CHECK(ab(2) == 1);
  CHECK(ab == Permutation::from_cycles(3, {{0, 2, 1}}));

  auto g = Permutation::from_cycles(5, {{0, 3, 1}, {2, 4}});
  CHECK((g * g.inverse()).is_identity());
  CHECK_THROWS_AS(compose(a, Permutation::identity(4)), Error);
}

TEST_CASE("permutation validation") {
  CHECK_THROWS_AS(Permutation(std::vector<Point>{0, 0, 1}), Error);
  CHECK_THROWS_AS(Permutation(std::vector<Point>{0, 3, 1}), Error);
  CHECK(Permutation::from_cycles(4, {{0, 1}, {2, 3}}).to_cycles() == "(0 1)(2 3)");
}

TEST_CASE("enumerate small groups") {
  auto c5 = enumerate(cyclic_group(5));
  REQUIRE(c5);
  CHECK(c5->order() == 5);
  CHECK(c5->images(0)[3] == 3);

  auto s6 = enumerate(symmetric_group(6));
  REQUIRE(s6);
  CHECK(s6->order() == 720);
  CHECK(s6->is_closed());

  CHECK(enumerate(alternating_group(6))->order() == 360);
  CHECK(enumerate(alternating_group(7))->order() == 2520);
  CHECK(enumerate(alternating_group(4))->order() == 12);
}

TEST_CASE("enumerate reports groups above the cap") {
  CHECK_FALSE(enumerate(symmetric_group(6), 719).has_value());
  CHECK(enumerate(symmetric_group(6), 720).has_value());
  GroupSpec empty{3, {}, "empty", std::nullopt};
  CHECK_THROWS_AS(enumerate(empty), Error);
}

TEST_CASE("enumeration order is deterministic") {
  auto a = enumerate(symmetric_group(5));
  auto b = enumerate(symmetric_group(5));
  for (std::size_t i = 0; i < a->order(); ++i) CHECK(a->element(i) == b->element(i));
}

TEST_CASE("closure and inverses on random samples") {
  std::mt19937_64 rng(7);
  auto g = *enumerate(alternating_group(7));
  for (int trial = 0; trial < 200; ++trial) {
    auto x = random_element(g, rng), y = random_element(g, rng);
    CHECK(g.contains(x * y));
    CHECK(g.contains(x.inverse()));
  }
}

TEST_CASE("induced action on arrangements") {
  CHECK(ArrangementAction(5, 2).cell_count() == 20);
  CHECK(ArrangementAction(24, 2).cell_count() == 552);
  CHECK(ArrangementAction(5, 1).cell_count() == 5);

  ArrangementAction pairs(6, 2);
  auto g = Permutation::from_cycles(6, {{0, 1}});
  auto induced = pairs.induce(g);
  std::vector<Point> from{0, 2}, to{1, 2};
  CHECK(induced(static_cast<Point>(pairs.index_of(from))) == pairs.index_of(to));
  CHECK_THROWS_AS(ArrangementAction(3, 4), Error);

  SUBCASE("homomorphism on random pairs") {
    std::mt19937_64 rng(11);
    auto s6 = *enumerate(symmetric_group(6));
    for (int trial = 0; trial < 100; ++trial) {
      auto x = random_element(s6, rng), y = random_element(s6, rng);
      CHECK(pairs.induce(x * y) == pairs.induce(x) * pairs.induce(y));
    }
  }

  SUBCASE("enumeration keeps element order") {
    auto s4 = *enumerate(symmetric_group(4));
    auto [action, induced_group] = induced_action(s4, 2);
    CHECK(induced_group.order() == 24);
    for (std::size_t i = 0; i < s4.order(); ++i)
      CHECK(induced_group.element(i) == action.induce(s4.images(i)));
  }
}

TEST_CASE("inversions and parity") {
  CHECK(inversions(Permutation::identity(5)) == 0);
  CHECK(inversions(Permutation::from_cycles(4, {{0, 1}})) == 1);
  CHECK(inversions(Permutation::from_cycles(7, {{0, 1}})) == 1);
  CHECK(inversions(Permutation::from_cycles(3, {{0, 1, 2}})) == 2);

  CHECK(parity(Permutation::identity(4)) == Parity::even);
  CHECK(parity(Permutation::from_cycles(4, {{1, 3}})) == Parity::odd);
  CHECK(parity(Permutation::from_cycles(4, {{0, 1}, {2, 3}})) == Parity::even);

  // all of S6: inversion parity agrees with cycle parity and is a homomorphism
  auto s6 = *enumerate(symmetric_group(6));
  std::size_t even = 0;
  for (std::size_t i = 0; i < s6.order(); ++i) {
    auto g = s6.element(i);
    CHECK(parity(g) == cycle_parity(g));
    if (parity(g) == Parity::even) ++even;
  }
  CHECK(even == 360);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto x = random_element(s6, rng), y = random_element(s6, rng);
    bool odd_product = parity(x * y) == Parity::odd;
    CHECK(odd_product == ((parity(x) == Parity::odd) != (parity(y) == Parity::odd)));
  }
}

TEST_CASE("orbits on pairs") {
  auto trivial = *enumerate(GroupSpec{3, {Permutation::identity(3)}, "1", std::nullopt});
  CHECK(orbits_on_pairs(trivial).count() == 9);

  auto s5 = *enumerate(symmetric_group(5));
  auto orbits = orbits_on_pairs(s5);
  CHECK(orbits.count() == 2);
  CHECK(orbits.orbit_of[0] == orbits.orbit_of[6]);   // (0,0), (1,1)
  CHECK(orbits.orbit_of[1] != orbits.orbit_of[0]);   // (0,1) off-diagonal

  auto swap = *enumerate(GroupSpec{2, {Permutation::from_cycles(2, {{0, 1}})}, "C2", std::nullopt});
  auto two = orbits_on_pairs(swap);
  REQUIRE(two.count() == 2);
  CHECK(two.orbit_of[0] == two.orbit_of[3]);
  CHECK(two.orbit_of[1] == two.orbit_of[2]);
  CHECK(two.sizes == std::vector<std::size_t>{2, 2});

  SUBCASE("blocks are invariant under generators") {
    auto spec = GroupSpec{6, {Permutation::from_cycles(6, {{0, 1, 2}}),
                              Permutation::from_cycles(6, {{3, 4}})}, "H", std::nullopt};
    auto h = *enumerate(spec);
    auto p = orbits_on_pairs(h);
    std::size_t total = 0;
    for (auto s : p.sizes) total += s;
    CHECK(total == 36);
    for (const auto& gen : spec.generators)
      for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b)
          CHECK(p.orbit_of[a * 6 + b] == p.orbit_of[gen(a) * 6 + gen(b)]);
  }
}

TEST_CASE("conjugation representatives") {
  auto s3 = *enumerate(symmetric_group(3));
  auto trivial = *enumerate(GroupSpec{3, {Permutation::identity(3)}, "1", std::nullopt});
  auto all = conjugation_reps(s3, trivial);
  CHECK(all.representatives.size() == 6);

  auto classes = conjugation_reps(s3, s3);
  REQUIRE(classes.representatives.size() == 3);
  auto sizes = classes.sizes;
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 2, 3});
  CHECK(classes.representatives[0] == 0);

  auto c2 = *enumerate(GroupSpec{3, {Permutation::from_cycles(3, {{0, 1}})}, "C2", std::nullopt});
  auto partial = conjugation_reps(s3, c2);
  std::size_t total = 0;
  for (auto s : partial.sizes) total += s;
  CHECK(total == 6);
  for (std::size_t i = 0; i < partial.representatives.size(); ++i)
    CHECK(partial.class_of[partial.representatives[i]] == i);

  auto outside = *enumerate(GroupSpec{3, {Permutation::from_cycles(3, {{0, 1}})}, "C2", std::nullopt});
  auto c3 = *enumerate(cyclic_group(3));
  CHECK_THROWS_AS(conjugation_reps(c3, outside), Error);
}

TEST_CASE("fixed-point-free elements") {
  CHECK_FALSE(is_fixed_point_free(Permutation::identity(3)));
  CHECK(is_fixed_point_free(Permutation::from_cycles(4, {{0, 1}, {2, 3}})));
  CHECK_FALSE(is_fixed_point_free(Permutation::from_cycles(3, {{0, 1}})));
}

TEST_CASE("p-subgroups") {
  auto a6 = *enumerate(alternating_group(6));
  auto sylow2 = find_p_subgroup(a6, 2, 8, 1);
  REQUIRE(sylow2);
  auto h = *enumerate(*sylow2);
  CHECK(h.order() == 8);
  for (std::size_t i = 0; i < h.order(); ++i) CHECK(a6.contains(h.element(i)));
  auto sylow3 = find_p_subgroup(a6, 3, 9, 1);
  REQUIRE(sylow3);
  CHECK(enumerate(*sylow3)->order() == 9);
}

TEST_CASE("group file format") {
  auto spec = parse_group("# comment\nn 4\norder 4\n1 2 3 0  # 4-cycle\n\n", "c4");
  CHECK(spec.degree == 4);
  CHECK(spec.expected_order == 4u);
  REQUIRE(spec.generators.size() == 1);
  CHECK(enumerate(spec)->order() == 4);
  CHECK(parse_group(format_group(spec)).generators == spec.generators);

  CHECK_THROWS_AS(parse_group("n 3\n0 1\n"), DataError);
  CHECK_THROWS_AS(parse_group("n 3\n0 1 1\n"), DataError);
  CHECK_THROWS_AS(parse_group("n 3\n0 1 x\n"), DataError);
  CHECK_THROWS_AS(parse_group("3\n0 1 2\n"), DataError);
  CHECK_THROWS_AS(read_group_file("/nonexistent/file.grp"), DataError);
}
