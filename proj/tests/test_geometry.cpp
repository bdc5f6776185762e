#include "sharp/geometry.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace sharp;
using namespace sharp::geometry;

namespace {

struct Case {
  unsigned n;
  std::uint32_t q;
};
constexpr Case kDeskCases[] = {{2, 2}, {3, 2}, {2, 4}};

std::size_t choose2(std::size_t x) { return x * (x - 1) / 2; }

}  // namespace

TEST_CASE("symplectic form") {
  SymplecticSpace space(2, gf::Field(2));
  Vector e1{1, 0, 0, 0}, e2{0, 1, 0, 0}, e3{0, 0, 1, 0};
  CHECK(space.form(e1, e2) == 1);
  CHECK(space.form(e1, e3) == 0);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto x = space.vector(rng() % space.vector_count());
    auto y = space.vector(rng() % space.vector_count());
    CHECK(space.form(x, x) == 0);
    CHECK(space.form(x, y) == space.form(y, x));
  }
}

TEST_CASE("space sizes and the projection map") {
  for (auto [n, q] : kDeskCases) {
    SymplecticSpace space(n, gf::Field::of_order(q));
    std::size_t vectors = 1;
    for (unsigned i = 0; i < 2 * n; ++i) vectors *= q;
    --vectors;
    CHECK(space.vector_count() == vectors);
    CHECK(space.point_count() == vectors / (q - 1));
    // every fibre of the projection has q - 1 vectors
    std::vector<std::size_t> fibre(space.point_count(), 0);
    for (std::size_t v = 0; v < space.vector_count(); ++v) ++fibre[space.point_of(v)];
    for (auto size : fibre) CHECK(size == q - 1);
    for (std::size_t v = 0; v < space.vector_count(); ++v)
      CHECK(space.vector_index(space.vector(v)) == v);
  }
}

TEST_CASE("elliptic quadric sizes and polarization") {
  CHECK(elliptic_quadric_size(2, 2) == 5);
  CHECK(elliptic_quadric_size(3, 2) == 27);
  CHECK(elliptic_quadric_size(2, 4) == 17);
  for (auto [n, q] : kDeskCases) {
    SymplecticSpace space(n, gf::Field::of_order(q));
    auto quadric = elliptic_quadric(space);
    CHECK(space.field().trace(quadric.delta) == 1);
    CHECK(quadric.projective.count() == elliptic_quadric_size(n, q));
    CHECK(quadric.vectors.count() == (q - 1) * quadric.projective.count());
    CHECK(quadric.projective.count() % 2 == 1);
    CHECK((q + 1) % 2 == 1);
    CHECK(polarization_holds(space, quadric));
  }
  CHECK(elliptic_quadric(SymplecticSpace(2, gf::Field(2))).vectors.count() == 51);
  CHECK_THROWS_AS(elliptic_quadric(SymplecticSpace(1, gf::Field(1))), Error);
}

TEST_CASE("line enumeration") {
  const std::pair<Case, std::size_t> expected[] = {{{2, 2}, 35}, {{3, 2}, 651}, {{2, 4}, 357}};
  for (auto [c, count] : expected) {
    SymplecticSpace space(c.n, gf::Field::of_order(c.q));
    auto lines = enumerate_lines(space);
    CHECK(lines.size() == count);
    CHECK(lines.size() == choose2(space.point_count()) / choose2(c.q + 1));
    std::set<std::vector<std::size_t>> distinct;
    for (const auto& line : lines) {
      CHECK(line.points.count() == c.q + 1);
      std::vector<std::size_t> members;
      for (auto p = line.points.find_first(); p != PointSet::npos; p = line.points.find_next(p))
        members.push_back(p);
      distinct.insert(members);
    }
    CHECK(distinct.size() == lines.size());
  }
}

TEST_CASE("nonsingular lines") {
  SymplecticSpace space(2, gf::Field(1));
  auto at = [&](const Vector& v) { return space.point_of(space.vector_index(v)); };
  CHECK(is_nonsingular_line(space, line_through(space, at({1, 0, 0, 0}), at({0, 1, 0, 0}))));
  CHECK_FALSE(is_nonsingular_line(space, line_through(space, at({1, 0, 0, 0}), at({0, 0, 1, 0}))));

  for (auto [n, q] : kDeskCases) {
    SymplecticSpace s(n, gf::Field::of_order(q));
    // Oracle: every pair of points on a nonsingular line is non-orthogonal, and
    // every non-orthogonal pair spans a nonsingular line.
    std::size_t non_orthogonal = 0;
    for (std::size_t a = 0; a < s.point_count(); ++a)
      for (std::size_t b = a + 1; b < s.point_count(); ++b)
        if (s.form(s.representative(a), s.representative(b)) != 0) ++non_orthogonal;
    std::size_t nonsingular = 0;
    for (const auto& line : enumerate_lines(s))
      if (is_nonsingular_line(s, line)) ++nonsingular;
    CHECK(nonsingular == non_orthogonal / choose2(q + 1));
    if (n == 2 && q == 2) CHECK(nonsingular == 20);
  }
}

TEST_CASE("quadric meets nonsingular lines in 0 or 2 points") {
  for (auto [n, q] : kDeskCases) {
    SymplecticSpace space(n, gf::Field::of_order(q));
    auto quadric = elliptic_quadric(space);
    for (const auto& line : enumerate_lines(space)) {
      if (!is_nonsingular_line(space, line)) continue;
      auto meet = intersection_size(quadric.projective, line.points);
      CHECK((meet == 0 || meet == 2));
      auto lifted = vector_lift(space, line.points);
      CHECK(lifted.count() == (q - 1) * (q + 1));
      auto vmeet = intersection_size(quadric.vectors, lifted);
      CHECK((vmeet == 0 || vmeet == 2 * (q - 1)));
    }
  }
}

TEST_CASE("vector lift") {
  SymplecticSpace binary(2, gf::Field(1));
  PointSet some = make_set(binary.point_count());
  some.set(3);
  some.set(7);
  auto lifted = vector_lift(binary, some);
  CHECK(lifted.count() == 2);
  for (std::size_t v = 0; v < binary.vector_count(); ++v)
    CHECK(binary.point_of(v) == v);

  SymplecticSpace quaternary(2, gf::Field(2));
  auto line = line_through(quaternary, 0, 1);
  CHECK(vector_lift(quaternary, line.points).count() == 15);
}

TEST_CASE("symplectic generators") {
  CHECK(symplectic_group_order(2, 2) == 720);
  CHECK(symplectic_group_order(3, 2) == 1451520);
  CHECK(symplectic_group_order(2, 4) == 979200);

  SymplecticSpace space(2, gf::Field(1));
  auto spec = symplectic_generators(space, Action::projective);
  auto group = enumerate(spec);
  REQUIRE(group);
  CHECK(group->order() == 720);
  CHECK(group->order() == *spec.expected_order);

  auto lines = enumerate_lines(space);
  for (auto [n, q] : kDeskCases) {
    SymplecticSpace s(n, gf::Field::of_order(q));
    for (auto action : {Action::projective, Action::vector}) {
      auto gens = symplectic_generators(s, action);
      CHECK(gens.generators.size() == s.field().degree() * (2 * n + choose2(2 * n)));
      if (action != Action::vector) continue;
      std::mt19937_64 rng(n * 10 + q);
      for (const auto& g : gens.generators)
        for (int i = 0; i < 50; ++i) {
          std::size_t a = rng() % s.vector_count(), b = rng() % s.vector_count();
          CHECK(s.form(s.vector(g(static_cast<Point>(a))), s.vector(g(static_cast<Point>(b)))) ==
                s.form(s.vector(a), s.vector(b)));
        }
    }
  }

  // images of nonsingular lines stay nonsingular
  for (const auto& g : spec.generators)
    for (const auto& line : lines) {
      auto image = line_through(space, g(static_cast<Point>(line.u)), g(static_cast<Point>(line.v)));
      CHECK(is_nonsingular_line(space, image) == is_nonsingular_line(space, line));
    }
}

TEST_CASE("frobenius map preserves nonsingularity") {
  SymplecticSpace space(2, gf::Field(2));
  auto frob = frobenius_map(space, Action::projective);
  CHECK_FALSE(frob.is_identity());
  CHECK((frob * frob).is_identity());
  for (const auto& line : enumerate_lines(space)) {
    auto image = line_through(space, frob(static_cast<Point>(line.u)), frob(static_cast<Point>(line.v)));
    CHECK(is_nonsingular_line(space, image) == is_nonsingular_line(space, line));
  }
}
