#include "sharp/certify.hpp"
#include "sharp/sharp_search.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace sharp;
using namespace sharp::search;

namespace {

std::string data(const std::string& rel) { return std::string(SHARP_DATA_DIR) + "/" + rel; }

GroupEnumeration load(const std::string& name) {
  return *enumerate(read_group_file(data("groups/" + name + ".grp")));
}

/// Direct check on points: every (x, y) reached by exactly one chosen element.
bool sharply_transitive_on_points(const GroupEnumeration& g, const std::vector<std::size_t>& chosen) {
  const std::size_t n = g.degree();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t count = 0;
      for (auto i : chosen) count += g.images(i)[x] == y;
      if (count != 1) return false;
    }
  return true;
}

/// Every n-subset of the group checked directly.
bool brute_force_exists(const GroupEnumeration& g) {
  const std::size_t n = g.degree(), order = g.order();
  if (order < n) return false;
  std::vector<std::size_t> pick(n);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  while (true) {
    if (sharply_transitive_on_points(g, pick)) return true;
    std::size_t k = n;
    while (k > 0 && pick[k - 1] == order - n + k - 1) --k;
    if (k == 0) return false;
    ++pick[k - 1];
    for (std::size_t j = k; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

TEST_CASE("regular groups are their own sharp sets") {
  for (const char* name : {"c5", "c6"}) {
    auto g = load(name);
    auto result = find_sharp_set(g, 1);
    REQUIRE(result.status == SearchStatus::found);
    CHECK(result.witness->elements.size() == g.order());
    CHECK(sharply_transitive_on_points(g, result.witness->elements));
  }
}

TEST_CASE("sharply 2-transitive set in S5") {
  auto s5 = load("s5");
  auto result = find_sharp_set(s5, 2);
  REQUIRE(result.status == SearchStatus::found);
  const auto& w = result.witness->elements;
  CHECK(w.size() == 20);
  CHECK(verify_sharp_set(s5, w, 2));

  // independent check on ordered pairs of distinct points
  for (Point a = 0; a < 5; ++a)
    for (Point b = 0; b < 5; ++b)
      for (Point c = 0; c < 5; ++c)
        for (Point d = 0; d < 5; ++d) {
          if (a == b || c == d) continue;
          std::size_t count = 0;
          for (auto i : w) count += s5.images(i)[a] == c && s5.images(i)[b] == d;
          CHECK(count == 1);
        }

  auto again = find_sharp_set(s5, 2);
  CHECK(again.witness->elements == w);
  CHECK(again.nodes == result.nodes);

  auto starved = find_sharp_set(s5, 2, 1);
  CHECK(starved.status == SearchStatus::budget_exhausted);
  CHECK_FALSE(starved.witness);
}

TEST_CASE("AGL(1,5) inside S5") {
  auto s5 = load("s5");
  auto agl = load("agl1_5");
  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < agl.order(); ++i) indices.push_back(*s5.index_of(agl.images(i)));
  CHECK(verify_sharp_set(s5, indices, 2));
  CHECK_FALSE(verify_sharp_set(s5, indices, 1));

  auto c5 = load("c5");
  std::vector<std::size_t> all{0, 1, 2, 3, 4};
  CHECK(verify_sharp_set(c5, all, 1));
  std::vector<std::size_t> duplicated{0, 1, 2, 3, 3};
  CHECK_FALSE(verify_sharp_set(c5, duplicated, 1));
}

TEST_CASE("Fano point stabilizer has no sharply transitive subset") {
  auto g = load("fano_stab");
  CHECK(g.order() == 24);
  auto result = find_sharp_set(g, 1);
  CHECK(result.status == SearchStatus::exhaustive_none);
  CHECK_FALSE(brute_force_exists(g));
}

TEST_CASE("search agrees with brute force on small groups") {
  for (const char* name : {"s3", "s4", "a4", "c6", "agl1_5", "fano_stab", "a6_sylow2", "a6_sylow3"}) {
    auto g = load(name);
    auto result = find_sharp_set(g, 1);
    CHECK_MESSAGE((result.status == SearchStatus::found) == brute_force_exists(g), name);
  }
}

TEST_CASE("double counting on found sharp sets") {
  std::mt19937_64 rng(17);
  for (auto [name, t] : {std::pair{"s5", 2}, {"s4", 1}, {"a4", 1}, {"a7", 1}, {"s6", 1}}) {
    auto g = load(name);
    auto result = find_sharp_set(g, t);
    REQUIRE(result.witness);
    std::vector<Permutation> set;
    std::size_t cells = g.degree();
    std::optional<ArrangementAction> action;
    if (t > 1) {
      action.emplace(g.degree(), t);
      cells = action->cell_count();
    }
    for (auto i : result.witness->elements)
      set.push_back(action ? action->induce(g.images(i)) : g.element(i));
    for (int trial = 0; trial < 50; ++trial) {
      PointSet b = make_set(cells), c = make_set(cells);
      for (std::size_t x = 0; x < cells; ++x) {
        if (rng() & 1) b.set(x);
        if (rng() & 1) c.set(x);
      }
      auto report = certify::doublecount_check(set, b, c);
      CHECK(report.sharply_transitive);
      CHECK(report.equality_holds);
    }
  }
}

TEST_CASE("no certificate for groups containing a sharply transitive set") {
  for (const char* name : {"c5", "c6", "s3", "s4", "a4", "s5", "s6", "a6", "a7", "agl1_5"}) {
    auto g = load(name);
    REQUIRE(find_sharp_set(g, 1).status == SearchStatus::found);
    for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
      auto outcome = certify::certificate_search(g, p, {}, 1'000'000);
      CHECK_MESSAGE(!outcome.certificate, name);
      CHECK(outcome.exhaustive);
    }
  }
}
