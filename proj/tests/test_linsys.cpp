#include "sharp/certify.hpp"
#include "sharp/linsys.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <array>
#include <functional>
#include <numeric>
#include <random>
#include <set>

using namespace sharp;
using namespace sharp::linsys;
using namespace sharp::oracles;

namespace {

std::string data(const std::string& rel) { return std::string(SHARP_DATA_DIR) + "/" + rel; }

GroupEnumeration load(const std::string& name) {
  return *enumerate(read_group_file(data("groups/" + name + ".grp")));
}

GroupEnumeration trivial_group(std::size_t n) { return generated_subgroup(n, {}); }

std::vector<mpq_class> ones(std::size_t n) { return std::vector<mpq_class>(n, 1); }

std::multiset<std::vector<std::int64_t>> column_multiset(const ExactSystem& s,
                                                         const std::vector<std::size_t>& row_order) {
  std::multiset<std::vector<std::int64_t>> out;
  for (std::size_t c = 0; c < s.cols; ++c) {
    std::vector<std::int64_t> col;
    for (auto r : row_order) col.push_back(s.at(r, c));
    out.insert(col);
  }
  return out;
}

}  // namespace

TEST_CASE("full system construction") {
  auto c3 = *enumerate(cyclic_group(3));
  auto s = build_full_system(c3);
  CHECK(s.rows == 9);
  CHECK(s.cols == 3);
  CHECK(witness_satisfies(s, ones(3)));
  for (std::size_t r = 0; r < s.rows; ++r) CHECK(s.b[r] == 1);

  auto a6 = *enumerate(alternating_group(6));
  auto [pairs, induced] = induced_action(a6, 2);
  auto big = build_full_system(induced);
  CHECK(big.rows == 900);
  CHECK(big.cols == 360);

  auto trivial = trivial_group(2);
  auto t = build_full_system(trivial);
  CHECK(solve_rational(t).status == SolveStatus::infeasible);
  CHECK(solve_integer(t).status == SolveStatus::infeasible);
  CHECK(solve_mod_p(t, 2).status == SolveStatus::infeasible);

  auto text = build_full_system(*enumerate(cyclic_group(2))).export_text();
  CHECK(text == "4 2\n1 0 1\n0 1 1\n0 1 1\n1 0 1\n");
}

TEST_CASE("system H") {
  auto s3 = load("s3");
  auto h = subgroup(3, {{{0, 1}}});
  auto sys = build_H_system(s3, h);
  CHECK(sys.rows == pair_orbit_count(h));
  CHECK(std::accumulate(sys.b.begin(), sys.b.end(), std::int64_t{0}) == 9);

  auto s4 = load("s4"), a4 = load("a4");
  std::vector<std::pair<const GroupEnumeration*, GroupEnumeration>> cases;
  cases.emplace_back(&s3, subgroup(3, {{{0, 1, 2}}}));
  cases.emplace_back(&s3, h);
  cases.emplace_back(&s4, subgroup(4, {{{0, 1}, {2, 3}}}));
  cases.emplace_back(&s4, subgroup(4, {{{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}}));
  cases.emplace_back(&s4, subgroup(4, {{{0, 1, 2, 3}}}));
  cases.emplace_back(&a4, subgroup(4, {{{0, 1}, {2, 3}}}));
  cases.emplace_back(&a4, subgroup(4, {{{0, 1, 2}}}));
  for (const auto& [g, sub] : cases) {
    auto hs = build_H_system(*g, sub);
    const auto n = static_cast<std::int64_t>(g->degree());
    CHECK(hs.rows == pair_orbit_count(sub));
    CHECK(std::accumulate(hs.b.begin(), hs.b.end(), std::int64_t{0}) == n * n);
    for (std::size_t c = 0; c < hs.cols; ++c) {
      std::int64_t sum = 0;
      for (std::size_t r = 0; r < hs.rows; ++r) sum += hs.at(r, c);
      CHECK(sum == n);
    }
    // every class member gives the same coefficients
    auto classes = conjugation_reps(*g, sub);
    auto orbits = orbits_on_pairs(sub);
    for (std::size_t e = 0; e < g->order(); ++e) {
      std::vector<std::int64_t> col(hs.rows, 0);
      auto img = g->images(e);
      for (std::size_t w = 0; w < g->degree(); ++w) ++col[orbits.orbit_of[w * g->degree() + img[w]]];
      for (std::size_t r = 0; r < hs.rows; ++r) CHECK(col[r] == hs.at(r, classes.class_of[e]));
    }
  }

  // H = 1 reproduces the full system up to labels
  auto full = build_full_system(s4);
  auto collapsed = build_H_system(s4, trivial_group(4));
  REQUIRE(collapsed.rows == full.rows);
  REQUIRE(collapsed.cols == full.cols);
  std::vector<std::size_t> row_order(full.rows);
  std::iota(row_order.begin(), row_order.end(), std::size_t{0});
  std::vector<std::size_t> collapsed_order(full.rows);
  auto orbits = orbits_on_pairs(trivial_group(4));
  for (std::size_t pair = 0; pair < full.rows; ++pair) collapsed_order[pair] = orbits.orbit_of[pair];
  CHECK(column_multiset(full, row_order) == column_multiset(collapsed, collapsed_order));

  CHECK_THROWS_AS(build_H_system(a4, subgroup(4, {{{0, 1}}})), Error);
}

TEST_CASE("solving over F_p") {
  for (const char* name : {"c5", "c6"}) {
    auto g = load(name);
    auto sys = build_full_system(g);
    for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
      auto out = solve_mod_p(sys, p);
      REQUIRE(out.status == SolveStatus::solvable);
      CHECK(out.witness == ones(g.order()));
    }
  }
  auto a6 = *enumerate(alternating_group(6));
  auto a6_pairs = induced_action(a6, 2).second;
  CHECK(solve_mod_p(build_full_system(a6_pairs), 2).status == SolveStatus::infeasible);
  auto sp = load("sp4_2");
  CHECK(solve_mod_p(build_full_system(sp), 2).status == SolveStatus::infeasible);
  CHECK_THROWS_AS(solve_mod_p(build_full_system(sp), 4), Error);
}

TEST_CASE("prime-power moduli") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 3, cols = 4;
    std::vector<std::int64_t> a(rows * cols), b(rows);
    for (auto& v : a) v = static_cast<std::int64_t>(rng() % 7) - 3;
    for (auto& v : b) v = static_cast<std::int64_t>(rng() % 9) - 4;
    if (trial % 2) {
      for (std::size_t c = 0; c < cols; ++c) a[c] *= 2;
    }
    auto sys = make_system(rows, cols, a, b);
    for (std::uint64_t p : {2u, 3u}) {
      CHECK((solve_mod_p(sys, p).status == SolveStatus::solvable) ==
            (solve_mod_prime_power(sys, p, 1).status == SolveStatus::solvable));
      // every residue vector modulo p^2
      const std::uint64_t q = p * p;
      bool exists = false;
      std::vector<mpq_class> x(cols);
      for (std::uint64_t code = 0; code < q * q * q * q && !exists; ++code) {
        std::uint64_t c = code;
        for (std::size_t j = 0; j < cols; ++j, c /= q) x[j] = static_cast<unsigned long>(c % q);
        exists = witness_satisfies(sys, x, q);
      }
      auto out = solve_mod_prime_power(sys, p, 2);
      CHECK((out.status == SolveStatus::solvable) == exists);
      if (out.status == SolveStatus::solvable) CHECK(witness_satisfies(sys, out.witness, q));
    }
  }
}

TEST_CASE("rational and integer solving of small systems") {
  auto half = make_system(1, 1, {2}, {1});
  auto q = solve_rational(half);
  REQUIRE(q.status == SolveStatus::solvable);
  CHECK(q.witness[0] == mpq_class(1, 2));
  CHECK(solve_integer(half).status == SolveStatus::infeasible);
  CHECK(solve_integer(half, {false}).status == SolveStatus::infeasible);

  auto c5 = build_full_system(load("c5"));
  CHECK(solve_rational(c5).status == SolveStatus::solvable);
  auto z = solve_integer(c5, {false});
  REQUIRE(z.status == SolveStatus::solvable);
  CHECK(z.witness == ones(5));

  // 6x + 10y + 15z = 1 needs the full gcd chain
  auto gcd = make_system(1, 3, {6, 10, 15}, {1});
  auto g = solve_integer(gcd, {false});
  REQUIRE(g.status == SolveStatus::solvable);
  CHECK(witness_satisfies(gcd, g.witness));
}

TEST_CASE("integer solver against bounded search") {
  std::mt19937_64 rng(2024);
  std::size_t solvable = 0, infeasible_count = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto sys = random_integer_instance(rng, trial);
    const bool bounded = bounded_integer_solution(sys);
    for (bool precheck : {true, false}) {
      auto out = solve_integer(sys, {precheck});
      CHECK((out.status == SolveStatus::solvable) == bounded);
      if (out.status == SolveStatus::solvable) CHECK(witness_satisfies(sys, out.witness));
    }
    (bounded ? solvable : infeasible_count)++;
  }
  CHECK(solvable > 0);
  CHECK(infeasible_count > 0);
}

TEST_CASE("non-negative integer solving") {
  auto c5 = build_full_system(load("c5"));
  auto out = solve_nonneg_integer(c5);
  REQUIRE(out.status == SolveStatus::solvable);
  CHECK(out.witness == ones(5));

  auto forced = make_system(2, 2, {1, 1, 1, -1}, {1, 2});
  CHECK(solve_nonneg_integer(forced).status == SolveStatus::infeasible);
  CHECK(solve_rational(forced).status == SolveStatus::solvable);

  // the relaxation has fractional points all the way out; parity settles it
  auto endless = make_system(1, 2, {2, -2}, {1});
  CHECK(solve_nonneg_integer(endless, 50).status == SolveStatus::infeasible);

  std::mt19937_64 rng(99);
  std::size_t yes = 0, no = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto sys = random_nonneg_instance(rng, trial);
    const bool exists = nonneg_solution_exists(sys);
    auto result = solve_nonneg_integer(sys);
    REQUIRE(result.status != SolveStatus::unknown_budget);
    CHECK((result.status == SolveStatus::solvable) == exists);
    if (result.status == SolveStatus::solvable) CHECK(witness_satisfies(sys, result.witness));
    (exists ? yes : no)++;
  }
  CHECK(yes > 0);
  CHECK(no > 0);
}

TEST_CASE("random restriction probe") {
  auto c6 = build_full_system(load("c6"));
  auto out = random_restriction_probe(c6, {6, 5, 0, false});
  CHECK(out.status == SolveStatus::solvable);
  CHECK(witness_satisfies(c6, out.witness));

  auto s3 = build_full_system(load("s3"));
  auto partial = random_restriction_probe(s3, {3, 50, 1, true});
  REQUIRE(partial.status == SolveStatus::solvable);
  CHECK(witness_satisfies(s3, partial.witness));

  auto none = random_restriction_probe(c6, {0, 10, 0, false});
  CHECK(none.status == SolveStatus::unknown_budget);
  CHECK_THROWS_AS(random_restriction_probe(c6, {7, 1, 0, false}), Error);
}

TEST_CASE("fixed-point-free restriction") {
  auto c5 = load("c5");
  auto sys = build_full_system(c5);
  auto kept = restrict_to_fpf(sys, c5);
  CHECK(kept.cols == 5);
  CHECK(kept.a == sys.a);

  auto s3 = load("s3");
  auto s3_sys = restrict_to_fpf(build_full_system(s3), s3);
  REQUIRE(s3_sys.cols == 3);
  std::size_t identity = 0, three_cycles = 0;
  for (auto e : s3_sys.variable_elements) {
    auto g = s3.element(e);
    if (g.is_identity()) ++identity;
    if (is_fixed_point_free(g)) ++three_cycles;
  }
  CHECK(identity == 1);
  CHECK(three_cycles == 2);

  auto pinned = restrict_to_fpf(sys, c5, true);
  CHECK(pinned.cols == 4);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(pinned.b[i * 5 + j] == (i == j ? 0 : 1));
  CHECK(solve_integer(pinned).status == SolveStatus::solvable);
}

TEST_CASE("lemma down on subgroup chains") {
  auto s4 = load("s4"), a4 = load("a4");
  auto c2 = subgroup(4, {{{0, 1}, {2, 3}}});
  auto v4 = subgroup(4, {{{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}});
  auto one = trivial_group(4);
  for (const auto& [u, v] : {std::pair{&one, &c2}, {&c2, &v4}, {&one, &v4}}) {
    auto report = lemma_down_check(s4, *u, *v);
    CHECK(report.holds);
    CHECK(report.u_solvable);
  }
  CHECK(lemma_down_check(a4, c2, v4).holds);
  CHECK(lemma_down_check(a4, one, v4).holds);
  CHECK_THROWS_AS(lemma_down_check(s4, v4, c2), Error);

  // an insoluble base case: A6 on pairs collapses through its Sylow subgroups
  auto a6 = *enumerate(alternating_group(6));
  auto a6_pairs = induced_action(a6, 2).second;
  auto syl2 = induced_action(load("a6_sylow2"), 2).second;
  auto report = lemma_down_check(a6_pairs, trivial_group(30), syl2);
  CHECK_FALSE(report.u_solvable);
  CHECK(report.holds);
}

TEST_CASE("local-global comparison") {
  auto c6 = load("c6");
  auto c6_report = local_global_check(c6, {{2, subgroup(6, {{{0, 2, 4}, {1, 3, 5}}})},
                                           {3, subgroup(6, {{{0, 3}, {1, 4}, {2, 5}}})}});
  CHECK(c6_report.full_integral);
  CHECK(c6_report.equivalence_holds);
  CHECK(c6_report.lifting_holds);
  for (const auto& p : c6_report.primes) CHECK(p.h_integral);

  auto s3 = load("s3");
  auto s3_report = local_global_check(s3, {{2, subgroup(3, {{{0, 1, 2}}})}, {3, subgroup(3, {{{0, 1}}})}});
  CHECK(s3_report.full_integral);
  CHECK(s3_report.equivalence_holds);
  CHECK(s3_report.lifting_holds);

  auto a6 = *enumerate(alternating_group(6));
  auto a6_pairs = induced_action(a6, 2).second;
  auto syl2 = induced_action(load("a6_sylow2"), 2).second;
  auto syl3 = induced_action(load("a6_sylow3"), 2).second;
  auto a6_report = local_global_check(a6_pairs, {{2, syl3}, {3, syl2}, {5, syl2}});
  CHECK_FALSE(a6_report.full_integral);
  CHECK(std::any_of(a6_report.primes.begin(), a6_report.primes.end(),
                    [](const PrimeLocalReport& p) { return !p.h_integral; }));
  CHECK(a6_report.equivalence_holds);
  CHECK(a6_report.lifting_holds);

  CHECK_THROWS_AS(local_global_check(s3, {{2, subgroup(3, {{{0, 1}}})}, {3, subgroup(3, {{{0, 1}}})}}), Error);
  CHECK_THROWS_AS(local_global_check(s3, {{2, subgroup(3, {{{0, 1, 2}}})}}), Error);
}

TEST_CASE("ring monotonicity and the whole-group collapse") {
  std::vector<std::pair<GroupEnumeration, std::vector<GroupEnumeration>>> corpus;
  corpus.push_back({load("s3"), {trivial_group(3), subgroup(3, {{{0, 1}}}), subgroup(3, {{{0, 1, 2}}})}});
  corpus.push_back({load("a4"), {trivial_group(4), subgroup(4, {{{0, 1}, {2, 3}}}), subgroup(4, {{{0, 1, 2}}})}});
  corpus.push_back({load("fano_stab"), {trivial_group(6)}});
  corpus.push_back({load("agl1_5"), {trivial_group(5), subgroup(5, {{{0, 1, 2, 3, 4}}})}});
  corpus.push_back({induced_action(load("s3"), 2).second, {trivial_group(6)}});
  for (const auto& [g, subs] : corpus) {
    for (const auto& h : subs) {
      auto sys = build_H_system(g, h);
      const bool nn = solve_nonneg_integer(sys).status == SolveStatus::solvable;
      const bool z = solve_integer(sys).status == SolveStatus::solvable;
      const bool qq = solve_rational(sys).status == SolveStatus::solvable;
      CHECK((!nn || z));
      CHECK((!z || qq));
      for (std::uint64_t p : {2u, 3u, 5u}) CHECK((!z || solve_mod_p(sys, p).status == SolveStatus::solvable));
    }
    const bool full_q = solve_rational(build_full_system(g)).status == SolveStatus::solvable;
    CHECK(full_q == (rational_via_whole_group(g).status == SolveStatus::solvable));
  }
}

TEST_CASE("certificates and solvers agree") {
  // A6 on ordered pairs: the certificate lives on the same 30 cells
  certify::CaseOptions alt;
  alt.n = 6;
  auto refuted = certify::run_alt(alt);
  REQUIRE(refuted.conclusion == certify::Conclusion::refuted);
  auto a6_pairs = induced_action(*enumerate(alternating_group(6)), 2).second;
  CHECK(solve_mod_p(build_full_system(a6_pairs), refuted.certificate->p).status == SolveStatus::infeasible);

  certify::CaseOptions sp;
  sp.n = 2;
  sp.q = 2;
  auto sp_report = certify::run_sp(sp);
  REQUIRE(sp_report.conclusion == certify::Conclusion::refuted);
  CHECK(solve_mod_p(build_full_system(load("sp4_2")), sp_report.certificate->p).status == SolveStatus::infeasible);
}
