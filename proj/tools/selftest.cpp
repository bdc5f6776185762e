#include "selftest.hpp"

#include "sharp/certify.hpp"
#include "sharp/designs.hpp"
#include "sharp/geometry.hpp"
#include "sharp/linsys.hpp"
#include "sharp/sharp_search.hpp"

#include <functional>
#include <random>

namespace sharp::cli {

namespace {

bool witt_design() {
  const auto w = designs::golay_witt_design();
  if (w.blocks.size() != 253 || !designs::steiner_check(w, 4).passed) return false;
  for (const auto& [size, count] : designs::intersection_spectrum(w))
    if (size != 1 && size != 3) return false;
  return true;
}

bool mclaughlin_graph() {
  const auto g = designs::mclaughlin_graph(designs::golay_witt_design());
  return designs::srg_check(g, {275, 112, 30, 56}).passed;
}

bool quadric_sizes() {
  for (auto [n, q] : {std::pair{2u, 2u}, {3u, 2u}, {2u, 4u}}) {
    geometry::SymplecticSpace space(n, gf::Field::of_order(q));
    if (geometry::elliptic_quadric(space).projective.count() != geometry::elliptic_quadric_size(n, q)) return false;
  }
  return true;
}

bool inversion_parity() {
  const auto s6 = *enumerate(symmetric_group(6));
  for (std::size_t i = 0; i < s6.order(); ++i) {
    const auto g = s6.element(i);
    if ((inversions(g) % 2 == 0) != (cycle_parity(g) == Parity::even)) return false;
  }
  return true;
}

bool doublecount() {
  const auto c7 = *enumerate(cyclic_group(7));
  std::vector<Permutation> set;
  for (std::size_t i = 0; i < c7.order(); ++i) set.push_back(c7.element(i));
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    PointSet b = make_set(7), c = make_set(7);
    for (std::size_t x = 0; x < 7; ++x) {
      if (rng() & 1) b.set(x);
      if (rng() & 1) c.set(x);
    }
    if (!certify::doublecount_check(set, b, c).equality_holds) return false;
  }
  return true;
}

bool case_conclusions() {
  certify::CaseOptions alt;
  alt.n = 6;
  certify::CaseOptions five;
  five.n = 5;
  certify::CaseOptions sp;
  sp.n = 2;
  return certify::run_alt(alt).conclusion == certify::Conclusion::refuted &&
         certify::run_alt(five).conclusion == certify::Conclusion::hypothesis_not_met &&
         certify::run_sp(sp).conclusion == certify::Conclusion::refuted &&
         certify::run_m22({}).conclusion == certify::Conclusion::refuted;
}

bool sharp_search() {
  const auto s5 = *enumerate(symmetric_group(5));
  const auto found = search::find_sharp_set(s5, 2);
  return found.witness && found.witness->elements.size() == 20;
}

bool solver_coherence() {
  using namespace linsys;
  const auto a6 = induced_action(*enumerate(alternating_group(6)), 2).second;
  const auto c5 = *enumerate(cyclic_group(5));
  return solve_mod_p(build_full_system(a6), 2).status == SolveStatus::infeasible &&
         solve_integer(build_full_system(c5)).status == SolveStatus::solvable &&
         solve_integer(make_system(1, 1, {2}, {1})).status == SolveStatus::infeasible &&
         solve_nonneg_integer(make_system(2, 2, {1, 1, 1, -1}, {1, 2})).status == SolveStatus::infeasible;
}

bool design_arithmetic() {
  using designs::RefutationVerdict;
  return designs::symmetric_design_refutation({7, 3, 1}).verdict == RefutationVerdict::refuted_non_integral &&
         designs::symmetric_design_refutation({11, 5, 2}).verdict == RefutationVerdict::refuted_non_integral &&
         designs::symmetric_design_refutation({4, 3, 2}).verdict == RefutationVerdict::trivial_design;
}

}  // namespace

std::vector<SelftestCheck> run_selftest() {
  const std::vector<std::pair<std::string, std::function<bool()>>> checks{
      {"Witt design S(4,7,23)", witt_design},
      {"McLaughlin graph SRG(275,112,30,56)", mclaughlin_graph},
      {"elliptic quadric sizes", quadric_sizes},
      {"inversion parity equals cycle parity on S6", inversion_parity},
      {"double counting on C7", doublecount},
      {"case conclusions", case_conclusions},
      {"sharply 2-transitive set in S5", sharp_search},
      {"solver coherence", solver_coherence},
      {"symmetric design arithmetic", design_arithmetic},
  };
  std::vector<SelftestCheck> out;
  for (const auto& [name, check] : checks) {
    SelftestCheck result{name, false, ""};
    try {
      result.passed = check();
    } catch (const std::exception& e) {
      result.detail = e.what();
    }
    out.push_back(std::move(result));
  }
  return out;
}

}  // namespace sharp::cli
