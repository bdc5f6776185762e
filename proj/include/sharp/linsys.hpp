#pragma once

#include "sharp/perm.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sharp::linsys {

/// A x = b with non-negative integer coefficients as built. Columns stand for
/// group elements (or conjugation-class representatives), rows for cells of
/// Omega x Omega (or orbits of a subgroup on it).
struct ExactSystem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> a;  // row-major
  std::vector<std::int64_t> b;
  /// Element index (in the group the system was built from) of every column.
  std::vector<std::size_t> variable_elements;
  std::vector<std::string> variable_labels;
  std::vector<std::string> equation_labels;

  std::int64_t at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
  std::int64_t& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }

  /// `rows cols`, then one line per equation: the coefficients followed by the right side.
  std::string export_text() const;
  /// Keeps the listed columns in order.
  ExactSystem restrict_columns(const std::vector<std::size_t>& keep) const;
};

ExactSystem make_system(std::size_t rows, std::size_t cols, std::vector<std::int64_t> a,
                        std::vector<std::int64_t> b);

/// Sum over g of x_g P(g) = J for the group acting on its points; one equation
/// per cell (i, j) with coefficient 1 when i^g = j.
ExactSystem build_full_system(const GroupEnumeration& group);

/// Rows: orbits of H on Omega x Omega, right side the orbit sizes. Columns:
/// H-conjugation class representatives g with coefficient
/// #{(w1, w2) in the orbit : w1^g = w2}. Throws Error if H is not inside G or
/// a coefficient is not constant on a class.
ExactSystem build_H_system(const GroupEnumeration& group, const GroupEnumeration& subgroup);

enum class SolveStatus { solvable, infeasible, unknown_budget };
const char* to_string(SolveStatus s);

struct SolveOutcome {
  SolveStatus status = SolveStatus::infeasible;
  std::string ring;
  /// Exact witness when solvable (residues for modular rings).
  std::vector<mpq_class> witness;
  std::vector<std::string> notes;
};

/// Substitutes the witness. Modular rings compare residues modulo `modulus`.
bool witness_satisfies(const ExactSystem& system, const std::vector<mpq_class>& x,
                       std::uint64_t modulus = 0);

/// Columns are added to an echelon basis one at a time; stops as soon as b is in the span.
SolveOutcome solve_mod_p(const ExactSystem& system, std::uint64_t p);
/// Elimination over Z/p^m with minimal-valuation pivots (p^m < 2^31).
SolveOutcome solve_mod_prime_power(const ExactSystem& system, std::uint64_t p, unsigned m);
SolveOutcome solve_rational(const ExactSystem& system);

struct IntegerOptions {
  /// Declare infeasibility early when the system fails over F_p for a small prime.
  bool modular_precheck = true;
};
/// Column Hermite normal form A U = H with U unimodular, then forward substitution.
SolveOutcome solve_integer(const ExactSystem& system, const IntegerOptions& options = {});

inline constexpr std::uint64_t kDefaultBranchBudget = 100'000;
/// Branch and bound over an exact rational phase-one simplex.
SolveOutcome solve_nonneg_integer(const ExactSystem& system,
                                  std::uint64_t budget = kDefaultBranchBudget);

struct ProbeOptions {
  std::size_t keep = 0;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  bool nonnegative = false;
};
/// Keeps `keep` random columns (others forced to 0) and solves over Z or Z>=0.
SolveOutcome random_restriction_probe(const ExactSystem& system, const ProbeOptions& options);

/// Drops columns whose element has a fixed point, except the identity. With
/// `pin_identity` the identity column is fixed at 1: it is removed and
/// subtracted from b.
ExactSystem restrict_to_fpf(const ExactSystem& system, const GroupEnumeration& group,
                            bool pin_identity = false);

struct LemmaDownReport {
  bool u_solvable = false;
  bool v_solvable = false;
  bool holds = true;  // u_solvable implies v_solvable
};
/// Integral solvability of the U-system must carry over to the V-system for U <= V.
LemmaDownReport lemma_down_check(const GroupEnumeration& group, const GroupEnumeration& u,
                                 const GroupEnumeration& v);

struct PrimeLocalReport {
  std::uint64_t p = 0;
  std::size_t subgroup_order = 0;
  bool h_integral = false;
  /// Index m-1: solvability of the H-system and of the full system over Z/p^m.
  std::vector<bool> h_mod;
  std::vector<bool> full_mod;
  bool lifting_holds = true;
};

struct LocalGlobalReport {
  bool full_integral = false;
  std::vector<PrimeLocalReport> primes;
  /// full_integral == (every H-system integral).
  bool equivalence_holds = true;
  bool lifting_holds = true;
  std::vector<std::string> notes;
};

std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// `subgroups` maps every prime p dividing |G| to a subgroup of order prime to p.
/// Throws Error when one is missing, not p', or not inside G.
LocalGlobalReport local_global_check(const GroupEnumeration& group,
                                     const std::map<std::uint64_t, GroupEnumeration>& subgroups,
                                     unsigned max_power = 2);

/// Rational solvability of the full system, decided on the H = G collapse.
SolveOutcome rational_via_whole_group(const GroupEnumeration& group);

}  // namespace sharp::linsys
