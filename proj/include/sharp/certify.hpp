#pragma once

#include "sharp/common.hpp"
#include "sharp/designs.hpp"
#include "sharp/geometry.hpp"
#include "sharp/perm.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sharp::certify {

using designs::Spectrum;

/// Where the images C^g come from.
struct FamilyDescriptor {
  enum class Kind { enumerated_group, named_family };
  Kind kind = Kind::enumerated_group;
  std::string name;
  /// For named families: the rule that generates the members.
  std::string rule;
};

/// Subsets B, C of a domain and a prime p with p ∤ |B||C|; refutes sharply
/// transitive sets when p divides |B ∩ C^g| for every g.
struct Certificate {
  std::size_t domain_size = 0;
  PointSet b;
  PointSet c;
  std::uint64_t p = 2;
  FamilyDescriptor family;

  /// Throws Error unless p is prime and B, C are nonempty subsets of the domain.
  void validate() const;
  bool side_condition() const;  // p ∤ |B||C|
};

bool is_prime(std::uint64_t p);

enum class Conclusion { refuted, inconclusive, hypothesis_not_met };
const char* to_string(Conclusion c);

struct VerificationReport {
  std::string case_name;
  std::string mode;  // enumerated, family, reduction, none
  std::optional<Certificate> certificate;
  Spectrum spectrum;
  bool side_condition = false;
  Conclusion conclusion = Conclusion::inconclusive;
  std::vector<std::string> assumptions;
  std::vector<std::string> notes;
  double elapsed_ms = 0;
  std::vector<VerificationReport> sub_reports;
};

/// refuted iff the side condition holds and p divides every observed size.
Conclusion conclude(const Spectrum& spectrum, std::uint64_t p, bool side_condition);

struct DoublecountReport {
  bool sharply_transitive = false;
  /// Sum over S of |B ∩ C^g|.
  std::size_t sum = 0;
  std::size_t product = 0;  // |B||C|
  /// Only meaningful when `sharply_transitive`.
  bool equality_holds = false;
};

/// Double counting of triples (b, c, g) with c^g = b. Sharp transitivity of S
/// is checked independently; equality is asserted only for sharply transitive S.
DoublecountReport doublecount_check(const std::vector<Permutation>& s, const PointSet& b,
                                    const PointSet& c);

/// Every element of G is scanned. With `action`, G acts on the base points and
/// the certificate lives on the induced cells. Throws Error on domain mismatch
/// or a non-enumerated family descriptor.
VerificationReport verify_certificate_enumerated(const GroupEnumeration& group,
                                                 const Certificate& cert,
                                                 const ArrangementAction* action = nullptr,
                                                 unsigned threads = 1);

/// Evidence that {C^g} is contained in a family.
struct ClosureWitness {
  /// Generators that must map every family member into the family. When
  /// empty, `assumption` is recorded instead.
  std::vector<Permutation> generators;
  std::string description;
  std::string assumption;
};

/// Scans |B ∩ C'| over every member C' of a superset of {C^g : g in G}.
/// Throws Error if the family is empty or C is not a member.
VerificationReport verify_certificate_family(const std::vector<PointSet>& family,
                                             const Certificate& cert,
                                             const ClosureWitness& closure);

struct CaseOptions {
  unsigned n = 0;  // sp: half-dimension; alt: degree
  std::uint32_t q = 2;
  std::optional<std::uint32_t> modulus;
  geometry::Action action = geometry::Action::projective;
  bool enumerate_group = false;
  /// Generator data (m22); enables enumerated mode when the order is within the cap.
  std::optional<GroupSpec> group;
  std::size_t cap = kDefaultEnumerationCap;
  unsigned threads = 1;
  std::uint64_t seed = 0;
};

/// Case ids: sp, m22, mclaughlin, alt, m23. Throws Error for an unknown id,
/// DataError for unusable generator data.
VerificationReport run_case(const std::string& case_id, const CaseOptions& options);

VerificationReport run_sp(const CaseOptions& options);
VerificationReport run_m22(const CaseOptions& options);
VerificationReport run_mclaughlin(const CaseOptions& options);
VerificationReport run_alt(const CaseOptions& options);
VerificationReport run_m23(const CaseOptions& options);

/// Number of permutations of n points with k inversions, k = 0..n(n-1)/2 (n <= 20).
std::vector<std::uint64_t> mahonian_row(unsigned n);

struct SearchBounds {
  std::size_t max_b = 0;  // 0 = domain size
  std::size_t max_c = 0;
};

struct SearchOutcome {
  std::optional<Certificate> certificate;
  /// True when every (B, C) within bounds was examined.
  bool exhaustive = false;
  std::size_t candidates = 0;
};

/// Looks for B, C with p ∤ |B||C| and p | |B ∩ C^g| for all g. Domains of at
/// most 10 points are scanned exhaustively; larger domains sample B at random
/// and solve for C over F_p (|B ∩ C^g| = |C ∩ B^(g^-1)| is linear in C).
SearchOutcome certificate_search(const GroupEnumeration& group, std::uint64_t p,
                                 const SearchBounds& bounds, std::size_t budget,
                                 std::uint64_t seed = 0);

}  // namespace sharp::certify
