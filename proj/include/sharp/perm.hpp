#pragma once

#include "sharp/common.hpp"

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sharp {

/// A bijection of {0, ..., n-1} stored by images. Points act on the right:
/// x^(ab) = (x^a)^b.
class Permutation {
 public:
  Permutation() = default;
  /// Throws Error if `images` is not a bijection.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree);
  /// Builds a permutation from disjoint cycles, e.g. {{0, 1, 2}, {3, 4}}.
  static Permutation from_cycles(std::size_t degree,
                                 std::initializer_list<std::initializer_list<Point>> cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  Permutation inverse() const;
  bool is_identity() const;
  std::string to_cycles() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

/// Left-to-right product: x^(compose(a, b)) = (x^a)^b.
Permutation compose(const Permutation& a, const Permutation& b);
inline Permutation operator*(const Permutation& a, const Permutation& b) { return compose(a, b); }

/// |{(x, y) : x < y, x^g > y^g}|
std::size_t inversions(std::span<const Point> images);
inline std::size_t inversions(const Permutation& g) { return inversions(g.images()); }

enum class Parity { even, odd };
Parity parity(const Permutation& g);
/// Parity from the cycle decomposition (n minus the number of cycles).
Parity cycle_parity(const Permutation& g);

bool is_fixed_point_free(std::span<const Point> images);
inline bool is_fixed_point_free(const Permutation& g) { return is_fixed_point_free(g.images()); }

/// A permutation group given by generators.
struct GroupSpec {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  std::string name;
  /// Order recorded alongside the generators (e.g. from a group file).
  std::optional<std::uint64_t> expected_order;

  /// Throws Error unless generators are nonempty and all of length `degree`.
  void validate() const;
};

/// All elements of a finite permutation group, deduplicated, in a fixed order.
/// Element 0 is the identity.
class GroupEnumeration {
 public:
  GroupEnumeration() = default;
  /// Builds an enumeration from an explicit element list. Duplicates are
  /// rejected; closure is not checked here (see `is_closed`).
  GroupEnumeration(std::size_t degree, const std::vector<Permutation>& elements);

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return order_; }
  std::span<const Point> images(std::size_t i) const {
    return {data_.data() + i * degree_, degree_};
  }
  Permutation element(std::size_t i) const;
  std::optional<std::size_t> index_of(std::span<const Point> images) const;
  bool contains(const Permutation& g) const { return index_of(g.images()).has_value(); }
  /// Index of the product element(i) * element(j).
  std::size_t multiply(std::size_t i, std::size_t j) const;
  std::size_t inverse(std::size_t i) const;

  /// Exhaustive closure check (products of all pairs) plus identity/inverse presence.
  bool is_closed() const;

 private:
  friend std::optional<GroupEnumeration> enumerate(const GroupSpec&, std::size_t);

  bool try_append(std::span<const Point> images);

  std::size_t degree_ = 0;
  std::size_t order_ = 0;
  std::vector<Point> data_;
  std::unordered_multimap<std::size_t, std::uint32_t> index_;
};

inline constexpr std::size_t kDefaultEnumerationCap = 2'000'000;

/// Breadth-first closure of the generators. Elements appear in BFS order with
/// generators applied in listed order. Returns nullopt when the group has more
/// than `cap` elements.
std::optional<GroupEnumeration> enumerate(const GroupSpec& spec,
                                          std::size_t cap = kDefaultEnumerationCap);

/// Ordered t-tuples of distinct points of {0..n-1}, indexed lexicographically.
class ArrangementAction {
 public:
  ArrangementAction(std::size_t base_degree, std::size_t t);

  std::size_t base_degree() const { return n_; }
  std::size_t arity() const { return t_; }
  std::size_t cell_count() const { return cells_.size() / t_; }
  std::span<const Point> cell(std::size_t i) const { return {cells_.data() + i * t_, t_}; }
  std::size_t index_of(std::span<const Point> tuple) const;

  /// The permutation of cells induced by a permutation of base points.
  Permutation induce(std::span<const Point> images) const;
  Permutation induce(const Permutation& g) const { return induce(g.images()); }

 private:
  std::size_t code(std::span<const Point> tuple) const;

  std::size_t n_;
  std::size_t t_;
  std::vector<Point> cells_;
  std::vector<std::int32_t> code_to_cell_;
};

std::pair<ArrangementAction, GroupSpec> induced_action(const GroupSpec& spec, std::size_t t);
/// Element i of the returned enumeration is the induced image of element i of `group`.
std::pair<ArrangementAction, GroupEnumeration> induced_action(const GroupEnumeration& group,
                                                              std::size_t t);

/// Partition of Omega x Omega into orbits of a group. Pair (a, b) has index a*n + b.
struct PairOrbits {
  std::size_t n = 0;
  std::vector<std::uint32_t> orbit_of;
  std::vector<std::size_t> sizes;
  /// Least pair index in each orbit.
  std::vector<std::size_t> representatives;

  std::size_t count() const { return sizes.size(); }
};

PairOrbits orbits_on_pairs(const GroupEnumeration& group);

/// Orbits of H acting on G by conjugation g -> h^-1 g h.
struct ConjugationClasses {
  /// Representative of each orbit: its least element index in G's enumeration.
  std::vector<std::size_t> representatives;
  std::vector<std::size_t> sizes;
  /// Orbit number of every element of G.
  std::vector<std::uint32_t> class_of;
};

/// Throws Error if some element of H is not in G.
ConjugationClasses conjugation_reps(const GroupEnumeration& group,
                                    const GroupEnumeration& subgroup);

/// The subgroup of an enumerated group generated by some of its elements.
GroupEnumeration generated_subgroup(std::size_t degree, const std::vector<Permutation>& generators);

/// Randomized search for a p-subgroup of `group` of order `target` (a power of p),
/// grown greedily from p-elements. Returns generators, or nullopt after `attempts`
/// failed extensions.
std::optional<GroupSpec> find_p_subgroup(const GroupEnumeration& group, std::uint64_t p,
                                         std::uint64_t target, std::uint64_t seed,
                                         std::size_t attempts = 20000);

/// Standard generators for the symmetric, alternating and cyclic groups.
GroupSpec symmetric_group(std::size_t n);
GroupSpec alternating_group(std::size_t n);
GroupSpec cyclic_group(std::size_t n);

/// Group file: `n <degree>`, optional `order <N>`, then one generator per line
/// as n 0-based images. `#` starts a comment.
GroupSpec parse_group(const std::string& text, const std::string& name = "");
GroupSpec read_group_file(const std::string& path);
std::string format_group(const GroupSpec& spec);

}  // namespace sharp
