#pragma once

#include "sharp/common.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sharp::designs {

/// Points {0..v-1} with blocks of size k.
struct Design {
  std::size_t v = 0;
  std::size_t k = 0;
  std::string name;
  std::vector<PointSet> blocks;

  /// Throws Error unless every block has size k and blocks are pairwise distinct.
  void validate() const;
};

/// Multiset of sizes, size -> count.
using Spectrum = std::map<std::size_t, std::size_t>;

/// Weight distribution of the binary quadratic-residue code of length 23,
/// generated by prod_{r in QR(23)} (X - a^r) for a of order 23 in GF(2^11).
Spectrum golay_weight_distribution();

/// S(4,7,23): supports of the 253 weight-7 words of the length-23 quadratic-residue
/// code, ordered by their bitmask value.
Design golay_witt_design();

/// Lines {i, i+1, i+3} mod 7.
Design fano_plane();

struct SteinerReport {
  bool passed = false;
  std::size_t subsets_checked = 0;
  /// First t-subset (ascending) not covered exactly once.
  std::optional<std::vector<std::size_t>> violation;
  std::size_t violation_count = 0;
};

/// Exhaustive scan of all t-subsets of points: each must lie in exactly one block.
SteinerReport steiner_check(const Design& design, std::size_t t);

/// |B ∩ B'| over unordered pairs of distinct blocks.
Spectrum intersection_spectrum(const Design& design);

std::vector<std::size_t> blocks_through(const Design& design, std::size_t point);
std::vector<std::size_t> blocks_avoiding(const Design& design, std::size_t point);

/// Undirected simple graph with bitset adjacency rows.
struct Graph {
  std::vector<PointSet> adjacency;
  /// Optional per-vertex origin tag ('B', 'U', 'V' for the McLaughlin construction).
  std::string labels;

  std::size_t vertex_count() const { return adjacency.size(); }
  bool adjacent(std::size_t i, std::size_t j) const { return adjacency[i].test(j); }

  static Graph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);
};

/// Special point of the McLaughlin construction.
inline constexpr std::size_t kMcLaughlinSpecialPoint = 22;

/// McLaughlin graph on 22 + 77 + 176 vertices built from W23 with special point 22.
/// Vertices 0..21 are the points other than 22 (B), then the blocks through 22 (U),
/// then the blocks avoiding 22 (V), each in design block order.
Graph mclaughlin_graph(const Design& witt);

/// N(i) ∩ N(j); throws Error for i == j.
PointSet common_neighborhood(const Graph& graph, std::size_t i, std::size_t j);

struct SrgParams {
  std::size_t v, k, lambda, mu;
};

struct SrgReport {
  bool passed = false;
  std::string violation;
  std::size_t adjacent_pairs = 0;
  std::size_t nonadjacent_pairs = 0;
};

/// Checks symmetry, loop-freeness, k-regularity and the common-neighbour
/// counts of every adjacent and non-adjacent pair.
SrgReport srg_check(const Graph& graph, const SrgParams& params);

struct SymmetricDesignParams {
  long long v, k, lambda;
};

enum class RefutationVerdict {
  refuted_non_integral,  // an integrality step failed
  refuted_contradiction, // the divisibility chain yields k - lambda = 1 but k != v - 1
  trivial_design,        // k = v - 1: nothing to refute
};

struct RefutationStep {
  std::string claim;  // e.g. "a(k-lambda) = k"
  std::string detail; // the instantiated arithmetic
  bool holds = false;
};

struct RefutationTrace {
  SymmetricDesignParams params;
  std::vector<RefutationStep> steps;
  RefutationVerdict verdict;
  std::string conclusion;
};

/// Replays the counting argument against a point stabilizer containing a set
/// that is sharply transitive on the remaining v-1 points. Throws Error unless
/// v > k > lambda >= 1 and (v-1) lambda = k(k-1).
RefutationTrace symmetric_design_refutation(const SymmetricDesignParams& params);

/// Design file: `v k b`, then one block per line as ascending 0-based points.
std::string format_design(const Design& design);
Design parse_design(const std::string& text, const std::string& name = "");
Design read_design_file(const std::string& path);

/// `v`, then one adjacency row per line as a string of 0/1 characters.
std::string format_graph(const Graph& graph);

}  // namespace sharp::designs
