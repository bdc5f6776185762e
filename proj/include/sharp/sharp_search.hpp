#pragma once

#include "sharp/perm.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sharp::search {

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

/// Indices into a group enumeration forming a sharply t-transitive set.
struct SharpSet {
  std::vector<std::size_t> elements;
  std::size_t t = 1;
};

enum class SearchStatus { found, exhaustive_none, budget_exhausted };
const char* to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::exhaustive_none;
  std::optional<SharpSet> witness;
  std::uint64_t nodes = 0;
};

/// Exact cover over (source cell, target cell) columns of the action on
/// t-arrangements; a row per group element. Deterministic: the column with the
/// fewest live rows is branched on, lowest index first.
SearchResult find_sharp_set(const GroupEnumeration& group, std::size_t t,
                            std::uint64_t budget = kDefaultNodeBudget);

/// True iff every ordered pair of t-arrangements is joined by exactly one member.
bool verify_sharp_set(const GroupEnumeration& group, std::span<const std::size_t> elements,
                      std::size_t t);

}  // namespace sharp::search
