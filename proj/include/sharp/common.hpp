#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sharp {

/// A point of a permutation domain. Degrees above 65535 are not supported.
using Point = std::uint16_t;

/// Subset of a finite domain {0, ..., size-1}.
using PointSet = boost::dynamic_bitset<std::uint64_t>;

/// Thrown when an operation's precondition is violated by its arguments.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when external data (group files, design files) is missing or malformed.
class DataError : public Error {
 public:
  using Error::Error;
};

inline PointSet make_set(std::size_t size) { return PointSet(size); }

/// Number of points shared by two subsets of the same domain.
inline std::size_t intersection_size(const PointSet& a, const PointSet& b) {
  std::size_t count = 0;
  for (auto i = a.find_first(); i != PointSet::npos; i = a.find_next(i))
    if (b.test(i)) ++count;
  return count;
}

}  // namespace sharp
