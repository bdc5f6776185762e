#pragma once

#include "sharp/common.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sharp::gf {

/// Elements of GF(2^m) are m-bit polynomial residues.
using Element = std::uint32_t;

/// Irreducibility by trial division with every polynomial of degree <= m/2.
bool is_irreducible(std::uint32_t polynomial);

/// Least bitmask of degree m that is irreducible over GF(2); x^2+x+1 for m = 2.
std::uint32_t default_modulus(unsigned m);

/// GF(2^m), 1 <= m <= 16.
class Field {
 public:
  explicit Field(unsigned m, std::optional<std::uint32_t> modulus = std::nullopt);
  /// Field of order q = 2^m; throws Error unless q is a power of two >= 2.
  static Field of_order(std::uint32_t q, std::optional<std::uint32_t> modulus = std::nullopt);

  unsigned degree() const { return m_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint32_t order() const { return std::uint32_t{1} << m_; }

  Element add(Element a, Element b) const { return a ^ b; }
  Element mul(Element a, Element b) const;
  Element square(Element a) const { return mul(a, a); }
  Element pow(Element a, std::uint64_t e) const;
  /// Throws Error for a == 0.
  Element inv(Element a) const;

  /// Absolute trace to GF(2): a + a^2 + ... + a^(2^(m-1)).
  Element trace(Element a) const;
  /// [a, a^2, a^4, ...] up to the first repeat.
  std::vector<Element> frobenius_orbit(Element a) const;

  bool contains(Element a) const { return a < order(); }

 private:
  unsigned m_;
  std::uint32_t modulus_;
};

}  // namespace sharp::gf
