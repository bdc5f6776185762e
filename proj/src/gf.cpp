#include "sharp/gf.hpp"

#include <bit>

namespace sharp::gf {

namespace {

int poly_degree(std::uint32_t p) { return p == 0 ? -1 : 31 - std::countl_zero(p); }

std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b) {
  const int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a)) a ^= b << (da - db);
  return a;
}

}  // namespace

bool is_irreducible(std::uint32_t polynomial) {
  const int d = poly_degree(polynomial);
  if (d < 1) return false;
  for (std::uint32_t divisor = 2; poly_degree(divisor) <= d / 2; ++divisor)
    if (poly_mod(polynomial, divisor) == 0) return false;
  return true;
}

std::uint32_t default_modulus(unsigned m) {
  if (m < 1 || m > 16) throw Error("GF(2^m) supported for 1 <= m <= 16");
  for (std::uint32_t p = std::uint32_t{1} << m; p < (std::uint32_t{2} << m); ++p)
    if (is_irreducible(p)) return p;
  throw Error("no irreducible polynomial found");  // unreachable
}

Field::Field(unsigned m, std::optional<std::uint32_t> modulus)
    : m_(m), modulus_(modulus ? *modulus : default_modulus(m)) {
  if (m < 1 || m > 16) throw Error("GF(2^m) supported for 1 <= m <= 16");
  if (poly_degree(modulus_) != static_cast<int>(m))
    throw Error("modulus degree does not match the extension degree");
  if (!is_irreducible(modulus_)) throw Error("modulus is not irreducible over GF(2)");
}

Field Field::of_order(std::uint32_t q, std::optional<std::uint32_t> modulus) {
  if (q < 2 || !std::has_single_bit(q)) throw Error("field order must be a power of two >= 2");
  return Field(static_cast<unsigned>(std::countr_zero(q)), modulus);
}

Element Field::mul(Element a, Element b) const {
  Element result = 0;
  const Element top = Element{1} << m_;
  while (b) {
    if (b & 1) result ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= modulus_;
  }
  return result;
}

Element Field::pow(Element a, std::uint64_t e) const {
  Element result = 1;
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Element Field::inv(Element a) const {
  if (a == 0) throw Error("inverse of zero in GF(2^m)");
  return pow(a, order() - 2);
}

Element Field::trace(Element a) const {
  Element sum = 0;
  Element power = a;
  for (unsigned i = 0; i < m_; ++i) {
    sum ^= power;
    power = square(power);
  }
  return sum;
}

std::vector<Element> Field::frobenius_orbit(Element a) const {
  std::vector<Element> orbit{a};
  for (Element x = square(a); x != a; x = square(x)) orbit.push_back(x);
  return orbit;
}

}  // namespace sharp::gf
