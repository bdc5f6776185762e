#include "sharp/gf.hpp"

#include <doctest.h>

using namespace sharp;
using gf::Element;
using gf::Field;

namespace {

// Schoolbook carry-less product followed by long division.
Element reference_mul(Element a, Element b, std::uint32_t modulus) {
  std::uint64_t product = 0;
  for (int i = 0; i < 32; ++i)
    if (b >> i & 1) product ^= std::uint64_t{a} << i;
  int dm = 31;
  while (!(modulus >> dm & 1)) --dm;
  for (int d = 63; d >= dm; --d)
    if (product >> d & 1) product ^= std::uint64_t{modulus} << (d - dm);
  return static_cast<Element>(product);
}

}  // namespace

TEST_CASE("default moduli") {
  CHECK(gf::default_modulus(1) == 0b10);
  CHECK(gf::default_modulus(2) == 0b111);
  CHECK(gf::default_modulus(3) == 0b1011);
  CHECK(gf::default_modulus(4) == 0b10011);
  CHECK(gf::is_irreducible(0b100101));
  CHECK_FALSE(gf::is_irreducible(0b101));  // (x+1)^2
  CHECK_THROWS_AS(Field(2, 0b101), Error);
  CHECK_THROWS_AS(Field(3, 0b111), Error);
  CHECK_THROWS_AS(Field::of_order(6), Error);
  CHECK(Field::of_order(16).degree() == 4);
}

TEST_CASE("GF(4) examples") {
  Field f(2);
  const Element x = 0b10;
  CHECK(f.mul(x, x) == 0b11);  // x^2 = x + 1
  CHECK(f.add(x, x) == 0);
  CHECK(f.mul(1, x) == x);
  CHECK(f.trace(0) == 0);
  CHECK(f.trace(x) == 1);
  CHECK(f.frobenius_orbit(x) == std::vector<Element>{0b10, 0b11});
  CHECK(f.frobenius_orbit(0) == std::vector<Element>{0});
  CHECK(f.frobenius_orbit(1) == std::vector<Element>{1});
  CHECK(Field(1).trace(1) == 1);
  CHECK_THROWS_AS(f.inv(0), Error);
}

TEST_CASE("field axioms, exhaustive for m <= 4") {
  for (unsigned m = 1; m <= 4; ++m) {
    Field f(m);
    const Element q = f.order();
    for (Element a = 0; a < q; ++a) {
      CHECK(f.add(a, a) == 0);
      CHECK(f.mul(1, a) == a);
      if (a) CHECK(f.mul(a, f.inv(a)) == 1);
      for (Element b = 0; b < q; ++b) {
        CHECK(f.mul(a, b) == reference_mul(a, b, f.modulus()));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (Element c = 0; c < q; ++c) {
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("trace is linear and onto GF(2)") {
  for (unsigned m = 1; m <= 4; ++m) {
    Field f(m);
    std::size_t ones = 0;
    for (Element a = 0; a < f.order(); ++a) {
      CHECK(f.trace(a) <= 1);
      ones += f.trace(a);
      for (Element b = 0; b < f.order(); ++b)
        CHECK(f.trace(f.add(a, b)) == (f.trace(a) ^ f.trace(b)));
    }
    CHECK(ones == f.order() / 2);
  }
}

TEST_CASE("frobenius orbit lengths divide m") {
  Field f(4);
  for (Element a = 0; a < f.order(); ++a) {
    auto orbit = f.frobenius_orbit(a);
    CHECK(4 % orbit.size() == 0);
    if (a < 2) CHECK(orbit.size() == 1);
  }
  Field big(11);
  CHECK(big.mul(big.inv(1234), 1234) == 1);
}
