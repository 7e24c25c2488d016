#include <gtest/gtest.h>

#include "oracles.hpp"
#include "svpcp/field.hpp"

using namespace svpcp;

TEST(Field, CanonicalModuliAreLeastIrreducible) {
  // Frozen from a brute-force search with oracle::irreducible.
  const std::uint32_t expected[] = {0x7,   0xb,   0x13,   0x25,   0x43,   0x83,   0x11b, 0x203,
                                    0x409, 0x805, 0x1009, 0x201b, 0x4021, 0x8003, 0x1002b};
  for (int e = 2; e <= 16; ++e) {
    EXPECT_EQ(canonical_modulus(e), expected[e - 2]) << "e=" << e;
    EXPECT_TRUE(oracle::irreducible(expected[e - 2], e));
  }
}

TEST(Field, RejectsUnsupportedSizes) {
  EXPECT_THROW(Field(1), std::invalid_argument);
  EXPECT_THROW(Field(17), std::invalid_argument);
  EXPECT_THROW(Field(4, 0x11), std::invalid_argument);  // x^4+1 is reducible
}

TEST(Field, Gf4Table) {
  Field f(2);
  FieldElement w(2);
  EXPECT_EQ(f.mul(w, w), FieldElement(3));  // omega^2 = omega + 1
  EXPECT_EQ(f.mul(w, FieldElement(3)), FieldElement(1));
  EXPECT_EQ(f.inv(w), FieldElement(3));
}

TEST(Field, MultiplicationMatchesOracle) {
  for (int e : {2, 3, 4, 5, 8}) {
    Field f(e);
    for (std::uint32_t a = 0; a < f.order(); ++a)
      for (std::uint32_t b = 0; b < f.order(); ++b)
        ASSERT_EQ(f.mul(FieldElement(a), FieldElement(b)).value,
                  oracle::gf_mul(a, b, f.modulus(), e));
  }
  Field big(16);
  for (std::uint32_t a = 1; a < big.order(); a += 977)
    for (std::uint32_t b = 3; b < big.order(); b += 1531)
      ASSERT_EQ(big.mul(FieldElement(a), FieldElement(b)).value,
                oracle::gf_mul(a, b, big.modulus(), 16));
}

TEST(Field, FieldAxioms) {
  Field f(4);
  for (std::uint32_t a = 0; a < 16; ++a) {
    FieldElement x(a);
    EXPECT_EQ(x + x, FieldElement(0));
    if (a) {
      EXPECT_EQ(f.mul(x, f.inv(x)), FieldElement(1));
      EXPECT_EQ(f.pow(x, 15), FieldElement(1));
    }
    for (std::uint32_t b = 0; b < 16; ++b)
      for (std::uint32_t c = 0; c < 16; c += 5) {
        FieldElement y(b), z(c);
        EXPECT_EQ(f.mul(x, y + z), f.mul(x, y) + f.mul(x, z));
      }
  }
  EXPECT_THROW(f.inv(FieldElement(0)), std::domain_error);
}

TEST(Field, TraceMatchesOracleAndMask) {
  for (int e = 2; e <= 10; ++e) {
    Field f(e);
    unsigned ones = 0;
    for (std::uint32_t a = 0; a < f.order(); ++a) {
      unsigned tr = oracle::trace(a, f.modulus(), e);
      ASSERT_EQ(f.trace(FieldElement(a)), tr);
      ASSERT_EQ(parity(a & f.trace_mask()), tr);
      ones += tr;
    }
    EXPECT_EQ(ones, f.order() / 2);  // trace is balanced
  }
}

TEST(Field, SubfieldEmbedding) {
  for (int e : {2, 4, 6, 8, 16}) {
    Field f(e);
    FieldElement w = subfield_embed(FieldElement(2), f);
    EXPECT_NE(w, FieldElement(1));
    EXPECT_EQ(oracle::gf_pow(w.value, 3, f.modulus(), e), 1u);
    // Homomorphism on all of GF(4).
    Field g4(2);
    for (std::uint32_t a = 0; a < 4; ++a)
      for (std::uint32_t b = 0; b < 4; ++b) {
        FieldElement ea = subfield_embed(FieldElement(a), f), eb = subfield_embed(FieldElement(b), f);
        EXPECT_EQ(subfield_embed(g4.mul(FieldElement(a), FieldElement(b)), f), f.mul(ea, eb));
        EXPECT_EQ(subfield_embed(FieldElement(a ^ b), f), ea + eb);
      }
  }
  EXPECT_EQ(subfield_embed(FieldElement(2), Field(2)), FieldElement(2));
  EXPECT_THROW(subfield_embed(FieldElement(2), Field(3)), std::domain_error);
  EXPECT_THROW(subfield_embed(FieldElement(2), Field(5)), std::domain_error);
}

TEST(Field, SubfieldOmegaIsSmallestOrderThree) {
  Field f(4);
  std::uint32_t smallest = 0;
  for (std::uint32_t a = 2; a < 16 && !smallest; ++a)
    if (oracle::gf_pow(a, 3, f.modulus(), 4) == 1) smallest = a;
  EXPECT_EQ(subfield_omega(f).value, smallest);
}

TEST(Field, HexRoundTrip) {
  Field f(8);
  for (std::uint32_t a = 0; a < 256; ++a) EXPECT_EQ(parse_hex(f, to_hex(FieldElement(a))), FieldElement(a));
  EXPECT_EQ(to_hex(FieldElement(0xab)), "ab");
  EXPECT_THROW(parse_hex(f, "100"), std::out_of_range);
  EXPECT_THROW(parse_hex(f, "AB"), std::invalid_argument);
}

TEST(UniPoly, TrimsAndEvaluates) {
  Field f(3);
  UniPoly p({FieldElement(1), FieldElement(2), FieldElement(0)});
  EXPECT_EQ(p.degree(), 1);
  EXPECT_EQ(UniPoly().degree(), -1);
  EXPECT_TRUE(is_degree_at_most(p, 1));
  EXPECT_FALSE(is_degree_at_most(p, 0));
  for (std::uint32_t x = 0; x < 8; ++x)
    EXPECT_EQ(p.eval(f, FieldElement(x)), FieldElement(1) + f.mul(FieldElement(2), FieldElement(x)));
}

TEST(UniPoly, InterpolationRecoversPolynomial) {
  Field f(4);
  UniPoly p({FieldElement(7), FieldElement(0), FieldElement(3), FieldElement(9)});
  std::vector<std::pair<FieldElement, FieldElement>> pts;
  for (std::uint32_t x = 5; x < 9; ++x) pts.push_back({FieldElement(x), p.eval(f, FieldElement(x))});
  EXPECT_EQ(interpolate(f, pts), p);
  pts.push_back(pts.front());
  EXPECT_THROW(interpolate(f, pts), std::invalid_argument);
}

TEST(UniPoly, DegreeCheckOnRandomValues) {
  // Values of x^{q-1} cannot be matched by a degree q-2 polynomial.
  Field f(3);
  std::vector<std::pair<FieldElement, FieldElement>> pts;
  for (std::uint32_t x = 0; x < 8; ++x) pts.push_back({FieldElement(x), f.pow(FieldElement(x), 7)});
  EXPECT_EQ(interpolate(f, pts).degree(), 7);
}
