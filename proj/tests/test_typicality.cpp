#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "gl2tf/error.hpp"
#include "gl2tf/typicality.hpp"

using namespace gl2tf;

TEST(Typicality, PinchingAtFixedPoint) {
  const Cocycle a = fixtures::typical();
  const PinchingResult r = pinching_check(a, Point::periodic({0}));
  ASSERT_TRUE(r.pinching);
  EXPECT_DOUBLE_EQ(r.lambda_plus.real(), 2.0);
  EXPECT_DOUBLE_EQ(r.lambda_minus.real(), 0.5);
  EXPECT_EQ(r.v_plus, kE1);
  EXPECT_EQ(r.v_minus, kE2);
}

TEST(Typicality, PinchingFailures) {
  const Cocycle a = fixtures::typical();
  // A(2) is elliptic: trace sqrt(2) * 5/4 < 2 with determinant 1.
  EXPECT_EQ(pinching_check(a, Point::periodic({1})).failure, PinchingFailure::ComplexPair);
  const Cocycle c = Cocycle::one_step(ShiftSpace::full(2), {Mat2::diag(1.0, -1.0), Mat2::identity()});
  EXPECT_EQ(pinching_check(c, Point::periodic({0})).failure, PinchingFailure::RealEqualModulus);
  EXPECT_THROW(pinching_check(a, Point::make({0}, {1}, {0}, 0)), Error);
}

TEST(Typicality, CertificateForTypicalFixture) {
  const Cocycle a = fixtures::typical();
  const auto cert = is_typical(a);
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(cert->p, Point::periodic({0}));
  EXPECT_LE(cert->z_plus.core().size(), 2u);
  EXPECT_LE(cert->z_minus.core().size(), 2u);
  // With z = ...1 1 [2] 1 1..., psi = D^-1 R D where D = diag(2, 1/2) and R
  // is the rotation by pi/4. It sends e1 to (1, 4) and e2 to (-1/4, 1).
  EXPECT_NEAR(cert->margin_plus, std::atan(4.0), 1e-12);
  EXPECT_NEAR(cert->margin_minus, std::atan(0.25), 1e-12);
  EXPECT_TRUE(verify_certificate(a, *cert));

  TypicalityCertificate bad = *cert;
  bad.v_plus = Direction(Vec2{1.0, 1.0});
  EXPECT_FALSE(verify_certificate(a, bad));
}

TEST(Typicality, CertificateSurvivesConjugation) {
  const Cocycle a = fixtures::typical().conjugated(Mat2{1.0, 0.7, -0.2, 1.5});
  const auto cert = is_typical(a);
  ASSERT_TRUE(cert.has_value());
  EXPECT_TRUE(verify_certificate(a, *cert));
}

TEST(Typicality, DiagonalFamilyIsNotTypical) {
  const Cocycle a = fixtures::two_state_diagonal();
  EXPECT_FALSE(is_typical(a).has_value());
  for (const Direction& l : {kE1, kE2}) {
    const WitnessResult w = irreducibility_witness(a, Point::periodic({0}), l, 5);
    EXPECT_FALSE(w.found);
    EXPECT_GT(w.examined, 0u);
    const BundleSample b = bundle_propagation(a, Point::periodic({0}), l, 3);
    EXPECT_LT(b.inconsistency, 1e-12);
    for (const auto& [z, line] : b.lines) EXPECT_EQ(line, l);
  }
}

TEST(Typicality, WitnessMovesNonInvariantLine) {
  const Cocycle a = fixtures::typical();
  const WitnessResult w = irreducibility_witness(a, Point::periodic({0}), Direction(Vec2{1.0, 1.0}), 3);
  ASSERT_TRUE(w.found);
  EXPECT_TRUE(w.periodic_action);

  const WitnessResult h = irreducibility_witness(a, Point::periodic({0}), kE1, 3);
  ASSERT_TRUE(h.found);
  EXPECT_FALSE(h.periodic_action);
  EXPECT_NEAR(h.margin, std::atan(4.0), 1e-12);
  EXPECT_THROW(bundle_propagation(a, Point::periodic({0}), kE1, 3), Error);
}

TEST(Typicality, TriangularBundleIsConsistent) {
  const Cocycle a = Cocycle::one_step(ShiftSpace::full(2), {Mat2{2.0, 1.0, 0.0, 0.5}, Mat2{0.7, -2.0, 0.0, 3.0}});
  const BundleSample b = bundle_propagation(a, Point::periodic({0, 1}), kE1, 3);
  EXPECT_LT(b.inconsistency, 1e-12);
  EXPECT_GT(b.checks, 10u);
}

TEST(Typicality, EqualModulusScan) {
  const EqualModulusScan c = equal_modulus_scan(fixtures::conformal(), 5);
  EXPECT_TRUE(c.all_equal);
  EXPECT_FALSE(c.counterexample.has_value());
  const EqualModulusScan t = equal_modulus_scan(fixtures::typical(), 5);
  EXPECT_FALSE(t.all_equal);
  ASSERT_TRUE(t.counterexample.has_value());
  EXPECT_EQ(*t.counterexample, Point::periodic({0}));
}
