#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gl2tf/error.hpp"
#include "gl2tf/linalg2.hpp"
#include "oracles.hpp"

using namespace gl2tf;

namespace {

Mat2 random_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  while (true) {
    Mat2 m{d(rng), d(rng), d(rng), d(rng)};
    if (std::abs(m.det()) > 1e-2) return m;
  }
}

oracle::M to_oracle(const Mat2& m) { return {m.a11, m.a12, m.a21, m.a22}; }

}  // namespace

TEST(Linalg2, OperatorNormMatchesGramEigenvalue) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    const Mat2 m = random_matrix(rng);
    const double expect = static_cast<double>(oracle::sv1(to_oracle(m)));
    EXPECT_NEAR(operator_norm(m), expect, 1e-12 * expect);
  }
}

TEST(Linalg2, SvdReconstructsTopDirection) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    const Mat2 m = random_matrix(rng);
    const SvdData s = svd2(m);
    const Vec2 img = m * s.v.vector();
    EXPECT_NEAR(norm(img), s.s1, 1e-10 * s.s1);
    EXPECT_LT(angular_distance(Direction(img), s.u), 1e-9);
    EXPECT_NEAR(s.s1 * s.s2, std::abs(m.det()), 1e-10 * std::abs(m.det()) + 1e-14);
  }
}

TEST(Linalg2, InverseAndDeterminant) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const Mat2 m = random_matrix(rng);
    EXPECT_LT(relative_entry_error(m * m.inverse(), Mat2::identity()), 1e-10);
    const Mat2 n = random_matrix(rng);
    EXPECT_NEAR((m * n).det(), m.det() * n.det(), 1e-10 * (1.0 + std::abs(m.det() * n.det())));
  }
}

TEST(Linalg2, SingularMatrixRejected) {
  try {
    svd2(Mat2{1.0, 2.0, 2.0, 4.0});
    FAIL() << "expected Singular";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Singular);
  }
}

TEST(Linalg2, DirectionIsProjective) {
  const Direction a(Vec2{1.0, 2.0});
  const Direction b(Vec2{-1.0, -2.0});
  EXPECT_EQ(a, b);
  EXPECT_NEAR(angular_distance(a, a.perp()), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(Direction::from_angle(0.3).angle(), 0.3, 1e-15);
  EXPECT_NEAR(Direction::from_angle(0.3 + std::numbers::pi).angle(), 0.3, 1e-12);
}

TEST(Linalg2, EigenKinds) {
  const EigenData d = eigen2(Mat2::diag(2.0, 0.5));
  EXPECT_EQ(d.kind, EigenKind::RealDistinctModulus);
  EXPECT_DOUBLE_EQ(d.lambda1.real(), 2.0);
  ASSERT_EQ(d.directions.size(), 2u);
  EXPECT_EQ(d.directions[0], kE1);
  EXPECT_NEAR(d.modulus_gap, 0.75, 1e-15);

  EXPECT_EQ(eigen2(Mat2::rotation(0.4)).kind, EigenKind::ComplexPair);
  EXPECT_EQ(eigen2(Mat2::diag(1.0, -1.0)).kind, EigenKind::RealEqualModulus);
  EXPECT_EQ(eigen2(3.0 * Mat2::identity()).directions.size(), 2u);
}

TEST(Linalg2, EigenvaluesSatisfyCharacteristicPolynomial) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const Mat2 m = random_matrix(rng);
    const EigenData e = eigen2(m);
    for (auto l : {e.lambda1, e.lambda2}) {
      const auto r = l * l - m.trace() * l + m.det();
      EXPECT_LT(std::abs(r), 1e-9 * (1.0 + std::norm(l)));
    }
    EXPECT_GE(std::abs(e.lambda1), std::abs(e.lambda2));
    for (const Direction& v : e.directions) EXPECT_LT(angular_distance(apply(m, v), v), 1e-8);
  }
}

TEST(Linalg2, ConjugatedScalarHasNoGap) {
  // Rounding in C (2I) C^-1 must not show up as a modulus gap.
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi), stretch(1.0, 10.0);
  for (int t = 0; t < 200; ++t) {
    const Mat2 c = Mat2::rotation(angle(rng)) * Mat2::diag(stretch(rng), 1.0) * Mat2::rotation(angle(rng));
    const EigenData e = eigen2(c * Mat2::diag(2.0, 2.0) * c.inverse());
    EXPECT_LT(e.modulus_gap, 1e-12);
    EXPECT_NE(e.kind, EigenKind::RealDistinctModulus);
  }
}

TEST(Linalg2, TransversalityBound) {
  // Perpendicular alignment multiplies norms exactly.
  const TransversalityBound b = transversality_product_bound(Mat2::diag(3.0, 1.0), Mat2::diag(2.0, 1.0));
  EXPECT_NEAR(b.ratio, 1.0, 1e-15);
  EXPECT_NEAR(b.gap, std::numbers::pi / 2, 1e-15);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    const Mat2 a = random_matrix(rng), c = random_matrix(rng);
    const TransversalityBound r = transversality_product_bound(a, c);
    EXPECT_LE(r.ratio, 1.0 + 1e-12);
    EXPECT_GE(r.ratio, 0.0);
  }
}

TEST(Linalg2, CommonInvariantLines) {
  auto lines = common_invariant_lines({Mat2::diag(2.0, 1.0), Mat2::diag(1.0, 2.0)});
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_TRUE((lines[0] == kE1 && lines[1] == kE2) || (lines[0] == kE2 && lines[1] == kE1));

  lines = common_invariant_lines({Mat2{2.0, 1.0, 0.0, 1.0}, Mat2{1.0, 3.0, 0.0, 0.5}});
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0], kE1);

  EXPECT_TRUE(common_invariant_lines({Mat2::diag(2.0, 0.5), Mat2::rotation(0.7)}).empty());
}

TEST(Linalg2, ConformalStructureDetection) {
  const Mat2 c{2.0, 1.0, 0.0, 1.0};
  const Mat2 ci = c.inverse();
  const ConformalStructure s =
      common_conformal_structure({c * (1.5 * Mat2::rotation(1.0)) * ci, c * (0.5 * Mat2::rotation(-0.3)) * ci});
  ASSERT_TRUE(s.found);
  EXPECT_GT(s.form_condition, 1.0);
  EXPECT_FALSE(common_conformal_structure({Mat2::diag(2.0, 1.0)}).found);
}
