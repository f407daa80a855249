#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "gl2tf/error.hpp"
#include "gl2tf/holonomy.hpp"

using namespace gl2tf;

namespace {

std::vector<Cocycle> all_fixtures() {
  return {fixtures::typical(), fixtures::depth_one_three_symbols(5), fixtures::two_state_diagonal()};
}

// y in W^s(x), differing from x somewhere below `cut`.
Point stable_partner(const ShiftSpace& s, const Point& x, std::mt19937_64& rng, long cut) {
  while (true) {
    const Point y = fixtures::splice(fixtures::random_point(s, rng), x, cut);
    if (y.admissible_in(s)) return y;
  }
}

Point unstable_partner(const ShiftSpace& s, const Point& x, std::mt19937_64& rng, long cut) {
  while (true) {
    const Point y = fixtures::splice(x, fixtures::random_point(s, rng), cut);
    if (y.admissible_in(s)) return y;
  }
}

}  // namespace

TEST(Holonomy, StableMatchesLongTruncation) {
  std::mt19937_64 rng(1);
  for (const Cocycle& a : all_fixtures()) {
    for (int t = 0; t < 40; ++t) {
      const Point x = fixtures::random_point(a.shift(), rng);
      const Point y = stable_partner(a.shift(), x, rng, static_cast<long>(rng() % 7) - 3);
      const HolonomyResult h = stable_holonomy(a, x, y);
      EXPECT_TRUE(h.exact);
      for (long extra : {1L, 6L, 13L}) {
        const long n = h.truncation_n + extra;
        EXPECT_LT(relative_entry_error(h.h, a.product(y, n).inverse() * a.product(x, n)), 1e-9);
      }
    }
  }
}

TEST(Holonomy, UnstableMatchesLongTruncation) {
  std::mt19937_64 rng(2);
  for (const Cocycle& a : all_fixtures()) {
    for (int t = 0; t < 40; ++t) {
      const Point x = fixtures::random_point(a.shift(), rng);
      const Point y = unstable_partner(a.shift(), x, rng, static_cast<long>(rng() % 7) - 3);
      const HolonomyResult h = unstable_holonomy(a, x, y);
      for (long extra : {1L, 6L, 13L}) {
        const long n = -(h.truncation_n + extra);
        EXPECT_LT(relative_entry_error(h.h, a.product(y, n).inverse() * a.product(x, n)), 1e-9);
      }
    }
  }
}

TEST(Holonomy, GroupoidAndIntertwining) {
  std::mt19937_64 rng(3);
  for (const Cocycle& a : all_fixtures()) {
    for (int t = 0; t < 30; ++t) {
      const Point x = fixtures::random_point(a.shift(), rng);
      const Point y = stable_partner(a.shift(), x, rng, 2);
      const Point z = stable_partner(a.shift(), x, rng, 1);
      EXPECT_EQ(stable_holonomy(a, x, x).h, Mat2::identity());
      EXPECT_LT(relative_entry_error(stable_holonomy(a, y, z).h * stable_holonomy(a, x, y).h,
                                     stable_holonomy(a, x, z).h),
                1e-9);
      const long n = static_cast<long>(rng() % 9) - 4;
      const Mat2 lhs = a.product(y, n) * stable_holonomy(a, x, y).h;
      const Mat2 rhs = stable_holonomy(a, x.shifted(n), y.shifted(n)).h * a.product(x, n);
      EXPECT_LT(relative_entry_error(lhs, rhs), 1e-9);

      const Point u = unstable_partner(a.shift(), x, rng, -1);
      const Point v = unstable_partner(a.shift(), x, rng, 0);
      EXPECT_LT(relative_entry_error(unstable_holonomy(a, u, v).h * unstable_holonomy(a, x, u).h,
                                     unstable_holonomy(a, x, v).h),
                1e-9);
      const Mat2 l2 = a.product(u, n) * unstable_holonomy(a, x, u).h;
      const Mat2 r2 = unstable_holonomy(a, x.shifted(n), u.shifted(n)).h * a.product(x, n);
      EXPECT_LT(relative_entry_error(l2, r2), 1e-9);
    }
  }
}

TEST(Holonomy, AdjointDuality) {
  // H^s for the adjoint cocycle equals (H^u_{y,x})^T.
  std::mt19937_64 rng(4);
  for (const Cocycle& a : all_fixtures()) {
    const Cocycle b = adjoint(a);
    for (int t = 0; t < 30; ++t) {
      const Point x = fixtures::random_point(a.shift(), rng);
      const Point y = unstable_partner(a.shift(), x, rng, static_cast<long>(rng() % 5) - 2);
      const Mat2 lhs = stable_holonomy(b, adjoint_coordinates(x), adjoint_coordinates(y)).h;
      EXPECT_LT(relative_entry_error(lhs, unstable_holonomy(a, y, x).h.transpose()), 1e-9);
    }
  }
}

TEST(Holonomy, LoopConjugation) {
  const Cocycle a = fixtures::typical();
  for (const Word& block : {Word{0}, Word{0, 1}, Word{0, 0, 1}}) {
    const Point p = Point::periodic(block);
    const long per = p.period();
    for (const Point& z : homoclinic_points(a.shift(), p, 3)) {
      const Mat2 psi = holonomy_loop(a, p, z);
      for (long j = -2; j <= 2; ++j) {
        const long r = j * per;
        const Mat2 pr = a.product(p, r);
        const Mat2 moved = pr.inverse() * holonomy_loop(a, p, z.shifted(r)) * pr;
        EXPECT_LT(relative_entry_error(psi, moved), 1e-9);
      }
    }
  }
}

TEST(Holonomy, Rectangle) {
  const Cocycle a = fixtures::typical();
  const Point x = Point::make({0}, {1, 0, 1}, {1}, -1);
  const Point w = Point::make({1}, {0, 1}, {0, 1}, 0);
  ASSERT_EQ(x.at(0), w.at(0));
  // [x, w] corners: x, bracket(x, w) shares the past of x and the future of w.
  const Point b = bracket(w, x);
  const Point d = bracket(x, w);
  const Mat2 h = holonomy_rectangle(a, x, b, w, d);
  EXPECT_LT(relative_entry_error(h, unstable_holonomy(a, d, x).h * stable_holonomy(a, w, d).h *
                                        unstable_holonomy(a, b, w).h * stable_holonomy(a, x, b).h),
            1e-12);
  EXPECT_THROW(holonomy_rectangle(a, x, w, x, w), Error);
}

TEST(Holonomy, Errors) {
  const Cocycle a = fixtures::typical();
  const Point p = Point::periodic({0});
  const Point q = Point::periodic({1});
  try {
    stable_holonomy(a, p, q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOnStableSet);
  }
  try {
    unstable_holonomy(a, p, q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOnUnstableSet);
  }
  try {
    holonomy_loop(a, p, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHomoclinic);
  }
}

TEST(Holonomy, HolderDiagnostic) {
  const Cocycle a = fixtures::depth_one_three_symbols(9);
  std::vector<std::pair<Point, Point>> pairs;
  std::mt19937_64 rng(5);
  const Point x = Point::periodic({0, 1, 2});
  for (long cut = 1; cut <= 8; ++cut)
    for (int t = 0; t < 4; ++t) pairs.emplace_back(x, stable_partner(a.shift(), x, rng, cut));
  const HolderFit fit = holder_diagnostic(a, pairs);
  EXPECT_GT(fit.pairs_used, 0u);
  EXPECT_TRUE(std::isfinite(fit.exponent));
}
