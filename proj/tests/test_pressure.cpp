#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "gl2tf/error.hpp"
#include "gl2tf/pressure.hpp"
#include "oracles.hpp"

using namespace gl2tf;

namespace {

const ShiftSpace kFull2 = ShiftSpace::full(2);

// Z_n = sum over x with sigma^n x = x of exp(S_n phi(x)) for a depth-1
// potential on the full 2-shift, by listing every periodic block.
long double periodic_partition(const std::map<Word, double>& phi, int n) {
  long double total = 0;
  for (std::uint32_t code = 0; code < (1u << n); ++code) {
    long double s = 0;
    for (int i = 0; i < n; ++i) {
      const int l = (code >> ((i + n - 1) % n)) & 1, c = (code >> i) & 1, r = (code >> ((i + 1) % n)) & 1;
      s += phi.at({l, c, r});
    }
    total += std::exp(s);
  }
  return total;
}

using M4 = std::array<std::array<long double, 4>, 4>;

M4 mul4(const M4& a, const M4& b) {
  M4 c{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

long double trace4(const M4& a) { return a[0][0] + a[1][1] + a[2][2] + a[3][3]; }

// Pair transfer matrix: (l,c) -> (c,r) with weight exp(phi(lcr)).
M4 pair_transfer(const std::map<Word, double>& phi) {
  M4 m{};
  for (int l = 0; l < 2; ++l)
    for (int c = 0; c < 2; ++c)
      for (int r = 0; r < 2; ++r) m[2 * l + c][2 * c + r] = std::exp(static_cast<long double>(phi.at({l, c, r})));
  return m;
}

}  // namespace

TEST(Pressure, AdditiveGoldenMean) {
  const ShiftSpace g({{1, 1}, {1, 0}});
  const AdditivePressure p = additive_pressure(LocalFunction::constant(g, 0.0));
  EXPECT_NEAR(p.value, std::log(static_cast<double>(oracle::golden())), 1e-12);
  EXPECT_LE(p.lower, p.value);
  EXPECT_GE(p.upper, p.value);
  EXPECT_TRUE(p.converged);
}

TEST(Pressure, AdditivePerSymbol) {
  // P(phi) = log sum_i exp(v_i) on the full shift.
  const ShiftSpace s = ShiftSpace::full(3);
  const AdditivePressure p = additive_pressure(LocalFunction::from_symbols(s, {0.3, -1.0, 2.0}));
  EXPECT_NEAR(p.value, std::log(std::exp(0.3) + std::exp(-1.0) + std::exp(2.0)), 1e-12);
}

TEST(Pressure, AdditiveDepthOneAgainstPeriodicSums) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::map<Word, double> phi;
  const WordList w = enumerate_words(kFull2, 3);
  for (std::size_t i = 0; i < w.size(); ++i) phi[w.word(i)] = u(rng);
  const AdditivePressure p = additive_pressure(LocalFunction(kFull2, 1, phi));
  const M4 m = pair_transfer(phi);
  M4 pow = m;
  for (int i = 1; i < 10; ++i) pow = mul4(pow, m);
  EXPECT_NEAR(static_cast<double>(trace4(pow) / periodic_partition(phi, 10)), 1.0, 1e-15);
  // tr(M^(2^k+1)) / tr(M^(2^k)) with renormalized squaring.
  pow = m;
  for (int i = 0; i < 10; ++i) {
    pow = mul4(pow, pow);
    const long double t = trace4(pow);
    for (auto& row : pow)
      for (auto& v : row) v /= t;
  }
  EXPECT_NEAR(p.value, static_cast<double>(std::log(trace4(mul4(pow, m)) / trace4(pow))), 1e-12);
}

TEST(Pressure, WordSumsMatchBruteForce) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> d(0.0, 1.0);
  for (int t = 0; t < 3; ++t) {
    const Mat2 m0{d(rng), d(rng), d(rng), d(rng)}, m1{d(rng), d(rng), d(rng), d(rng)};
    const Cocycle a = Cocycle::one_step(kFull2, {m0, m1});
    PressureOptions opt;
    opt.n_max = 10;
    const PressureEstimate e = subadditive_pressure(a, opt);
    const std::vector<oracle::M> gens{{m0.a11, m0.a12, m0.a21, m0.a22}, {m1.a11, m1.a12, m1.a21, m1.a22}};
    for (int n = 1; n <= 10; ++n)
      EXPECT_NEAR(e.log_sums[static_cast<std::size_t>(n - 1)],
                  static_cast<double>(std::log(oracle::full_shift_norm_sum(gens, n))), 1e-11);
    EXPECT_LE(e.lower, e.upper);
    EXPECT_GE(e.estimate, e.lower);
    EXPECT_LE(e.estimate, e.upper);
    EXPECT_LE(e.determinant_lower, e.fekete_upper);
    EXPECT_LE(e.periodic_lower, e.fekete_upper + 1e-12);
  }
}

TEST(Pressure, IdentityCollapsesToEntropy) {
  const Cocycle a = Cocycle::one_step(kFull2, {Mat2::identity(), Mat2::identity()});
  PressureOptions opt;
  opt.n_max = 8;
  opt.structural = false;
  const PressureEstimate e = subadditive_pressure(a, opt);
  EXPECT_TRUE(e.contains(std::log(2.0)));
  EXPECT_LT(e.width(), 1e-9);
}

TEST(Pressure, ConformalIsExact) {
  const PressureEstimate e = subadditive_pressure(fixtures::conformal());
  EXPECT_EQ(e.method, "conformal");
  EXPECT_TRUE(e.contains(std::log(3.0)));
  EXPECT_LT(e.width(), 1e-10);
}

TEST(Pressure, TriangularBracket) {
  const PressureEstimate e = subadditive_pressure(fixtures::two_state_diagonal());
  EXPECT_EQ(e.method, "triangular");
  EXPECT_TRUE(e.contains(std::log(3.0)));
  EXPECT_LT(e.width(), 1e-10);
}

TEST(Pressure, StraightenRecoversDiagonal) {
  const Mat2 c{1.0, 1.0, 0.0, 1.0};
  const Cocycle a = Cocycle::one_step(kFull2, {c * Mat2::diag(2.0, 0.5) * c.inverse(), c * Mat2::diag(3.0, -1.0) * c.inverse()});
  const TriangularCocycle t = straighten(a, kE1);
  const TriangularPressures tp = triangular_pressures(t);
  EXPECT_NEAR(tp.p_a.value, std::log(5.0), 1e-12);
  EXPECT_NEAR(tp.p_c.value, std::log(1.5), 1e-12);
  EXPECT_THROW(straighten(a, kE2), Error);
}

TEST(Pressure, QmLowerBound) {
  PressureOptions opt;
  opt.n_max = 8;
  opt.qm = QmConstants{0.5, 2};
  opt.structural = false;
  const PressureEstimate e = subadditive_pressure(fixtures::typical(), opt);
  ASSERT_TRUE(e.qm_lower.has_value());
  EXPECT_LE(*e.qm_lower, e.upper);
  opt.qm = QmConstants{0.0, 1};
  EXPECT_THROW(subadditive_pressure(fixtures::typical(), opt), Error);
}

TEST(Pressure, LyapunovPeriodic) {
  const auto [l1, l2] = lyapunov_periodic(fixtures::two_state_diagonal(), Point::periodic({0, 0, 1}));
  EXPECT_NEAR(l1, 2.0 * std::log(2.0) / 3.0, 1e-14);
  EXPECT_NEAR(l2, std::log(2.0) / 3.0, 1e-14);
}

TEST(Pressure, LyapunovMonteCarloDiagonal) {
  // ||A^n|| is the product of the top entries, so the exponent is the mean
  // of log a under the measure.
  const Cocycle a = Cocycle::one_step(kFull2, {Mat2::diag(2.0, 0.5), Mat2::diag(3.0, 1.0 / 3.0)});
  const MarkovMeasure mu = MarkovMeasure::bernoulli(kFull2, {0.25, 0.75});
  const LyapunovEstimate l = lyapunov_monte_carlo(a, mu, 2000, 32, 99);
  const double expect = 0.25 * std::log(2.0) + 0.75 * std::log(3.0);
  EXPECT_LT(std::abs(l.mean - expect), 4.0 * l.stderr_ + 1e-12);
  EXPECT_EQ(l.samples.size(), 32u);
  const LyapunovEstimate again = lyapunov_monte_carlo(a, mu, 2000, 32, 99);
  EXPECT_EQ(l.samples, again.samples);
}
