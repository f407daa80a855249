#pragma once

// Closed-form 2x2 real linear algebra and the projective line RP^1.

#include <array>
#include <complex>
#include <vector>

namespace gl2tf {

inline constexpr double kDefaultDetTol = 1e-12;
inline constexpr double kDefaultGapTol = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 v);

struct Mat2 {
  double a11 = 0.0, a12 = 0.0;
  double a21 = 0.0, a22 = 0.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 diag(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }
  static Mat2 rotation(double angle);

  double det() const { return a11 * a22 - a12 * a21; }
  double trace() const { return a11 + a22; }
  Mat2 transpose() const { return {a11, a21, a12, a22}; }
  // Exact adjugate / det; caller is responsible for invertibility.
  Mat2 inverse() const;
  double max_abs() const;

  Vec2 operator*(Vec2 v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
  }
  friend Mat2 operator*(double s, const Mat2& m) { return {s * m.a11, s * m.a12, s * m.a21, s * m.a22}; }
  friend Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
  }
  friend Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

// Largest absolute entry of a - b, scaled by max(1, |b|_max).
double relative_entry_error(const Mat2& a, const Mat2& b);

// A line through the origin. The stored representative is unit length with a
// fixed sign (x > 0, or x == 0 and y > 0), so v and -v compare equal.
class Direction {
 public:
  Direction() : v_{1.0, 0.0} {}
  explicit Direction(Vec2 v);
  static Direction from_angle(double angle);

  Vec2 vector() const { return v_; }
  Direction perp() const { return Direction(Vec2{-v_.y, v_.x}); }
  // Angle of the representative in [0, pi).
  double angle() const;

  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  Vec2 v_;
};

inline const Direction kE1{Vec2{1.0, 0.0}};
inline const Direction kE2{Vec2{0.0, 1.0}};

// Projective action M(L).
Direction apply(const Mat2& m, const Direction& d);

// Acute angle between two lines, in [0, pi/2].
double angular_distance(const Direction& u, const Direction& w);

double operator_norm(const Mat2& m);

// ||M|| * ||M^-1||, the conformality defect used by fiber-bunching.
double condition_number(const Mat2& m);

struct SvdData {
  double s1 = 0.0;  // ||M||
  double s2 = 0.0;  // ||M^-1||^-1
  Direction u;      // top left singular direction
  Direction v;      // top right singular direction; M v = +-s1 u
  bool conformal = false;  // s1 == s2 within rounding; u, v then non-unique
};

// Throws Error(Singular) when |det M| <= det_tol.
SvdData svd2(const Mat2& m, double det_tol = kDefaultDetTol);

enum class EigenKind { RealDistinctModulus, RealEqualModulus, ComplexPair };

struct EigenData {
  // Ordered so that |lambda1| >= |lambda2|.
  std::complex<double> lambda1;
  std::complex<double> lambda2;
  EigenKind kind = EigenKind::ComplexPair;
  // Relative modulus gap (|l1| - |l2|) / |l1|.
  double modulus_gap = 0.0;
  // Real eigendirections, ordered as the eigenvalues; empty for complex
  // pairs, one entry for a Jordan block, both basis vectors for scalars.
  std::vector<Direction> directions;
};

EigenData eigen2(const Mat2& m, double gap_tol = kDefaultGapTol);

struct TransversalityBound {
  double gap = 0.0;    // pi/2 - rho(v(A), u(B))
  double ratio = 0.0;  // ||AB|| / (||A|| ||B||)
};

TransversalityBound transversality_product_bound(const Mat2& a, const Mat2& b);

// Lines fixed by every matrix in the family, to within `tol` (relative
// cross-product residual). At most two are returned; when every matrix is a
// scalar multiple of the identity the result is {e1, e2}.
std::vector<Direction> common_invariant_lines(const std::vector<Mat2>& family, double tol = 1e-9);

// Looks for a positive definite quadratic form Q with M^T Q M = |det M| Q for
// every M in the family. Returns the condition number of Q when one exists.
struct ConformalStructure {
  bool found = false;
  Mat2 form = Mat2::identity();
  double form_condition = 1.0;
};
ConformalStructure common_conformal_structure(const std::vector<Mat2>& family, double tol = 1e-9);

}  // namespace gl2tf
