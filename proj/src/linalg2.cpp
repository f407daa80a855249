#include "gl2tf/linalg2.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gl2tf/error.hpp"

namespace gl2tf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::SymbolMismatch: return "SymbolMismatch";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::NotOnStableSet: return "NotOnStableSet";
    case ErrorCode::NotOnUnstableSet: return "NotOnUnstableSet";
    case ErrorCode::NotARectangle: return "NotARectangle";
    case ErrorCode::NotHomoclinic: return "NotHomoclinic";
    case ErrorCode::InvalidMeasure: return "InvalidMeasure";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NoAdmissibleConnector: return "NoAdmissibleConnector";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

double norm(Vec2 v) { return std::hypot(v.x, v.y); }

Mat2 Mat2::rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c, -s, s, c};
}

Mat2 Mat2::inverse() const {
  const double d = det();
  return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

double Mat2::max_abs() const {
  return std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
}

double relative_entry_error(const Mat2& a, const Mat2& b) {
  return (a - b).max_abs() / std::max(1.0, b.max_abs());
}

Direction::Direction(Vec2 v) {
  const double n = norm(v);
  v_ = n > 0.0 ? Vec2{v.x / n, v.y / n} : Vec2{1.0, 0.0};
  if (v_.x < 0.0 || (v_.x == 0.0 && v_.y < 0.0)) {
    v_ = {-v_.x, -v_.y};
  }
  if (v_.x == 0.0) v_.x = 0.0;  // drop -0.0
}

Direction Direction::from_angle(double angle) { return Direction(Vec2{std::cos(angle), std::sin(angle)}); }

double Direction::angle() const {
  double a = std::atan2(v_.y, v_.x);
  if (a < 0.0) a += std::numbers::pi;
  if (a >= std::numbers::pi) a -= std::numbers::pi;
  return a;
}

Direction apply(const Mat2& m, const Direction& d) { return Direction(m * d.vector()); }

double angular_distance(const Direction& u, const Direction& w) {
  const Vec2 a = u.vector();
  const Vec2 b = w.vector();
  return std::atan2(std::abs(cross(a, b)), std::abs(dot(a, b)));
}

double operator_norm(const Mat2& m) {
  // s1 = Q + R with Q, R the moduli of the conformal and anticonformal parts.
  const double e = 0.5 * (m.a11 + m.a22);
  const double f = 0.5 * (m.a11 - m.a22);
  const double g = 0.5 * (m.a21 + m.a12);
  const double h = 0.5 * (m.a21 - m.a12);
  return std::hypot(e, h) + std::hypot(f, g);
}

double condition_number(const Mat2& m) {
  const double s1 = operator_norm(m);
  return s1 * s1 / std::abs(m.det());
}

SvdData svd2(const Mat2& m, double det_tol) {
  const double det = m.det();
  if (!(std::abs(det) > det_tol)) {
    throw Error(ErrorCode::Singular, "svd2: matrix is singular");
  }
  SvdData out;
  out.s1 = operator_norm(m);
  out.s2 = std::abs(det) / out.s1;
  // M^T M = [[p, r], [r, s]]; its principal axis is v(M).
  const double p = m.a11 * m.a11 + m.a21 * m.a21;
  const double r = m.a11 * m.a12 + m.a21 * m.a22;
  const double s = m.a12 * m.a12 + m.a22 * m.a22;
  out.conformal = (out.s1 - out.s2) <= 1e-12 * out.s1;
  if (out.conformal) {
    out.v = kE1;
  } else {
    out.v = Direction::from_angle(0.5 * std::atan2(2.0 * r, p - s));
  }
  out.u = apply(m, out.v);
  return out;
}

namespace {

Direction null_direction(const Mat2& m, double lambda) {
  // Null vector of M - lambda I from the row with the larger norm.
  const Vec2 r1{m.a11 - lambda, m.a12};
  const Vec2 r2{m.a21, m.a22 - lambda};
  const Vec2 row = norm(r1) >= norm(r2) ? r1 : r2;
  return Direction(Vec2{-row.y, row.x});
}

}  // namespace

EigenData eigen2(const Mat2& m, double gap_tol) {
  EigenData out;
  const double tr = m.trace();
  const double det = m.det();
  const double half = 0.5 * tr;
  const double hd = 0.5 * (m.a11 - m.a22);
  const double disc = hd * hd + m.a12 * m.a21;
  const double scale = std::max(1.0, m.max_abs());

  if (disc < 0.0) {
    const double im = std::sqrt(-disc);
    out.lambda1 = {half, im};
    out.lambda2 = {half, -im};
    out.kind = EigenKind::ComplexPair;
    out.modulus_gap = 0.0;
    return out;
  }
  // Stable quadratic formula: compute the larger root first.
  const double sq = std::sqrt(disc);
  const double big = half >= 0.0 ? half + sq : half - sq;
  const double small = big != 0.0 ? det / big : 0.0;
  out.lambda1 = big;
  out.lambda2 = small;
  const double m1 = std::abs(big);
  const double m2 = std::abs(small);
  out.modulus_gap = m1 > 0.0 ? (m1 - m2) / m1 : 0.0;
  out.kind = out.modulus_gap > gap_tol ? EigenKind::RealDistinctModulus : EigenKind::RealEqualModulus;

  const bool scalar = std::abs(m.a12) <= 1e-15 * scale && std::abs(m.a21) <= 1e-15 * scale &&
                      std::abs(m.a11 - m.a22) <= 1e-15 * scale;
  if (scalar) {
    out.directions = {kE1, kE2};
  } else if (sq <= 1e-15 * scale) {
    out.directions = {null_direction(m, half)};
  } else {
    out.directions = {null_direction(m, big), null_direction(m, small)};
  }
  return out;
}

TransversalityBound transversality_product_bound(const Mat2& a, const Mat2& b) {
  const SvdData sa = svd2(a);
  const SvdData sb = svd2(b);
  TransversalityBound out;
  out.gap = std::numbers::pi / 2.0 - angular_distance(sa.v, sb.u);
  out.ratio = operator_norm(a * b) / (sa.s1 * sb.s1);
  return out;
}

std::vector<Direction> common_invariant_lines(const std::vector<Mat2>& family, double tol) {
  auto invariant_under_all = [&](const Direction& d) {
    for (const Mat2& m : family) {
      const Vec2 v = d.vector();
      if (std::abs(cross(m * v, v)) > tol * operator_norm(m)) return false;
    }
    return true;
  };
  std::vector<Direction> candidates;
  for (const Mat2& m : family) {
    const EigenData e = eigen2(m);
    if (e.kind == EigenKind::ComplexPair) return {};
    if (e.directions.size() == 2 && e.directions[0] == kE1 && e.directions[1] == kE2 &&
        std::abs(m.a12) + std::abs(m.a21) == 0.0 && m.a11 == m.a22) {
      continue;  // scalar matrix: no constraint
    }
    candidates = e.directions;
    break;
  }
  if (candidates.empty()) return {kE1, kE2};
  std::vector<Direction> out;
  for (const Direction& d : candidates) {
    if (invariant_under_all(d)) out.push_back(d);
  }
  return out;
}

namespace {

// Cyclic Jacobi sweep for a symmetric 3x3 matrix. Eigenvalues ascending.
void symmetric_eigen3(std::array<std::array<double, 3>, 3> a, std::array<double, 3>& values,
                      std::array<std::array<double, 3>, 3>& vectors) {
  std::array<std::array<double, 3>, 3> v{};
  for (int i = 0; i < 3; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
    if (off < 1e-300) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < 3; ++k) {
          const double vkp = v[k][p];
          const double vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a[i][i] < a[j][j]; });
  for (int i = 0; i < 3; ++i) {
    values[i] = a[order[i]][order[i]];
    for (int k = 0; k < 3; ++k) vectors[i][k] = v[k][order[i]];
  }
}

double form_residual(const std::vector<Mat2>& family, const Mat2& q) {
  double worst = 0.0;
  for (const Mat2& m : family) {
    const double s = 1.0 / std::sqrt(std::abs(m.det()));
    const Mat2 mh = s * m;
    worst = std::max(worst, relative_entry_error(mh.transpose() * q * mh, q));
  }
  return worst;
}

}  // namespace

ConformalStructure common_conformal_structure(const std::vector<Mat2>& family, double tol) {
  ConformalStructure out;
  if (form_residual(family, Mat2::identity()) <= tol) {
    out.found = true;
    return out;
  }
  std::array<std::array<double, 3>, 3> gram{};
  for (const Mat2& m : family) {
    const double s = 1.0 / std::sqrt(std::abs(m.det()));
    const double a = s * m.a11, b = s * m.a12, c = s * m.a21, d = s * m.a22;
    const std::array<std::array<double, 3>, 3> rows{{{a * a - 1.0, 2.0 * a * c, c * c},
                                                     {a * b, a * d + b * c - 1.0, c * d},
                                                     {b * b, 2.0 * b * d, d * d - 1.0}}};
    for (const auto& row : rows)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) gram[i][j] += row[i] * row[j];
  }
  std::array<double, 3> values{};
  std::array<std::array<double, 3>, 3> vectors{};
  symmetric_eigen3(gram, values, vectors);
  const double threshold = 1e-12 * std::max(1.0, values[2]) * static_cast<double>(family.size());
  std::vector<std::array<double, 3>> basis;
  for (int i = 0; i < 3; ++i)
    if (values[i] <= threshold) basis.push_back(vectors[i]);
  if (basis.empty()) return out;

  std::vector<std::array<double, 3>> candidates;
  // Projection of the identity form onto the null space first.
  std::array<double, 3> proj{};
  const std::array<double, 3> id{1.0, 0.0, 1.0};
  for (const auto& b : basis) {
    const double c = b[0] * id[0] + b[1] * id[1] + b[2] * id[2];
    for (int k = 0; k < 3; ++k) proj[k] += c * b[k];
  }
  candidates.push_back(proj);
  for (const auto& b : basis) candidates.push_back(b);
  if (basis.size() >= 2) {
    candidates.push_back({basis[0][0] + basis[1][0], basis[0][1] + basis[1][1], basis[0][2] + basis[1][2]});
    candidates.push_back({basis[0][0] - basis[1][0], basis[0][1] - basis[1][1], basis[0][2] - basis[1][2]});
  }
  for (auto c : candidates) {
    if (c[0] < 0.0) {
      for (double& x : c) x = -x;
    }
    const double p = c[0], r = c[1], s = c[2];
    const double det = p * s - r * r;
    const double tr = p + s;
    if (!(p > 0.0 && det > tol * tr * tr)) continue;
    const Mat2 q{p / tr, r / tr, r / tr, s / tr};
    if (form_residual(family, q) > 100.0 * tol) continue;
    const double half = 0.5 * (q.a11 + q.a22);
    const double disc = std::sqrt(std::max(0.0, half * half - q.det()));
    out.found = true;
    out.form = q;
    out.form_condition = (half + disc) / (half - disc);
    return out;
  }
  return out;
}

}  // namespace gl2tf
