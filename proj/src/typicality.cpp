#include "gl2tf/typicality.hpp"

#include <cmath>

#include "gl2tf/error.hpp"

namespace gl2tf {

namespace {

double twist(const Mat2& psi, const Direction& v) { return angular_distance(apply(psi, v), v); }

}  // namespace

PinchingResult pinching_check(const Cocycle& a, const Point& p, double gap_tol) {
  if (!p.is_periodic()) throw Error(ErrorCode::InvalidArgument, "pinching_check: p must be periodic");
  PinchingResult out;
  out.period_product = a.product(p, p.period());
  out.eigen = eigen2(out.period_product, gap_tol);
  out.lambda_plus = out.eigen.lambda1;
  out.lambda_minus = out.eigen.lambda2;
  switch (out.eigen.kind) {
    case EigenKind::ComplexPair:
      out.failure = PinchingFailure::ComplexPair;
      return out;
    case EigenKind::RealEqualModulus:
      out.failure = PinchingFailure::RealEqualModulus;
      return out;
    case EigenKind::RealDistinctModulus:
      break;
  }
  if (!(out.eigen.modulus_gap > gap_tol) || out.eigen.directions.size() != 2) {
    out.failure = PinchingFailure::GapBelowTolerance;
    return out;
  }
  out.pinching = true;
  out.v_plus = out.eigen.directions[0];
  out.v_minus = out.eigen.directions[1];
  return out;
}

TwistResult twisting_search(const Cocycle& a, const Point& p, const PinchingResult& pin, int core_bound,
                            double twist_tol) {
  if (!pin.pinching) throw Error(ErrorCode::PreconditionViolated, "twisting_search needs a pinching point");
  TwistResult out;
  for (const Point& z : homoclinic_points(a.shift(), p, core_bound)) {
    ++out.examined;
    const Mat2 psi = holonomy_loop(a, p, z);
    if (!out.found_plus) {
      const double m = twist(psi, pin.v_plus);
      if (m > twist_tol) {
        out.found_plus = true;
        out.z_plus = z;
        out.margin_plus = m;
      }
    }
    if (!out.found_minus) {
      const double m = twist(psi, pin.v_minus);
      if (m > twist_tol) {
        out.found_minus = true;
        out.z_minus = z;
        out.margin_minus = m;
      }
    }
    if (out.found()) break;
  }
  return out;
}

std::optional<TypicalityCertificate> is_typical(const Cocycle& a, const TypicalityOptions& opt) {
  const PeriodicPoints pts = periodic_points(a.shift(), opt.period_bound);
  for (const Point& p : pts.representatives) {
    const PinchingResult pin = pinching_check(a, p, opt.gap_tol);
    if (!pin.pinching) continue;
    const TwistResult tw = twisting_search(a, p, pin, opt.core_bound, opt.twist_tol);
    if (!tw.found()) continue;
    TypicalityCertificate c;
    c.p = p;
    c.lambda_plus = pin.lambda_plus;
    c.lambda_minus = pin.lambda_minus;
    c.v_plus = pin.v_plus;
    c.v_minus = pin.v_minus;
    c.z_plus = tw.z_plus;
    c.z_minus = tw.z_minus;
    c.margin_plus = tw.margin_plus;
    c.margin_minus = tw.margin_minus;
    c.modulus_gap = pin.eigen.modulus_gap;
    return c;
  }
  return std::nullopt;
}

bool verify_certificate(const Cocycle& a, const TypicalityCertificate& c, const TypicalityOptions& opt) {
  const PinchingResult pin = pinching_check(a, c.p, opt.gap_tol);
  if (!pin.pinching) return false;
  if (angular_distance(pin.v_plus, c.v_plus) > 1e-9 || angular_distance(pin.v_minus, c.v_minus) > 1e-9) return false;
  const double mp = twist(holonomy_loop(a, c.p, c.z_plus), pin.v_plus);
  const double mm = twist(holonomy_loop(a, c.p, c.z_minus), pin.v_minus);
  return mp > opt.twist_tol && mm > opt.twist_tol;
}

WitnessResult irreducibility_witness(const Cocycle& a, const Point& p, const Direction& l, int core_bound,
                                     double twist_tol) {
  if (!p.is_periodic()) throw Error(ErrorCode::InvalidArgument, "irreducibility_witness: p must be periodic");
  WitnessResult out;
  const double moved = twist(a.product(p, p.period()), l);
  if (moved > twist_tol) {
    out.found = true;
    out.periodic_action = true;
    out.z = p;
    out.margin = moved;
    return out;
  }
  for (const Point& z : homoclinic_points(a.shift(), p, core_bound)) {
    ++out.examined;
    const double m = twist(holonomy_loop(a, p, z), l);
    if (m > twist_tol) {
      out.found = true;
      out.z = z;
      out.margin = m;
      return out;
    }
  }
  return out;
}

BundleSample bundle_propagation(const Cocycle& a, const Point& p, const Direction& l, int core_bound,
                                double twist_tol) {
  const WitnessResult w = irreducibility_witness(a, p, l, core_bound, twist_tol);
  if (w.found)
    throw Error(ErrorCode::PreconditionViolated, "bundle_propagation: witness " + w.z.to_string() + " moves L");
  const std::vector<Point> zs = homoclinic_points(a.shift(), p, core_bound);
  BundleSample out;
  auto line_at = [&](const Point& z) { return apply(stable_holonomy(a, p, z).h, l); };
  auto note = [&](double mismatch) {
    out.inconsistency = std::max(out.inconsistency, mismatch);
    ++out.checks;
  };
  out.lines.emplace_back(p, l);
  for (const Point& z : zs) {
    const Direction ls = line_at(z);
    out.lines.emplace_back(z, ls);
    note(angular_distance(ls, apply(unstable_holonomy(a, p, z).h, l)));
    // A-invariance along the orbit: L_{sigma z} = A(z) L_z.
    note(angular_distance(apply(stable_holonomy(a, p.shifted(1), z.shifted(1)).h, apply(a.evaluate(p), l)),
                          apply(a.evaluate(z), ls)));
  }
  // Bracket-propagated values: w = [z1, z2] is reached from z2 along a local
  // stable set and from z1 along a local unstable set.
  for (std::size_t i = 0; i < zs.size(); ++i) {
    for (std::size_t j = 0; j < zs.size(); ++j) {
      if (zs[i].at(0) != zs[j].at(0)) continue;
      const Point w = bracket(zs[i], zs[j]);
      const Direction l1 = line_at(zs[i]);
      const Direction l2 = line_at(zs[j]);
      const Direction via_s = apply(stable_holonomy(a, zs[j], w).h, l2);
      const Direction via_u = apply(unstable_holonomy(a, zs[i], w).h, l1);
      note(angular_distance(via_s, via_u));
    }
  }
  return out;
}

EqualModulusScan equal_modulus_scan(const Cocycle& a, int period_bound, double gap_tol) {
  EqualModulusScan out;
  const PeriodicPoints pts = periodic_points(a.shift(), period_bound);
  for (const Point& p : pts.representatives) {
    ++out.points_checked;
    const EigenData e = eigen2(a.product(p, p.period()), gap_tol);
    const double m1 = std::abs(e.lambda1), m2 = std::abs(e.lambda2);
    if ((m1 - m2) / m1 > gap_tol) {
      out.all_equal = false;
      out.counterexample = p;
      return out;
    }
  }
  return out;
}

}  // namespace gl2tf
