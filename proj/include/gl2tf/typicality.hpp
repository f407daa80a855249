#pragma once

// Pinching and twisting certificates, irreducibility witnesses and the
// equal-modulus scan.

#include <complex>
#include <optional>
#include <vector>

#include "gl2tf/holonomy.hpp"

namespace gl2tf {

inline constexpr double kDefaultTwistTol = 1e-8;
inline constexpr int kDefaultCoreBound = 6;

enum class PinchingFailure { None, RealEqualModulus, ComplexPair, GapBelowTolerance };

struct PinchingResult {
  bool pinching = false;
  PinchingFailure failure = PinchingFailure::None;
  Mat2 period_product = Mat2::identity();  // A^{per(p)}(p)
  EigenData eigen;
  std::complex<double> lambda_plus, lambda_minus;
  Direction v_plus, v_minus;  // valid only when pinching
};

PinchingResult pinching_check(const Cocycle& a, const Point& p, double gap_tol = kDefaultGapTol);

struct TwistResult {
  bool found_plus = false;
  bool found_minus = false;
  Point z_plus, z_minus;
  double margin_plus = 0.0, margin_minus = 0.0;
  std::size_t examined = 0;
  bool found() const { return found_plus && found_minus; }
};

// Scans homoclinic points of p in the canonical order and keeps the first
// one twisting each eigendirection by more than twist_tol.
TwistResult twisting_search(const Cocycle& a, const Point& p, const PinchingResult& pin, int core_bound,
                            double twist_tol = kDefaultTwistTol);

struct TypicalityCertificate {
  Point p;
  std::complex<double> lambda_plus, lambda_minus;
  Direction v_plus, v_minus;
  Point z_plus, z_minus;
  double margin_plus = 0.0, margin_minus = 0.0;
  double modulus_gap = 0.0;
  bool exact = true;
};

struct TypicalityOptions {
  int period_bound = 4;
  int core_bound = kDefaultCoreBound;
  double gap_tol = kDefaultGapTol;
  double twist_tol = kDefaultTwistTol;
};

// nullopt means Undetermined at the given bounds.
std::optional<TypicalityCertificate> is_typical(const Cocycle& a, const TypicalityOptions& opt = {});

// Re-checks a certificate from its data alone.
bool verify_certificate(const Cocycle& a, const TypicalityCertificate& c, const TypicalityOptions& opt = {});

struct WitnessResult {
  bool found = false;
  // True when A^{per}(p) already moves L; z is then p itself.
  bool periodic_action = false;
  Point z;
  double margin = 0.0;
  std::size_t examined = 0;
};

WitnessResult irreducibility_witness(const Cocycle& a, const Point& p, const Direction& l, int core_bound,
                                     double twist_tol = kDefaultTwistTol);

struct BundleSample {
  std::vector<std::pair<Point, Direction>> lines;  // L_z = H^s_{p,z}(L)
  double inconsistency = 0.0;  // worst angular mismatch over all cross-checks
  std::size_t checks = 0;
};

// Throws PreconditionViolated when a witness exists up to core_bound.
BundleSample bundle_propagation(const Cocycle& a, const Point& p, const Direction& l, int core_bound,
                                double twist_tol = kDefaultTwistTol);

struct EqualModulusScan {
  bool all_equal = true;
  std::optional<Point> counterexample;
  std::size_t points_checked = 0;
};

EqualModulusScan equal_modulus_scan(const Cocycle& a, int period_bound, double gap_tol = kDefaultGapTol);

}  // namespace gl2tf
