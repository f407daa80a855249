#pragma once

// Subadditive pressure of the singular value potential, additive pressures
// of locally constant potentials, and Lyapunov exponents.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gl2tf/cocycle.hpp"
#include "gl2tf/markov.hpp"

namespace gl2tf {

struct AdditivePressure {
  double value = 0.0;
  double lower = 0.0;  // from the Perron enclosure
  double upper = 0.0;
  int iterations = 0;
  bool converged = false;
};

AdditivePressure additive_pressure(const LocalFunction& phi);

LocalFunction log_abs(const LocalFunction& f);
LocalFunction half_log_det(const Cocycle& a);

struct QmConstants {
  double c = 1.0;
  int k = 0;
};

struct PressureOptions {
  int n_max = 12;
  std::optional<QmConstants> qm;
  bool structural = true;
  int jobs = 0;
};

struct PressureEstimate {
  int n_used = 0;
  std::vector<double> log_sums;  // log Sigma_n, n = 1..n_used
  std::vector<double> p_n;       // log Sigma_n / n
  double lower = 0.0;
  double upper = 0.0;
  double estimate = 0.0;
  std::string method;  // "word-sums", "conformal" or "triangular"
  std::string lower_source;
  std::string upper_source;
  double fekete_upper = 0.0;
  double determinant_lower = 0.0;
  double periodic_lower = 0.0;
  std::optional<double> qm_lower;

  double width() const { return upper - lower; }
  bool contains(double p) const { return lower <= p && p <= upper; }
};

// Rounding allowance added on both sides of brackets that are exact in
// exact arithmetic.
inline constexpr double kExactAllowance = 1e-12;

PressureEstimate subadditive_pressure(const Cocycle& a, const PressureOptions& opt = {});

// (1/per) log |eigenvalues| of A^{per}(p), largest first.
std::pair<double, double> lyapunov_periodic(const Cocycle& a, const Point& p);

struct LyapunovEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long n = 0;
  int trials = 0;
  std::vector<double> samples;
};

LyapunovEstimate lyapunov_monte_carlo(const Cocycle& a, const MarkovMeasure& mu, long n, int trials,
                                      std::uint64_t seed, int jobs = 0);

struct TriangularPressures {
  AdditivePressure p_a;  // P(log|a|)
  AdditivePressure p_c;  // P(log|c|)
  double p_max = 0.0;
};

TriangularPressures triangular_pressures(const TriangularCocycle& b);

// Straightens a constant invariant line: with C = [L, L-perp],
// C^-1 A(x) C is upper triangular. Throws PreconditionViolated when L is not
// invariant within tol.
TriangularCocycle straighten(const Cocycle& a, const Direction& l, double tol = 1e-9);

}  // namespace gl2tf
