#pragma once

// Equilibrium states, the periodic-orbit cohomology test and the
// classification pipeline.

#include <optional>
#include <string>
#include <vector>

#include "gl2tf/pressure.hpp"
#include "gl2tf/qm.hpp"
#include "gl2tf/typicality.hpp"

namespace gl2tf {

struct CylinderMeasure {
  WordList words;  // L(depth) in lexicographic order
  std::vector<double> weights;
  int depth() const { return words.length(); }
  double total() const;
};

CylinderMeasure cylinders(const MarkovMeasure& mu, int depth);

struct GibbsWeights {
  CylinderMeasure measure;
  double pressure = 0.0;
  // max / min over depths n' <= n and I' in L(n') of mu([I']) e^{n' P} / ||A(I')||,
  // where mu([I']) is the marginal of the depth-n weights.
  double gibbs_constant = 1.0;
  std::vector<double> constant_by_depth;  // same ratio restricted to n' = 1..n
};

GibbsWeights gibbs_weights(const Cocycle& a, int n, double pressure);

struct MarkovEquilibrium {
  MarkovMeasure measure;
  AdditivePressure pressure;
};

// Equilibrium state of a locally constant potential: the Markov chain on
// (2k+1)-windows built from the Perron data of the transfer matrix.
MarkovEquilibrium markov_equilibrium(const LocalFunction& phi);

enum class CohomologyStatus { NotCohomologous, PossiblyCohomologous };

struct CohomologyVerdict {
  CohomologyStatus status = CohomologyStatus::PossiblyCohomologous;
  std::optional<Point> witness;
  double discrepancy = 0.0;      // S_per phi - S_per psi at the witness
  double max_discrepancy = 0.0;  // over all tested orbits
  int period_bound = 0;          // effective bound after the capacity clamp
  std::size_t orbits_checked = 0;
};

inline constexpr int kDefaultLivsicPeriodBound = 12;
inline constexpr double kDefaultCohTol = 1e-9;

CohomologyVerdict livsic_test(const LocalFunction& phi, const LocalFunction& psi,
                              int period_bound = kDefaultLivsicPeriodBound, double coh_tol = kDefaultCohTol);

// A line field L(x) depending on x_{-k} ... x_k.
struct LineField {
  int depth = 0;
  std::map<Word, Direction> lines;
};

// B(x) = C(sigma x)^-1 A(x) C(x) with C(x) = [L(x), L(x)-perp]. Throws
// PreconditionViolated when the field is not A-invariant within tol.
TriangularCocycle straighten_field(const Cocycle& a, const LineField& field, double tol = 1e-9);

enum class Branch { Typical, ConformalDetected, ReducibleUnique, ReducibleTwoErgodic, Undetermined };
std::string_view to_string(Branch b);

struct EquilibriumState {
  std::string label;
  CylinderMeasure cylinders;
  std::optional<MarkovMeasure> markov;
  double entropy = 0.0;  // only for Markov states
};

struct ClassificationResult {
  Branch branch = Branch::Undetermined;
  std::string reason;
  std::optional<TypicalityCertificate> typicality;
  std::optional<QmReport> qm;
  std::optional<PressureEstimate> pressure;
  double pressure_value = 0.0;
  std::optional<TriangularPressures> triangular;
  std::optional<Direction> invariant_line;
  std::optional<CohomologyVerdict> cohomology;
  std::optional<Point> modulus_counterexample;
  std::vector<EquilibriumState> states;
  std::vector<std::string> notes;
};

struct ClassifyOptions {
  int period_bound = 4;
  int core_bound = kDefaultCoreBound;
  double gap_tol = kDefaultGapTol;
  double twist_tol = kDefaultTwistTol;
  int livsic_period_bound = kDefaultLivsicPeriodBound;
  double coh_tol = kDefaultCohTol;
  double pressure_equal_tol = 1e-9;
  double pressure_undetermined_tol = 1e-6;
  int n_max = 10;
  int state_depth = 8;
  int qm_n = 6;
  int qm_k_max = -1;  // -1: mixing exponent + 4
  std::size_t qm_samples = 1u << 16;
  std::uint64_t seed = 0;
  int jobs = 0;
  std::optional<LineField> invariant_line;
};

ClassificationResult classify_triangular(const TriangularCocycle& b, const ClassifyOptions& opt = {});
ClassificationResult classify(const Cocycle& a, const ClassifyOptions& opt = {});

struct BundleConsistency {
  CohomologyVerdict a1_vs_c2;
  CohomologyVerdict a2_vs_c1;
  bool consistent() const {
    return a1_vs_c2.status == CohomologyStatus::PossiblyCohomologous &&
           a2_vs_c1.status == CohomologyStatus::PossiblyCohomologous;
  }
};

// Two transverse invariant bundles must give log|a1| ~ log|c2| and
// log|a2| ~ log|c1|.
BundleConsistency bundle_consistency(const Cocycle& a, const LineField& l1, const LineField& l2,
                                     int period_bound = kDefaultLivsicPeriodBound, double coh_tol = kDefaultCohTol);

}  // namespace gl2tf
