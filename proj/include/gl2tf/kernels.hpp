#pragma once

// Hot loops. Each kernel has a plain serial reference and an OpenMP
// version; the parallel versions reduce in a fixed order so their output
// does not depend on the thread count.

#include <cmath>
#include <cstdint>
#include <vector>

#include "gl2tf/cocycle.hpp"
#include "gl2tf/markov.hpp"
#include "gl2tf/qm.hpp"

namespace gl2tf::kernels {

// Sigma_n = sum over I in L(n) of ||A(I)||, held as scaled * exp(n log_scale).
struct WordSum {
  int n = 0;
  double scaled = 0.0;
  double log_scale = 0.0;  // per-step scale, log of the largest generator norm
  std::size_t words = 0;
  double log_sum() const { return std::log(scaled) + n * log_scale; }
};

struct PairMin {
  double ratio = 1.0;
  std::size_t pair = 0;
  Word k;
  int k_used = 0;
};

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x);
  double value() const { return sum + c; }
};

double log_scale_for(const Cocycle& a);

namespace serial {
WordSum word_norm_sum(const Cocycle& a, int n, std::size_t cap = kDefaultWordCap);
PairMin qm_min_ratio(const ConnectorSearch& search, const std::vector<WordData>& words,
                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs);
// (1/n) log ||A^n(x)|| for each trial; trial t uses seed splitmix64(seed + t).
std::vector<double> lyapunov_trials(const Cocycle& a, const MarkovMeasure& mu, long n, int trials, std::uint64_t seed);
}  // namespace serial

namespace parallel {
WordSum word_norm_sum(const Cocycle& a, int n, int jobs = 0);
PairMin qm_min_ratio(const ConnectorSearch& search, const std::vector<WordData>& words,
                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs, int jobs = 0);
std::vector<double> lyapunov_trials(const Cocycle& a, const MarkovMeasure& mu, long n, int trials, std::uint64_t seed,
                                    int jobs = 0);
}  // namespace parallel

}  // namespace gl2tf::kernels
