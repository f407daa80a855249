#pragma once

// Stationary Markov measures of finite order on a subshift.

#include <cstdint>
#include <random>
#include <vector>

#include "gl2tf/local_function.hpp"

namespace gl2tf {

// The chain runs on admissible words of length `order`; a state u moves to
// u[1..] + b. Cylinder masses, entropy and sampling are exact consequences
// of the stored transition weights.
class MarkovMeasure {
 public:
  struct Edge {
    std::size_t to;
    double prob;
  };

  // Order-1 measure from a symbol transition matrix. When `stationary` is
  // empty it is computed. Throws InvalidMeasure.
  static MarkovMeasure from_transition(const ShiftSpace& s, const std::vector<std::vector<double>>& transition,
                                       std::vector<double> stationary = {}, double tol = 1e-9);
  static MarkovMeasure bernoulli(const ShiftSpace& s, const std::vector<double>& p);
  // General order-m chain; `edges[u]` lists successors of state u.
  MarkovMeasure(ShiftSpace s, WordList states, std::vector<std::vector<Edge>> edges, std::vector<double> stationary);

  const ShiftSpace& shift() const { return shift_; }
  int order() const { return states_.length(); }
  const WordList& states() const { return states_; }
  const std::vector<double>& stationary() const { return pi_; }
  const std::vector<std::vector<Edge>>& edges() const { return edges_; }

  // mu([I]); words shorter than the order are summed over extensions.
  double cylinder(std::span<const Symbol> word) const;
  double entropy() const;

  // Writes a stationary sample x_0 ... x_{length-1}.
  void sample(std::mt19937_64& rng, std::size_t length, Word& out) const;

  // max |mu P - mu| and max row-sum defect; both ~0 for a valid measure.
  double stationarity_defect() const;

 private:
  std::size_t state_index(std::span<const Symbol> w) const { return index_[shift_.encode(w)]; }
  std::size_t draw(std::mt19937_64& rng, const std::vector<double>& cumulative) const;

  ShiftSpace shift_;
  WordList states_;
  std::vector<std::size_t> index_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<double> pi_;
  std::vector<double> pi_cumulative_;
  std::vector<std::vector<double>> edge_cumulative_;
};

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// splitmix64 step; used to derive independent per-trial seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace gl2tf
