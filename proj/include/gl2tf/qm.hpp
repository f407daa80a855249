#pragma once

// Quasi-multiplicativity: connector search and empirical constants.

#include <cstdint>
#include <vector>

#include "gl2tf/cocycle.hpp"

namespace gl2tf {

struct Connector {
  Word k;
  double ratio = 0.0;  // ||A(IKJ)|| / (||A(I)|| ||A(J)||)
};

// A word together with its sup norm (and product, for one-step cocycles).
struct WordData {
  Word w;
  Mat2 product;
  double norm = 0.0;
};

// Exhaustive search over admissible K with |K| <= k_max. Best ratio wins;
// ties go to the shorter K and then the lexicographically smaller one.
class ConnectorSearch {
 public:
  ConnectorSearch(const Cocycle& a, int k_max);

  WordData data(std::span<const Symbol> w) const;
  // Throws NoAdmissibleConnector.
  Connector best(const WordData& i, const WordData& j) const;
  int k_max() const { return k_max_; }

 private:
  const Cocycle& a_;
  int k_max_;
  std::vector<WordList> words_;          // connectors by length
  std::vector<std::vector<Mat2>> mats_;  // their products (one-step only)
};

Connector best_connector(const Cocycle& a, std::span<const Symbol> i, std::span<const Symbol> j, int k_max);

struct QmReport {
  int n = 0;
  int k_max = 0;
  int k_used = 0;  // longest best connector over the scanned pairs
  double c_estimate = 1.0;
  Word worst_i, worst_j, worst_k;
  std::size_t samples = 0;
  bool exhaustive = true;
};

inline int default_k_max(const ShiftSpace& s) { return s.mixing_exponent() + 4; }

// Exhaustive over L(n) x L(n) when |L(n)|^2 <= samples, otherwise `samples`
// seeded random pairs.
QmReport qm_scan(const Cocycle& a, int n, int k_max, std::size_t samples, std::uint64_t seed, int jobs = 0);

}  // namespace gl2tf
