#pragma once

// Nonnegative transfer matrices on window graphs and their Perron data.

#include <cstddef>
#include <vector>

#include "gl2tf/local_function.hpp"

namespace gl2tf {

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<double> multiply(const std::vector<double>& v) const;
  std::vector<double> multiply_transpose(const std::vector<double>& v) const;
  DenseMatrix transpose() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

struct PerronData {
  double rho = 0.0;
  // Collatz-Wielandt enclosure: lower <= rho <= upper.
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> right;  // M r = rho r, sum r = 1
  std::vector<double> left;   // l M = rho l, <l, r> = 1
  int iterations = 0;
  bool converged = false;
};

// Power iteration for a primitive nonnegative matrix; stops once the
// enclosure has relative width below tol.
PerronData perron(const DenseMatrix& m, double tol = 1e-12, int cap = 100000);

// States are the admissible (2k+1)-windows; w -> w' when w' continues w by
// one symbol. M[w, w'] = exp(phi(w)).
struct WindowGraph {
  WordList states;
  std::vector<std::size_t> index;  // encode(window) -> state, npos if absent
  DenseMatrix transfer;
  double log_scale = 0.0;  // transfer holds exp(phi - log_scale)
};

WindowGraph window_graph(const LocalFunction& phi);

}  // namespace gl2tf
