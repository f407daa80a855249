#include "gl2tf/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gl2tf/error.hpp"

namespace gl2tf {

std::vector<double> DenseMatrix::multiply(const std::vector<double>& v) const {
  std::vector<double> out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

std::vector<double> DenseMatrix::multiply_transpose(const std::vector<double>& v) const {
  std::vector<double> out(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[j] += v[i] * (*this)(i, j);
  return out;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

namespace {

struct PowerResult {
  std::vector<double> v;
  double lower = 0.0, upper = 0.0;
  int iterations = 0;
  bool converged = false;
};

PowerResult power_iterate(const DenseMatrix& m, bool transpose, double tol, int cap) {
  const std::size_t n = m.rows();
  PowerResult r;
  r.v.assign(n, 1.0 / static_cast<double>(n));
  for (int it = 1; it <= cap; ++it) {
    std::vector<double> w = transpose ? m.multiply_transpose(r.v) : m.multiply(r.v);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double q = w[i] / r.v[i];
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      sum += w[i];
    }
    if (!(sum > 0.0)) throw Error(ErrorCode::InvalidArgument, "perron: matrix annihilates the positive cone");
    for (double& x : w) x /= sum;
    r.v = std::move(w);
    r.lower = lo;
    r.upper = hi;
    r.iterations = it;
    if (hi - lo <= tol * hi) {
      r.converged = true;
      break;
    }
  }
  return r;
}

}  // namespace

PerronData perron(const DenseMatrix& m, double tol, int cap) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "perron: square matrix required");
  const PowerResult right = power_iterate(m, false, tol, cap);
  const PowerResult left = power_iterate(m, true, tol, cap);
  PerronData out;
  out.lower = std::max(right.lower, left.lower);
  out.upper = std::min(right.upper, left.upper);
  out.rho = 0.5 * (out.lower + out.upper);
  out.right = right.v;
  out.left = left.v;
  double dotp = 0.0;
  for (std::size_t i = 0; i < out.left.size(); ++i) dotp += out.left[i] * out.right[i];
  for (double& x : out.left) x /= dotp;
  out.iterations = std::max(right.iterations, left.iterations);
  out.converged = right.converged && left.converged;
  return out;
}

WindowGraph window_graph(const LocalFunction& phi) {
  const ShiftSpace& s = phi.shift();
  const int len = phi.window_length();
  WindowGraph g;
  g.states = enumerate_words(s, len);
  std::size_t slots = 1;
  for (int i = 0; i < len; ++i) slots *= static_cast<std::size_t>(s.alphabet_size());
  g.index.assign(slots, static_cast<std::size_t>(-1));
  double vmax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    g.index[s.encode(g.states[i])] = i;
    vmax = std::max(vmax, phi(g.states[i]));
  }
  g.log_scale = vmax;
  const std::size_t n = g.states.size();
  g.transfer = DenseMatrix(n, n);
  Word next(static_cast<std::size_t>(len));
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = g.states[i];
    const double weight = std::exp(phi(w) - vmax);
    std::copy(w.begin() + 1, w.end(), next.begin());
    for (Symbol b = 0; b < s.alphabet_size(); ++b) {
      if (!s.allowed(w.back(), b)) continue;
      next.back() = b;
      g.transfer(i, g.index[s.encode(next)]) = weight;
    }
  }
  return g;
}

}  // namespace gl2tf
