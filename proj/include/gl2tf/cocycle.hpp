#pragma once

// Locally constant GL2(R) cocycles over a subshift of finite type.

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "gl2tf/linalg2.hpp"
#include "gl2tf/local_function.hpp"
#include "gl2tf/shift_space.hpp"

namespace gl2tf {

// A(x) depends only on x_{-k} ... x_k. A^n(x) = A(sigma^{n-1} x) ... A(x),
// A^0 = I and A^{-n}(x) = A^n(sigma^{-n} x)^{-1}.
class Cocycle {
 public:
  // Every admissible (2k+1)-window needs an entry with |det| > det_tol.
  Cocycle(ShiftSpace shift, int depth, const std::map<Word, Mat2>& entries, double det_tol = kDefaultDetTol);
  // One-step cocycle A(x) = generators[x_0].
  static Cocycle one_step(ShiftSpace shift, const std::vector<Mat2>& generators);

  const ShiftSpace& shift() const { return table_.shift(); }
  int depth() const { return table_.depth(); }
  int window_length() const { return table_.window_length(); }

  const Mat2& at_window(std::span<const Symbol> window) const { return table_[window]; }
  Mat2 evaluate(const Point& x) const { return table_.at(x); }
  Mat2 product(const Point& x, long n) const;

  // Product of the n = |symbols| - 2k windows of an extended word
  // x_{-k} ... x_{n-1+k}, accumulated left to right.
  Mat2 extended_product(std::span<const Symbol> symbols) const;

  // Distinct table entries in window order; used for structure detection.
  std::vector<Mat2> generators() const;
  void for_each_window(const std::function<void(std::span<const Symbol>, const Mat2&)>& f) const {
    table_.for_each_window(f);
  }

  // C A(x) C^{-1} for every window.
  Cocycle conjugated(const Mat2& c) const;
  Cocycle scaled(double s) const;

 private:
  explicit Cocycle(WindowTable<Mat2> table) : table_(std::move(table)) {}
  friend Cocycle adjoint(const Cocycle& a);
  friend class TriangularCocycle;
  WindowTable<Mat2> table_;
};

// Calls f(extended word) for every admissible extension e I f of I with
// |e| = |f| = k. Stops early when f returns false.
void for_each_extension(const ShiftSpace& s, std::span<const Symbol> word, int k,
                        const std::function<bool(std::span<const Symbol>)>& f);

struct WordNorm {
  double value = 0.0;  // sup over [I] of ||A^n(x)||
  double lower = 0.0;
  double upper = 0.0;
  double inf = 0.0;  // inf over [I]; equals value for one-step cocycles
};

// ||A(I)|| = sup_{x in [I]} ||A^{|I|}(x)||. The product only sees
// x_{-k} ... x_{n-1+k}, so the sup is a finite max over boundary extensions
// and is returned exactly.
WordNorm word_norm(const Cocycle& a, std::span<const Symbol> word);

struct FiberBunching {
  bool bunched = false;
  double margin = 0.0;  // 1 - max ||A|| ||A^-1|| theta^alpha
};

FiberBunching is_fiber_bunched(const Cocycle& a, double alpha);

struct DistortionReport {
  double constant = 1.0;  // max over n <= n_max of sup/inf over cylinders
  std::vector<double> per_length;
  std::size_t words_checked = 0;
};

// Exact over every word when |L(n)| <= word_sample; otherwise an evenly
// strided subset of words is used.
DistortionReport bounded_distortion(const Cocycle& a, int n_max, std::size_t word_sample = 1u << 16);

// The adjoint A_*(x) = A(sigma^{-1} x)^T lives over the inverse shift; it is
// returned as a cocycle over the transposed shift via y_i = x_{-1-i}
// (see adjoint_coordinates), so that
//   A_*^n(x) = adjoint(A).product(adjoint_coordinates(x), n) = A^n(sigma^{-n} x)^T.
Cocycle adjoint(const Cocycle& a);
Point adjoint_coordinates(const Point& x);

// B(x) = [[a(x), b(x)], [0, c(x)]] with a, c nowhere zero.
class TriangularCocycle {
 public:
  TriangularCocycle(LocalFunction a, LocalFunction b, LocalFunction c);

  const ShiftSpace& shift() const { return a_.shift(); }
  int depth() const { return a_.depth(); }
  const LocalFunction& a() const { return a_; }
  const LocalFunction& b() const { return b_; }
  const LocalFunction& c() const { return c_; }

  Cocycle to_cocycle() const;

 private:
  LocalFunction a_;
  LocalFunction b_;
  LocalFunction c_;
};

// B^n(x) from the closed form: diagonal a^n(x), c^n(x) and
// (B^n)_{12} = sum_i a^{n-i-1}(sigma^{i+1} x) b(sigma^i x) c^i(x).
Mat2 triangular_product(const TriangularCocycle& b, const Point& x, long n);

}  // namespace gl2tf
