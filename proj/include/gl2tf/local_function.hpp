#pragma once

// Functions on a subshift that depend only on the window x_{-k} ... x_k.

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "gl2tf/error.hpp"
#include "gl2tf/shift_space.hpp"

namespace gl2tf {

// Dense lookup table indexed by the base-q code of an admissible
// (2k+1)-window. Non-admissible slots are marked absent.
template <typename T>
class WindowTable {
 public:
  WindowTable(ShiftSpace shift, int depth) : shift_(std::move(shift)), depth_(depth) {
    if (depth_ < 0) throw Error(ErrorCode::InvalidArgument, "depth must be >= 0");
    std::size_t slots = 1;
    for (int i = 0; i < window_length(); ++i) {
      slots *= static_cast<std::size_t>(shift_.alphabet_size());
      if (slots > (std::size_t{1} << 26)) throw Error(ErrorCode::CapacityExceeded, "window table too large");
    }
    values_.resize(slots);
    present_.assign(slots, 0);
  }

  const ShiftSpace& shift() const { return shift_; }
  int depth() const { return depth_; }
  int window_length() const { return 2 * depth_ + 1; }

  bool has(std::span<const Symbol> window) const { return present_[shift_.encode(window)] != 0; }
  const T& operator[](std::span<const Symbol> window) const { return values_[shift_.encode(window)]; }
  void set(std::span<const Symbol> window, T value) {
    const std::size_t code = shift_.encode(window);
    values_[code] = std::move(value);
    present_[code] = 1;
  }

  // Value at the central window of x.
  const T& at(const Point& x) const { return (*this)[x.window(-depth_, window_length())]; }

  // Visits every admissible window in lexicographic order.
  void for_each_window(const std::function<void(std::span<const Symbol>, const T&)>& f) const {
    const WordList windows = enumerate_words(shift_, window_length());
    for (std::size_t i = 0; i < windows.size(); ++i) f(windows[i], (*this)[windows[i]]);
  }

  // Throws Error(SchemaError) naming the first admissible window without an
  // entry.
  void require_complete() const {
    const WordList windows = enumerate_words(shift_, window_length());
    for (std::size_t i = 0; i < windows.size(); ++i)
      if (!has(windows[i]))
        throw Error(ErrorCode::SchemaError, "missing entry for admissible window " + word_to_string(windows[i]));
  }

 private:
  ShiftSpace shift_;
  int depth_;
  std::vector<T> values_;
  std::vector<char> present_;
};

// Real-valued locally constant function; used for potentials and for the
// diagonal/off-diagonal entries of triangular cocycles.
class LocalFunction {
 public:
  LocalFunction(ShiftSpace shift, int depth, const std::map<Word, double>& entries);
  static LocalFunction constant(const ShiftSpace& shift, double value);
  static LocalFunction from_symbols(const ShiftSpace& shift, const std::vector<double>& per_symbol);
  // Same function re-expressed at a larger depth.
  LocalFunction deepened(int depth) const;
  LocalFunction map(const std::function<double(double)>& f) const;

  const ShiftSpace& shift() const { return table_.shift(); }
  int depth() const { return table_.depth(); }
  int window_length() const { return table_.window_length(); }

  double operator()(std::span<const Symbol> window) const { return table_[window]; }
  double evaluate(const Point& x) const { return table_.at(x); }
  // S_n phi(x) = sum_{j<n} phi(sigma^j x).
  double birkhoff_sum(const Point& x, long n) const;

  const WindowTable<double>& table() const { return table_; }

 private:
  explicit LocalFunction(WindowTable<double> table) : table_(std::move(table)) {}
  WindowTable<double> table_;
};

}  // namespace gl2tf
