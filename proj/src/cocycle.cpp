#include "gl2tf/cocycle.hpp"

#include <algorithm>
#include <cmath>

#include "gl2tf/error.hpp"

namespace gl2tf {

Cocycle::Cocycle(ShiftSpace shift, int depth, const std::map<Word, Mat2>& entries, double det_tol)
    : table_(std::move(shift), depth) {
  for (const auto& [window, m] : entries) {
    if (static_cast<int>(window.size()) != table_.window_length())
      throw Error(ErrorCode::SchemaError, "window " + word_to_string(window) + " has the wrong length");
    if (!table_.shift().admissible(window))
      throw Error(ErrorCode::NotAdmissible, "window " + word_to_string(window) + " is not admissible");
    if (!(std::abs(m.det()) > det_tol))
      throw Error(ErrorCode::Singular, "matrix for window " + word_to_string(window) + " is singular");
    table_.set(window, m);
  }
  table_.require_complete();
}

Cocycle Cocycle::one_step(ShiftSpace shift, const std::vector<Mat2>& generators) {
  if (static_cast<int>(generators.size()) != shift.alphabet_size())
    throw Error(ErrorCode::InvalidArgument, "one_step: one generator per symbol required");
  std::map<Word, Mat2> entries;
  for (std::size_t i = 0; i < generators.size(); ++i) entries[{static_cast<Symbol>(i)}] = generators[i];
  return Cocycle(std::move(shift), 0, entries);
}

Mat2 Cocycle::product(const Point& x, long n) const {
  if (n < 0) return product(x.shifted(n), -n).inverse();
  const long k = depth();
  Mat2 m = Mat2::identity();
  if (n == 0) return m;
  const Word symbols = x.window(-k, n + 2 * k);
  return extended_product(symbols);
}

Mat2 Cocycle::extended_product(std::span<const Symbol> symbols) const {
  const std::size_t len = static_cast<std::size_t>(window_length());
  Mat2 m = Mat2::identity();
  for (std::size_t j = 0; j + len <= symbols.size(); ++j) m = table_[symbols.subspan(j, len)] * m;
  return m;
}

std::vector<Mat2> Cocycle::generators() const {
  std::vector<Mat2> out;
  table_.for_each_window([&](std::span<const Symbol>, const Mat2& m) {
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  });
  return out;
}

Cocycle Cocycle::conjugated(const Mat2& c) const {
  const Mat2 ci = c.inverse();
  WindowTable<Mat2> t(shift(), depth());
  table_.for_each_window([&](std::span<const Symbol> w, const Mat2& m) { t.set(w, c * m * ci); });
  return Cocycle(std::move(t));
}

Cocycle Cocycle::scaled(double s) const {
  WindowTable<Mat2> t(shift(), depth());
  table_.for_each_window([&](std::span<const Symbol> w, const Mat2& m) { t.set(w, s * m); });
  return Cocycle(std::move(t));
}

void for_each_extension(const ShiftSpace& s, std::span<const Symbol> word, int k,
                        const std::function<bool(std::span<const Symbol>)>& f) {
  if (k == 0) {
    f(word);
    return;
  }
  const WordList ext = enumerate_words(s, k);
  const std::size_t n = word.size();
  const std::size_t kk = static_cast<std::size_t>(k);
  Word buffer(n + 2 * kk);
  std::copy(word.begin(), word.end(), buffer.begin() + k);
  for (std::size_t l = 0; l < ext.size(); ++l) {
    const auto left = ext[l];
    if (!s.allowed(left.back(), word.front())) continue;
    std::copy(left.begin(), left.end(), buffer.begin());
    for (std::size_t r = 0; r < ext.size(); ++r) {
      const auto right = ext[r];
      if (!s.allowed(word.back(), right.front())) continue;
      std::copy(right.begin(), right.end(), buffer.begin() + static_cast<long>(kk + n));
      if (!f(buffer)) return;
    }
  }
}

WordNorm word_norm(const Cocycle& a, std::span<const Symbol> word) {
  if (word.empty()) throw Error(ErrorCode::InvalidArgument, "word_norm: empty word");
  WordNorm out;
  out.value = 0.0;
  out.inf = std::numeric_limits<double>::infinity();
  for_each_extension(a.shift(), word, a.depth(), [&](std::span<const Symbol> ext) {
    const double v = operator_norm(a.extended_product(ext));
    out.value = std::max(out.value, v);
    out.inf = std::min(out.inf, v);
    return true;
  });
  out.lower = out.value;
  out.upper = out.value;
  return out;
}

FiberBunching is_fiber_bunched(const Cocycle& a, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1]");
  double worst = 0.0;
  a.for_each_window([&](std::span<const Symbol>, const Mat2& m) { worst = std::max(worst, condition_number(m)); });
  FiberBunching out;
  out.margin = 1.0 - worst * std::pow(a.shift().theta(), alpha);
  out.bunched = out.margin > 0.0;
  return out;
}

DistortionReport bounded_distortion(const Cocycle& a, int n_max, std::size_t word_sample) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "bounded_distortion: n_max must be >= 1");
  DistortionReport out;
  out.per_length.assign(static_cast<std::size_t>(n_max) + 1, 1.0);
  if (a.depth() == 0) return out;
  for (int n = 1; n <= n_max; ++n) {
    const WordList words = enumerate_words(a.shift(), n);
    const std::size_t stride = std::max<std::size_t>(1, (words.size() + word_sample - 1) / word_sample);
    double worst = 1.0;
    for (std::size_t i = 0; i < words.size(); i += stride) {
      const WordNorm w = word_norm(a, words[i]);
      worst = std::max(worst, w.value / w.inf);
      ++out.words_checked;
    }
    out.per_length[static_cast<std::size_t>(n)] = std::max(worst, out.per_length[static_cast<std::size_t>(n) - 1]);
    out.constant = std::max(out.constant, worst);
  }
  return out;
}

Cocycle adjoint(const Cocycle& a) {
  WindowTable<Mat2> t(a.shift().transposed(), a.depth());
  const WordList windows = enumerate_words(t.shift(), t.window_length());
  for (std::size_t i = 0; i < windows.size(); ++i) {
    Word w = windows.word(i);
    Word rev(w.rbegin(), w.rend());
    t.set(w, a.at_window(rev).transpose());
  }
  return Cocycle(std::move(t));
}

Point adjoint_coordinates(const Point& x) { return x.reflected(-1); }

TriangularCocycle::TriangularCocycle(LocalFunction a, LocalFunction b, LocalFunction c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (!(a_.shift() == b_.shift()) || !(a_.shift() == c_.shift()))
    throw Error(ErrorCode::InvalidArgument, "triangular cocycle entries must share a shift space");
  const int k = std::max({a_.depth(), b_.depth(), c_.depth()});
  if (a_.depth() < k) a_ = a_.deepened(k);
  if (b_.depth() < k) b_ = b_.deepened(k);
  if (c_.depth() < k) c_ = c_.deepened(k);
  auto nowhere_zero = [](const LocalFunction& f) {
    bool ok = true;
    f.table().for_each_window([&](std::span<const Symbol>, const double& v) { ok = ok && v != 0.0; });
    return ok;
  };
  if (!nowhere_zero(a_) || !nowhere_zero(c_))
    throw Error(ErrorCode::Singular, "triangular cocycle: a and c must be nowhere zero");
}

Cocycle TriangularCocycle::to_cocycle() const {
  WindowTable<Mat2> t(shift(), depth());
  a_.table().for_each_window(
      [&](std::span<const Symbol> w, const double& av) { t.set(w, Mat2{av, b_(w), 0.0, c_(w)}); });
  return Cocycle(std::move(t));
}

Mat2 triangular_product(const TriangularCocycle& b, const Point& x, long n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "triangular_product: n must be >= 0");
  if (n == 0) return Mat2::identity();
  const long k = b.depth();
  const std::size_t len = static_cast<std::size_t>(2 * k + 1);
  const Word symbols = x.window(-k, n + 2 * k);
  const std::size_t steps = static_cast<std::size_t>(n);
  std::vector<double> av(steps), bv(steps), cv(steps);
  for (std::size_t j = 0; j < steps; ++j) {
    const std::span<const Symbol> w(symbols.data() + j, len);
    av[j] = b.a()(w);
    bv[j] = b.b()(w);
    cv[j] = b.c()(w);
  }
  // suffix_a[i] = a(sigma^i x) ... a(sigma^{n-1} x); prefix_c[i] = c^i(x).
  std::vector<double> suffix_a(steps + 1, 1.0), prefix_c(steps + 1, 1.0);
  for (std::size_t j = steps; j-- > 0;) suffix_a[j] = suffix_a[j + 1] * av[j];
  for (std::size_t j = 0; j < steps; ++j) prefix_c[j + 1] = prefix_c[j] * cv[j];
  double off = 0.0;
  for (std::size_t i = 0; i < steps; ++i) off += suffix_a[i + 1] * bv[i] * prefix_c[i];
  return Mat2{suffix_a[0], off, 0.0, prefix_c[steps]};
}

}  // namespace gl2tf
