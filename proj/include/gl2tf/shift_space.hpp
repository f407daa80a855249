#pragma once

// Mixing subshifts of finite type and finitely described points on them.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gl2tf {

// Symbols are 0-based internally; every serialized form is 1-based.
using Symbol = int;
using Word = std::vector<Symbol>;
using Adjacency = std::vector<std::vector<int>>;

inline constexpr std::size_t kDefaultWordCap = std::size_t{1} << 24;

// Least N with T^N > 0 entrywise. Throws Error(NotPrimitive) when no such
// N <= (q-1)^2 + 1 exists (Wielandt's bound).
int primitivity(const Adjacency& t);

class ShiftSpace {
 public:
  explicit ShiftSpace(Adjacency adjacency, double theta = 0.5);

  static ShiftSpace full(int q, double theta = 0.5);

  int alphabet_size() const { return q_; }
  double theta() const { return theta_; }
  int mixing_exponent() const { return mixing_exponent_; }
  const Adjacency& adjacency() const { return adjacency_; }
  bool allowed(Symbol a, Symbol b) const { return adjacency_[a][b] != 0; }
  bool admissible(std::span<const Symbol> word) const;

  // Number of admissible words of length n (sum of entries of T^(n-1)),
  // saturating at SIZE_MAX.
  std::size_t count_words(int n) const;

  // The inverse-time system: adjacency transposed.
  ShiftSpace transposed() const;

  // Base-q code of a word; used to index lookup tables.
  std::size_t encode(std::span<const Symbol> word) const;

  friend bool operator==(const ShiftSpace& a, const ShiftSpace& b) {
    return a.adjacency_ == b.adjacency_ && a.theta_ == b.theta_;
  }

 private:
  int q_;
  Adjacency adjacency_;
  double theta_;
  int mixing_exponent_;
};

// Words of one fixed length stored contiguously.
class WordList {
 public:
  WordList() = default;
  explicit WordList(int length) : length_(length) {}

  int length() const { return length_; }
  std::size_t size() const { return length_ == 0 ? 0 : symbols_.size() / static_cast<std::size_t>(length_); }
  std::span<const Symbol> operator[](std::size_t i) const {
    return {symbols_.data() + i * static_cast<std::size_t>(length_), static_cast<std::size_t>(length_)};
  }
  void push_back(std::span<const Symbol> w) { symbols_.insert(symbols_.end(), w.begin(), w.end()); }
  Word word(std::size_t i) const {
    auto s = (*this)[i];
    return {s.begin(), s.end()};
  }

 private:
  int length_ = 0;
  std::vector<Symbol> symbols_;
};

// All admissible words of length n in lexicographic order.
WordList enumerate_words(const ShiftSpace& s, int n, std::size_t cap = kDefaultWordCap);

// Bi-infinite sequence that is eventually periodic in both directions:
//   x_i = left_period[...]  for i <  start   (left_period.back() sits at start-1)
//   x_i = core[i - start]   for start <= i < start + |core|
//   x_i = right_period[...] for i >= start + |core|
// Always held in canonical form: periods primitive, the right tail begins as
// early as possible and the left tail ends as late as possible without
// passing it. A purely periodic point has an empty core at start = 0 and
// equal left/right blocks with right_period[0] = x_0. Structural equality is
// sequence equality.
class Point {
 public:
  Point() : Point({0}, {}, {0}, 0) {}

  static Point make(Word left_period, Word core, Word right_period, long start);
  static Point periodic(Word block);

  Symbol at(long i) const;
  Word window(long from, long length) const;

  const Word& left_period() const { return left_; }
  const Word& core() const { return core_; }
  const Word& right_period() const { return right_; }
  long core_begin() const { return start_; }
  long core_end() const { return start_ + static_cast<long>(core_.size()); }
  // Index of coordinate 0 within the core (serialized "offset").
  long offset() const { return -start_; }

  bool is_periodic() const { return core_.empty() && left_ == right_ && start_ == 0; }
  // Least period; only meaningful for periodic points.
  int period() const { return static_cast<int>(right_.size()); }

  // sigma^r x, (sigma x)_i = x_{i+1}.
  Point shifted(long r) const;
  // y_i = x_{c - i}.
  Point reflected(long c) const;

  bool admissible_in(const ShiftSpace& s) const;

  // Smallest s such that x_i = y_i for all i >= s, or nullopt when y is not
  // in the stable set of x. Identical points return kEverywhere.
  std::optional<long> stable_agreement(const Point& y) const;
  // Largest t such that x_i = y_i for all i <= t (nullopt if none).
  // Identical points return -kEverywhere.
  std::optional<long> unstable_agreement(const Point& y) const;

  static constexpr long kEverywhere = std::numeric_limits<long>::min() / 4;

  std::string to_string() const;  // 1-based, "(left)core(right)@start"

  friend bool operator==(const Point&, const Point&) = default;

 private:
  Point(Word left, Word core, Word right, long start)
      : left_(std::move(left)), core_(std::move(core)), right_(std::move(right)), start_(start) {}

  Word left_;
  Word core_;
  Word right_;
  long start_ = 0;
};

bool in_local_stable_set(const Point& x, const Point& y);    // x_i = y_i for i >= 0
bool in_local_unstable_set(const Point& x, const Point& y);  // x_i = y_i for i <= 0

// d(x, y) = theta^k, k the largest integer with x_i = y_i for all |i| < k.
double metric(const ShiftSpace& s, const Point& x, const Point& y);

// z_i = x_i for i <= 0, z_i = y_i for i >= 0. Throws Error(SymbolMismatch).
Point bracket(const Point& x, const Point& y);

struct PeriodicPoints {
  // One representative per orbit (lexicographically least block), ordered by
  // least period and then block.
  std::vector<Point> representatives;
  std::vector<std::vector<Point>> orbits;
};

PeriodicPoints periodic_points(const ShiftSpace& s, int max_period, std::size_t cap = kDefaultWordCap);

// Points z != p with z_i = p_i outside a core of length <= core_bound that
// starts at a coordinate in [0, per(p)). Shifting z by multiples of per(p)
// gives every other homoclinic point with that core. Ordered by core length,
// then core word, then start.
std::vector<Point> homoclinic_points(const ShiftSpace& s, const Point& p, int core_bound,
                                     std::size_t cap = kDefaultWordCap);

std::string word_to_string(std::span<const Symbol> w);  // "1-2-1"
Word parse_word(const std::string& key, int alphabet_size);

}  // namespace gl2tf
