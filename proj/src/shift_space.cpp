#include "gl2tf/shift_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gl2tf/error.hpp"

namespace gl2tf {

namespace {

using BoolMatrix = std::vector<std::vector<char>>;

BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
  const std::size_t q = a.size();
  BoolMatrix c(q, std::vector<char>(q, 0));
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t k = 0; k < q; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < q; ++j) c[i][j] |= b[k][j];
  return c;
}

bool all_positive(const BoolMatrix& m) {
  for (const auto& row : m)
    for (char v : row)
      if (!v) return false;
  return true;
}

// Smallest d dividing |w| with w = u^{|w|/d}.
std::size_t primitive_root_length(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return d;
  }
  return n;
}

long floor_mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

int primitivity(const Adjacency& t) {
  const std::size_t q = t.size();
  if (q == 0) throw Error(ErrorCode::NotPrimitive, "adjacency matrix is empty");
  BoolMatrix base(q, std::vector<char>(q, 0));
  for (std::size_t i = 0; i < q; ++i) {
    if (t[i].size() != q) throw Error(ErrorCode::InvalidArgument, "adjacency matrix is not square");
    for (std::size_t j = 0; j < q; ++j) {
      if (t[i][j] != 0 && t[i][j] != 1) throw Error(ErrorCode::InvalidArgument, "adjacency entries must be 0 or 1");
      base[i][j] = static_cast<char>(t[i][j]);
    }
  }
  const std::size_t bound = (q - 1) * (q - 1) + 1;
  BoolMatrix power = base;
  for (std::size_t n = 1; n <= bound; ++n) {
    if (all_positive(power)) return static_cast<int>(n);
    power = bool_product(power, base);
  }
  throw Error(ErrorCode::NotPrimitive, "adjacency matrix is not primitive (shift is not mixing)");
}

ShiftSpace::ShiftSpace(Adjacency adjacency, double theta)
    : q_(static_cast<int>(adjacency.size())), adjacency_(std::move(adjacency)), theta_(theta), mixing_exponent_(0) {
  if (q_ < 1) throw Error(ErrorCode::InvalidArgument, "alphabet must be non-empty");
  if (!(theta_ > 0.0 && theta_ < 1.0)) throw Error(ErrorCode::InvalidArgument, "theta must lie in (0, 1)");
  mixing_exponent_ = primitivity(adjacency_);
}

ShiftSpace ShiftSpace::full(int q, double theta) {
  return ShiftSpace(Adjacency(static_cast<std::size_t>(q), std::vector<int>(static_cast<std::size_t>(q), 1)), theta);
}

bool ShiftSpace::admissible(std::span<const Symbol> word) const {
  for (Symbol s : word)
    if (s < 0 || s >= q_) return false;
  for (std::size_t j = 0; j + 1 < word.size(); ++j)
    if (!allowed(word[j], word[j + 1])) return false;
  return true;
}

std::size_t ShiftSpace::count_words(int n) const {
  if (n <= 0) return 1;
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> v(static_cast<std::size_t>(q_), 1);
  for (int step = 1; step < n; ++step) {
    std::vector<std::size_t> next(v.size(), 0);
    for (int i = 0; i < q_; ++i)
      for (int j = 0; j < q_; ++j)
        if (allowed(i, j)) next[i] = (next[i] > kMax - v[j]) ? kMax : next[i] + v[j];
    v = std::move(next);
  }
  std::size_t total = 0;
  for (std::size_t x : v) total = (total > kMax - x) ? kMax : total + x;
  return total;
}

ShiftSpace ShiftSpace::transposed() const {
  Adjacency t(adjacency_.size(), std::vector<int>(adjacency_.size(), 0));
  for (int i = 0; i < q_; ++i)
    for (int j = 0; j < q_; ++j) t[j][i] = adjacency_[i][j];
  return ShiftSpace(std::move(t), theta_);
}

std::size_t ShiftSpace::encode(std::span<const Symbol> word) const {
  std::size_t code = 0;
  for (Symbol s : word) code = code * static_cast<std::size_t>(q_) + static_cast<std::size_t>(s);
  return code;
}

WordList enumerate_words(const ShiftSpace& s, int n, std::size_t cap) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "enumerate_words: length must be >= 1");
  const std::size_t count = s.count_words(n);
  if (count > cap) {
    throw Error(ErrorCode::CapacityExceeded,
                "enumerate_words: " + std::to_string(count) + " words of length " + std::to_string(n) +
                    " exceed the cap of " + std::to_string(cap));
  }
  WordList out(n);
  const int q = s.alphabet_size();
  Word w(static_cast<std::size_t>(n), -1);
  int depth = 0;
  // Iterative DFS in lexicographic order.
  while (depth >= 0) {
    Symbol& cur = w[static_cast<std::size_t>(depth)];
    ++cur;
    while (cur < q && depth > 0 && !s.allowed(w[static_cast<std::size_t>(depth) - 1], cur)) ++cur;
    if (cur >= q) {
      cur = -1;
      --depth;
      continue;
    }
    if (depth == n - 1) {
      out.push_back(w);
    } else {
      ++depth;
    }
  }
  return out;
}

Point Point::make(Word left, Word core, Word right, long start) {
  if (left.empty() || right.empty()) throw Error(ErrorCode::InvalidArgument, "point tails must be non-empty");
  left.erase(left.begin(), left.end() - static_cast<long>(primitive_root_length(left)));
  right.resize(primitive_root_length(right));

  const long nl = static_cast<long>(left.size());
  const long nr = static_cast<long>(right.size());
  const long end0 = start + static_cast<long>(core.size());
  auto raw = [&](long i) -> Symbol {
    if (i < start) return left[static_cast<std::size_t>(floor_mod(i - start, nl))];
    if (i >= end0) return right[static_cast<std::size_t>(floor_mod(i - end0, nr))];
    return core[static_cast<std::size_t>(i - start)];
  };

  // Pull the right tail as far left as it reaches.
  long end = end0;
  while (true) {
    if (end <= start - (nl + nr)) {
      // The right tail agrees with the left tail on nl + nr consecutive
      // places, so the whole sequence is periodic.
      Word block(static_cast<std::size_t>(nr));
      for (long j = 0; j < nr; ++j) block[static_cast<std::size_t>(j)] = raw(j);
      block.resize(primitive_root_length(block));
      Word copy = block;
      return Point(std::move(block), {}, std::move(copy), 0);
    }
    const Symbol expected = right[static_cast<std::size_t>(floor_mod(end - 1 - end0, nr))];
    if (raw(end - 1) != expected) break;
    --end;
  }
  long begin = std::min(start, end);
  // Push the left tail as far right as it reaches, never past `end`.
  while (begin < end && raw(begin) == raw(begin - nl)) ++begin;

  Point p({0}, {}, {0}, 0);
  p.left_.resize(static_cast<std::size_t>(nl));
  for (long j = 0; j < nl; ++j) p.left_[static_cast<std::size_t>(j)] = raw(begin - nl + j);
  p.right_.resize(static_cast<std::size_t>(nr));
  for (long j = 0; j < nr; ++j) p.right_[static_cast<std::size_t>(j)] = raw(end + j);
  p.core_.resize(static_cast<std::size_t>(end - begin));
  for (long i = begin; i < end; ++i) p.core_[static_cast<std::size_t>(i - begin)] = raw(i);
  p.start_ = begin;
  return p;
}

Point Point::periodic(Word block) {
  Word copy = block;
  return make(std::move(block), {}, std::move(copy), 0);
}

Symbol Point::at(long i) const {
  const long end = core_end();
  if (i < start_) return left_[static_cast<std::size_t>(floor_mod(i - start_, static_cast<long>(left_.size())))];
  if (i >= end) return right_[static_cast<std::size_t>(floor_mod(i - end, static_cast<long>(right_.size())))];
  return core_[static_cast<std::size_t>(i - start_)];
}

Word Point::window(long from, long length) const {
  Word w(static_cast<std::size_t>(std::max(0L, length)));
  for (long j = 0; j < length; ++j) w[static_cast<std::size_t>(j)] = at(from + j);
  return w;
}

Point Point::shifted(long r) const { return make(left_, core_, right_, start_ - r); }

Point Point::reflected(long c) const {
  Word l(right_.rbegin(), right_.rend());
  Word r(left_.rbegin(), left_.rend());
  Word core(core_.rbegin(), core_.rend());
  return make(std::move(l), std::move(core), std::move(r), c - (core_end() - 1));
}

bool Point::admissible_in(const ShiftSpace& s) const {
  const long lo = start_ - static_cast<long>(left_.size()) - 1;
  const long hi = core_end() + static_cast<long>(right_.size());
  for (long i = lo; i < hi; ++i) {
    const Symbol a = at(i);
    const Symbol b = at(i + 1);
    if (a < 0 || a >= s.alphabet_size() || b < 0 || b >= s.alphabet_size() || !s.allowed(a, b)) return false;
  }
  return true;
}

std::optional<long> Point::stable_agreement(const Point& y) const {
  const long e = std::max(core_end(), y.core_end());
  const long span = static_cast<long>(right_.size() + y.right_.size());
  for (long j = 0; j < span; ++j)
    if (at(e + j) != y.at(e + j)) return std::nullopt;
  const long floor = std::min(start_, y.start_) - static_cast<long>(left_.size() + y.left_.size());
  for (long i = e - 1; i >= floor; --i)
    if (at(i) != y.at(i)) return i + 1;
  return kEverywhere;
}

std::optional<long> Point::unstable_agreement(const Point& y) const {
  const long b = std::min(start_, y.start_);
  const long span = static_cast<long>(left_.size() + y.left_.size());
  for (long j = 1; j <= span; ++j)
    if (at(b - j) != y.at(b - j)) return std::nullopt;
  const long ceil = std::max(core_end(), y.core_end()) + static_cast<long>(right_.size() + y.right_.size());
  for (long i = b; i <= ceil; ++i)
    if (at(i) != y.at(i)) return i - 1;
  return -kEverywhere;
}

std::string Point::to_string() const {
  std::ostringstream os;
  auto put = [&](const Word& w) {
    for (Symbol s : w) os << (s + 1);
  };
  os << '(';
  put(left_);
  os << ')';
  put(core_);
  os << '(';
  put(right_);
  os << ")@" << start_;
  return os.str();
}

bool in_local_stable_set(const Point& x, const Point& y) {
  const auto s = x.stable_agreement(y);
  return s.has_value() && *s <= 0;
}

bool in_local_unstable_set(const Point& x, const Point& y) {
  const auto t = x.unstable_agreement(y);
  return t.has_value() && *t >= 0;
}

double metric(const ShiftSpace& s, const Point& x, const Point& y) {
  if (x == y) return 0.0;
  const long reach = std::max({std::abs(x.core_begin()), std::abs(x.core_end()), std::abs(y.core_begin()),
                               std::abs(y.core_end())}) +
                     static_cast<long>(x.left_period().size() + x.right_period().size() + y.left_period().size() +
                                       y.right_period().size()) +
                     1;
  for (long m = 0; m <= reach; ++m) {
    if (x.at(m) != y.at(m) || x.at(-m) != y.at(-m)) return std::pow(s.theta(), static_cast<double>(m));
  }
  return 0.0;  // unreachable for canonical points
}

Point bracket(const Point& x, const Point& y) {
  if (x.at(0) != y.at(0)) throw Error(ErrorCode::SymbolMismatch, "bracket: x_0 != y_0");
  const long a = std::min(x.core_begin(), 0L);
  const long b = std::max(y.core_end(), 1L);
  const long nl = static_cast<long>(x.left_period().size());
  const long nr = static_cast<long>(y.right_period().size());
  Word core = x.window(a, 1 - a);
  const Word tail = y.window(1, b - 1);
  core.insert(core.end(), tail.begin(), tail.end());
  return Point::make(x.window(a - nl, nl), std::move(core), y.window(b, nr), a);
}

PeriodicPoints periodic_points(const ShiftSpace& s, int max_period, std::size_t cap) {
  if (max_period < 1) throw Error(ErrorCode::InvalidArgument, "periodic_points: max_period must be >= 1");
  PeriodicPoints out;
  for (int m = 1; m <= max_period; ++m) {
    const WordList words = enumerate_words(s, m, cap);
    for (std::size_t i = 0; i < words.size(); ++i) {
      const Word w = words.word(i);
      if (!s.allowed(w.back(), w.front())) continue;
      if (primitive_root_length(w) != w.size()) continue;
      bool least = true;
      for (std::size_t r = 1; r < w.size() && least; ++r) {
        Word rot(w.begin() + static_cast<long>(r), w.end());
        rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(r));
        if (rot < w) least = false;
      }
      if (!least) continue;
      Point rep = Point::periodic(w);
      std::vector<Point> orbit;
      for (int r = 0; r < m; ++r) orbit.push_back(rep.shifted(r));
      out.representatives.push_back(std::move(rep));
      out.orbits.push_back(std::move(orbit));
      if (out.representatives.size() > cap) throw Error(ErrorCode::CapacityExceeded, "periodic_points: cap exceeded");
    }
  }
  return out;
}

std::vector<Point> homoclinic_points(const ShiftSpace& s, const Point& p, int core_bound, std::size_t cap) {
  if (!p.is_periodic()) throw Error(ErrorCode::InvalidArgument, "homoclinic_points: p must be periodic");
  if (core_bound < 1) throw Error(ErrorCode::InvalidArgument, "homoclinic_points: core_bound must be >= 1");
  const long per = p.period();
  std::vector<Point> out;
  for (int len = 1; len <= core_bound; ++len) {
    const WordList cores = enumerate_words(s, len, cap);
    for (std::size_t c = 0; c < cores.size(); ++c) {
      const Word core = cores.word(c);
      for (long start = 0; start < per; ++start) {
        const long end = start + len;
        if (core.front() == p.at(start) || core.back() == p.at(end - 1)) continue;
        if (!s.allowed(p.at(start - 1), core.front()) || !s.allowed(core.back(), p.at(end))) continue;
        out.push_back(Point::make(p.window(start - per, per), core, p.window(end, per), start));
        if (out.size() > cap) throw Error(ErrorCode::CapacityExceeded, "homoclinic_points: cap exceeded");
      }
    }
  }
  return out;
}

std::string word_to_string(std::span<const Symbol> w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(w[i] + 1);
  }
  return out;
}

Word parse_word(const std::string& key, int alphabet_size) {
  Word w;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, '-')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad word key '" + key + "'");
    }
    if (used != part.size() || v < 1 || v > alphabet_size)
      throw Error(ErrorCode::ParseError, "bad symbol in word key '" + key + "'");
    w.push_back(v - 1);
  }
  if (w.empty()) throw Error(ErrorCode::ParseError, "empty word key");
  return w;
}

}  // namespace gl2tf
