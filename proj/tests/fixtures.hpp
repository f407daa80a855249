#pragma once

// Cocycles and point generators shared by the unit and acceptance tests.

#include <map>
#include <numbers>
#include <random>

#include "gl2tf/cocycle.hpp"

namespace fixtures {

using namespace gl2tf;

inline Cocycle typical() {
  return Cocycle::one_step(ShiftSpace::full(2),
                           {Mat2::diag(2.0, 0.5), Mat2::rotation(std::numbers::pi / 4) * Mat2::diag(2.0, 0.5)});
}

inline Cocycle two_state_diagonal() {
  return Cocycle::one_step(ShiftSpace::full(2), {Mat2::diag(2.0, 1.0), Mat2::diag(1.0, 2.0)});
}

inline Cocycle conformal() {
  return Cocycle::one_step(ShiftSpace::full(2), {1.5 * Mat2::rotation(0.7), 1.5 * Mat2::rotation(-1.9)});
}

// Depth-1 cocycle on a three-symbol mixing shift with a non-symmetric
// adjacency matrix.
inline Cocycle depth_one_three_symbols(std::uint64_t seed) {
  const ShiftSpace s({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, 0.4);
  std::map<Word, Mat2> e;
  const WordList w = enumerate_words(s, 3);
  for (std::size_t i = 0; i < w.size(); ++i) {
    Mat2 m;
    do m = Mat2{1.0 + d(rng), d(rng), d(rng), 1.0 + d(rng)};
    while (std::abs(m.det()) < 0.2);
    e[w.word(i)] = m;
  }
  return Cocycle(s, 1, e);
}

inline Word random_admissible_word(const ShiftSpace& s, std::mt19937_64& rng, int n) {
  Word w;
  std::uniform_int_distribution<int> d(0, s.alphabet_size() - 1);
  while (static_cast<int>(w.size()) < n) {
    const int c = d(rng);
    if (w.empty() || s.allowed(w.back(), c)) w.push_back(c);
  }
  return w;
}

// Eventually periodic admissible point.
inline Point random_point(const ShiftSpace& s, std::mt19937_64& rng) {
  while (true) {
    const int pl = 1 + static_cast<int>(rng() % 3);
    const int pr = 1 + static_cast<int>(rng() % 3);
    const int cl = static_cast<int>(rng() % 6);
    Word left = random_admissible_word(s, rng, pl);
    Word core = random_admissible_word(s, rng, cl);
    Word right = random_admissible_word(s, rng, pr);
    const Point x = Point::make(left, core, right, static_cast<long>(rng() % 9) - 4);
    if (x.admissible_in(s)) return x;
  }
}

// z_i = a_i for i < cut and z_i = b_i for i >= cut.
inline Point splice(const Point& a, const Point& b, long cut) {
  const long lo = std::min(a.core_begin(), cut);
  const long hi = std::max(b.core_end(), cut);
  const long pl = static_cast<long>(a.left_period().size());
  const long pr = static_cast<long>(b.right_period().size());
  Word core = a.window(lo, cut - lo);
  const Word tail = b.window(cut, hi - cut);
  core.insert(core.end(), tail.begin(), tail.end());
  return Point::make(a.window(lo - pl, pl), core, b.window(hi, pr), lo);
}

}  // namespace fixtures
