#include "gl2tf/markov.hpp"

#include <algorithm>
#include <cmath>

#include "gl2tf/error.hpp"
#include "gl2tf/transfer.hpp"

namespace gl2tf {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

MarkovMeasure::MarkovMeasure(ShiftSpace s, WordList states, std::vector<std::vector<Edge>> edges,
                             std::vector<double> stationary)
    : shift_(std::move(s)), states_(std::move(states)), edges_(std::move(edges)), pi_(std::move(stationary)) {
  if (edges_.size() != states_.size() || pi_.size() != states_.size())
    throw Error(ErrorCode::InvalidMeasure, "markov measure: inconsistent state counts");
  std::size_t slots = 1;
  for (int i = 0; i < states_.length(); ++i) slots *= static_cast<std::size_t>(shift_.alphabet_size());
  index_.assign(slots, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < states_.size(); ++i) index_[shift_.encode(states_[i])] = i;
  double acc = 0.0;
  for (double p : pi_) {
    acc += p;
    pi_cumulative_.push_back(acc);
  }
  for (const auto& row : edges_) {
    std::vector<double> c;
    double a = 0.0;
    for (const Edge& e : row) {
      a += e.prob;
      c.push_back(a);
    }
    edge_cumulative_.push_back(std::move(c));
  }
}

MarkovMeasure MarkovMeasure::from_transition(const ShiftSpace& s, const std::vector<std::vector<double>>& transition,
                                             std::vector<double> stationary, double tol) {
  const auto q = static_cast<std::size_t>(s.alphabet_size());
  if (transition.size() != q) throw Error(ErrorCode::InvalidMeasure, "transition matrix has the wrong size");
  std::vector<std::vector<Edge>> edges(q);
  for (std::size_t i = 0; i < q; ++i) {
    if (transition[i].size() != q) throw Error(ErrorCode::InvalidMeasure, "transition matrix has the wrong size");
    double sum = 0.0;
    for (std::size_t j = 0; j < q; ++j) {
      const double p = transition[i][j];
      if (!(p >= 0.0)) throw Error(ErrorCode::InvalidMeasure, "negative transition probability");
      if (p > 0.0 && !s.allowed(static_cast<Symbol>(i), static_cast<Symbol>(j)))
        throw Error(ErrorCode::InvalidMeasure, "transition support violates the adjacency matrix");
      if (p > 0.0) edges[i].push_back({j, p});
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol) throw Error(ErrorCode::InvalidMeasure, "transition row does not sum to 1");
  }
  if (stationary.empty()) {
    // pi (P - I) = 0 with the last equation replaced by sum(pi) = 1.
    std::vector<std::vector<long double>> a(q, std::vector<long double>(q + 1, 0.0L));
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j) a[i][j] = transition[j][i] - (i == j ? 1.0L : 0.0L);
    for (std::size_t j = 0; j < q; ++j) a[q - 1][j] = 1.0L;
    a[q - 1][q] = 1.0L;
    for (std::size_t c = 0; c < q; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < q; ++r)
        if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
      if (a[piv][c] == 0.0L) throw Error(ErrorCode::InvalidMeasure, "transition matrix has no unique stationary vector");
      std::swap(a[c], a[piv]);
      for (std::size_t r = 0; r < q; ++r) {
        if (r == c || a[r][c] == 0.0L) continue;
        const long double f = a[r][c] / a[c][c];
        for (std::size_t k = c; k <= q; ++k) a[r][k] -= f * a[c][k];
      }
    }
    stationary.resize(q);
    for (std::size_t i = 0; i < q; ++i) stationary[i] = std::max(0.0, static_cast<double>(a[i][q] / a[i][i]));
  } else {
    if (stationary.size() != q) throw Error(ErrorCode::InvalidMeasure, "stationary vector has the wrong size");
    double sum = 0.0;
    for (double x : stationary) {
      if (!(x >= 0.0)) throw Error(ErrorCode::InvalidMeasure, "negative stationary weight");
      sum += x;
    }
    if (std::abs(sum - 1.0) > tol) throw Error(ErrorCode::InvalidMeasure, "stationary vector does not sum to 1");
    for (std::size_t j = 0; j < q; ++j) {
      double v = 0.0;
      for (std::size_t i = 0; i < q; ++i) v += stationary[i] * transition[i][j];
      if (std::abs(v - stationary[j]) > tol) throw Error(ErrorCode::InvalidMeasure, "stationary vector is not invariant");
    }
  }
  return MarkovMeasure(s, enumerate_words(s, 1), std::move(edges), std::move(stationary));
}

MarkovMeasure MarkovMeasure::bernoulli(const ShiftSpace& s, const std::vector<double>& p) {
  std::vector<std::vector<double>> t(p.size(), p);
  return from_transition(s, t, p);
}

double MarkovMeasure::cylinder(std::span<const Symbol> word) const {
  const auto m = static_cast<std::size_t>(order());
  if (word.empty()) return 1.0;
  if (!shift_.admissible(word)) return 0.0;
  if (word.size() < m) {
    double total = 0.0;
    for (std::size_t i = 0; i < states_.size(); ++i) {
      const auto st = states_[i];
      if (std::equal(word.begin(), word.end(), st.begin())) total += pi_[i];
    }
    return total;
  }
  std::size_t u = state_index(word.subspan(0, m));
  double mass = pi_[u];
  for (std::size_t j = 1; j + m <= word.size() && mass > 0.0; ++j) {
    const std::size_t v = state_index(word.subspan(j, m));
    double p = 0.0;
    for (const Edge& e : edges_[u])
      if (e.to == v) p = e.prob;
    mass *= p;
    u = v;
  }
  return mass;
}

double MarkovMeasure::entropy() const {
  double h = 0.0;
  for (std::size_t u = 0; u < states_.size(); ++u)
    for (const Edge& e : edges_[u])
      if (e.prob > 0.0) h -= pi_[u] * e.prob * std::log(e.prob);
  return h;
}

std::size_t MarkovMeasure::draw(std::mt19937_64& rng, const std::vector<double>& cumulative) const {
  const double r = uniform01(rng) * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
  return std::min(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

void MarkovMeasure::sample(std::mt19937_64& rng, std::size_t length, Word& out) const {
  const auto m = static_cast<std::size_t>(order());
  out.resize(std::max(length, m));
  std::size_t u = draw(rng, pi_cumulative_);
  const auto first = states_[u];
  std::copy(first.begin(), first.end(), out.begin());
  for (std::size_t j = m; j < out.size(); ++j) {
    const Edge& e = edges_[u][draw(rng, edge_cumulative_[u])];
    u = e.to;
    out[j] = states_[u].back();
  }
  out.resize(length);
}

double MarkovMeasure::stationarity_defect() const {
  std::vector<double> next(pi_.size(), 0.0);
  double worst = 0.0;
  for (std::size_t u = 0; u < states_.size(); ++u) {
    double row = 0.0;
    for (const Edge& e : edges_[u]) {
      next[e.to] += pi_[u] * e.prob;
      row += e.prob;
    }
    worst = std::max(worst, std::abs(row - 1.0));
  }
  for (std::size_t i = 0; i < pi_.size(); ++i) worst = std::max(worst, std::abs(next[i] - pi_[i]));
  return worst;
}

}  // namespace gl2tf
