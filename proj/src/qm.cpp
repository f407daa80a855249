#include "gl2tf/qm.hpp"

#include <random>

#include "gl2tf/error.hpp"
#include "gl2tf/kernels.hpp"

namespace gl2tf {

ConnectorSearch::ConnectorSearch(const Cocycle& a, int k_max) : a_(a), k_max_(k_max) {
  if (k_max < 0) throw Error(ErrorCode::InvalidArgument, "k_max must be >= 0");
  words_.resize(static_cast<std::size_t>(k_max) + 1);
  mats_.resize(words_.size());
  for (int l = 1; l <= k_max; ++l) {
    auto& wl = words_[static_cast<std::size_t>(l)];
    wl = enumerate_words(a.shift(), l);
    if (a.depth() == 0)
      for (std::size_t i = 0; i < wl.size(); ++i) mats_[static_cast<std::size_t>(l)].push_back(a.extended_product(wl[i]));
  }
}

WordData ConnectorSearch::data(std::span<const Symbol> w) const {
  WordData d;
  d.w.assign(w.begin(), w.end());
  d.norm = word_norm(a_, w).value;
  d.product = a_.depth() == 0 ? a_.extended_product(w) : Mat2::identity();
  return d;
}

Connector ConnectorSearch::best(const WordData& i, const WordData& j) const {
  const ShiftSpace& s = a_.shift();
  const double denom = i.norm * j.norm;
  Connector out;
  bool any = false;
  Word joined;
  auto ratio_with = [&](std::span<const Symbol> k, const Mat2* km) {
    if (a_.depth() == 0) {
      const Mat2 m = km ? j.product * *km * i.product : j.product * i.product;
      return operator_norm(m) / denom;
    }
    joined.assign(i.w.begin(), i.w.end());
    joined.insert(joined.end(), k.begin(), k.end());
    joined.insert(joined.end(), j.w.begin(), j.w.end());
    return word_norm(a_, joined).value / denom;
  };
  if (s.allowed(i.w.back(), j.w.front())) {
    out.ratio = ratio_with({}, nullptr);
    any = true;
  }
  for (int l = 1; l <= k_max_; ++l) {
    const WordList& wl = words_[static_cast<std::size_t>(l)];
    for (std::size_t n = 0; n < wl.size(); ++n) {
      const auto k = wl[n];
      if (!s.allowed(i.w.back(), k.front()) || !s.allowed(k.back(), j.w.front())) continue;
      const double r = ratio_with(k, a_.depth() == 0 ? &mats_[static_cast<std::size_t>(l)][n] : nullptr);
      if (!any || r > out.ratio) {
        out.ratio = r;
        out.k.assign(k.begin(), k.end());
        any = true;
      }
    }
  }
  if (!any)
    throw Error(ErrorCode::NoAdmissibleConnector,
                "no connector of length <= " + std::to_string(k_max_) + " joins " + word_to_string(i.w) + " to " +
                    word_to_string(j.w));
  return out;
}

Connector best_connector(const Cocycle& a, std::span<const Symbol> i, std::span<const Symbol> j, int k_max) {
  const ConnectorSearch search(a, k_max);
  return search.best(search.data(i), search.data(j));
}

QmReport qm_scan(const Cocycle& a, int n, int k_max, std::size_t samples, std::uint64_t seed, int jobs) {
  const WordList words = enumerate_words(a.shift(), n);
  const ConnectorSearch search(a, k_max);
  std::vector<WordData> data;
  data.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) data.push_back(search.data(words[i]));

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  QmReport rep;
  rep.n = n;
  rep.k_max = k_max;
  const std::size_t m = words.size();
  if (m * m <= samples) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) pairs.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
  } else {
    rep.exhaustive = false;
    std::mt19937_64 rng(splitmix64(seed));
    for (std::size_t t = 0; t < samples; ++t) {
      const auto i = static_cast<std::uint32_t>(uniform01(rng) * static_cast<double>(m));
      const auto j = static_cast<std::uint32_t>(uniform01(rng) * static_cast<double>(m));
      pairs.emplace_back(i, j);
    }
  }
  rep.samples = pairs.size();
  const kernels::PairMin best = kernels::parallel::qm_min_ratio(search, data, pairs, jobs);
  rep.c_estimate = best.ratio;
  rep.k_used = best.k_used;
  if (!pairs.empty()) {
    rep.worst_i = data[pairs[best.pair].first].w;
    rep.worst_j = data[pairs[best.pair].second].w;
    rep.worst_k = best.k;
  }
  return rep;
}

}  // namespace gl2tf
