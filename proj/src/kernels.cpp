#include "gl2tf/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gl2tf/error.hpp"

namespace gl2tf::kernels {

void CompensatedSum::add(double x) {
  const double t = sum + x;
  if (std::abs(sum) >= std::abs(x))
    c += (sum - t) + x;
  else
    c += (x - t) + sum;
  sum = t;
}

double log_scale_for(const Cocycle& a) {
  double m = 0.0;
  a.for_each_window([&](std::span<const Symbol>, const Mat2& g) { m = std::max(m, operator_norm(g)); });
  return std::log(m);
}

namespace {

int thread_count(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

void check_capacity(const Cocycle& a, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "word length must be >= 1");
  if (a.shift().count_words(n) > kDefaultWordCap)
    throw Error(ErrorCode::CapacityExceeded, "too many words of length " + std::to_string(n));
}

// Depth-first walk over all admissible words of length n that extend
// `prefix`, adding each scaled sup norm to `acc`.
struct Walk {
  const Cocycle& a;
  int n;
  double scale;                  // exp(-log_scale)
  std::vector<Mat2> generators;  // one-step only: A(s) * scale
  Word word;
  std::vector<Mat2> stack;
  CompensatedSum acc;
  std::size_t leaves = 0;

  void leaf() {
    ++leaves;
    if (a.depth() == 0) {
      acc.add(operator_norm(stack.back()));
    } else {
      acc.add(word_norm(a, word).value * std::pow(scale, n));
    }
  }

  void descend() {
    if (static_cast<int>(word.size()) == n) {
      leaf();
      return;
    }
    const Symbol last = word.back();
    for (Symbol b = 0; b < a.shift().alphabet_size(); ++b) {
      if (!a.shift().allowed(last, b)) continue;
      word.push_back(b);
      if (a.depth() == 0) stack.push_back(generators[static_cast<std::size_t>(b)] * stack.back());
      descend();
      if (a.depth() == 0) stack.pop_back();
      word.pop_back();
    }
  }

  void run(std::span<const Symbol> prefix) {
    word.assign(prefix.begin(), prefix.end());
    stack.clear();
    if (a.depth() == 0) {
      Mat2 m = Mat2::identity();
      for (Symbol s : prefix) m = generators[static_cast<std::size_t>(s)] * m;
      stack.push_back(m);
    }
    descend();
  }
};

Walk make_walk(const Cocycle& a, int n, double log_scale) {
  Walk w{a, n, std::exp(-log_scale), {}, {}, {}, {}, 0};
  if (a.depth() == 0)
    for (Symbol s = 0; s < a.shift().alphabet_size(); ++s)
      w.generators.push_back(w.scale * a.at_window(std::span<const Symbol>(&s, 1)));
  return w;
}

bool better(double r, std::size_t idx, const PairMin& cur) { return r < cur.ratio || (r == cur.ratio && idx < cur.pair); }

double trial(const Cocycle& a, const MarkovMeasure& mu, long n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const long k = a.depth();
  Word x;
  mu.sample(rng, static_cast<std::size_t>(n + 2 * k), x);
  const std::size_t len = static_cast<std::size_t>(2 * k + 1);
  Mat2 m = Mat2::identity();
  double log_acc = 0.0;
  for (long j = 0; j < n; ++j) {
    m = a.at_window(std::span<const Symbol>(x.data() + j, len)) * m;
    const double s = m.max_abs();
    m = (1.0 / s) * m;
    log_acc += std::log(s);
  }
  return (log_acc + std::log(operator_norm(m))) / static_cast<double>(n);
}

}  // namespace

namespace serial {

WordSum word_norm_sum(const Cocycle& a, int n, std::size_t cap) {
  check_capacity(a, n);
  WordSum out;
  out.n = n;
  out.log_scale = log_scale_for(a);
  const double f = std::exp(-out.log_scale * n);
  const WordList words = enumerate_words(a.shift(), n, cap);
  CompensatedSum acc;
  for (std::size_t i = 0; i < words.size(); ++i) acc.add(word_norm(a, words[i]).value * f);
  out.scaled = acc.value();
  out.words = words.size();
  return out;
}

PairMin qm_min_ratio(const ConnectorSearch& search, const std::vector<WordData>& words,
                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
  PairMin best;
  best.ratio = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const Connector c = search.best(words[pairs[p].first], words[pairs[p].second]);
    best.k_used = std::max(best.k_used, static_cast<int>(c.k.size()));
    if (better(c.ratio, p, best)) {
      best.ratio = c.ratio;
      best.pair = p;
      best.k = c.k;
    }
  }
  return best;
}

std::vector<double> lyapunov_trials(const Cocycle& a, const MarkovMeasure& mu, long n, int trials, std::uint64_t seed) {
  std::vector<double> out;
  for (int t = 0; t < trials; ++t) out.push_back(trial(a, mu, n, splitmix64(seed + static_cast<std::uint64_t>(t))));
  return out;
}

}  // namespace serial

namespace parallel {

WordSum word_norm_sum(const Cocycle& a, int n, int jobs) {
  check_capacity(a, n);
  WordSum out;
  out.n = n;
  out.log_scale = log_scale_for(a);
  int d = 1;
  while (d < n && a.shift().count_words(d) < 256) ++d;
  const WordList prefixes = enumerate_words(a.shift(), d);
  const auto np = static_cast<long>(prefixes.size());
  std::vector<double> partial(prefixes.size());
  std::vector<std::size_t> counts(prefixes.size());
#pragma omp parallel num_threads(thread_count(jobs))
  {
    Walk w = make_walk(a, n, out.log_scale);
#pragma omp for schedule(dynamic)
    for (long i = 0; i < np; ++i) {
      w.acc = {};
      w.leaves = 0;
      w.run(prefixes[static_cast<std::size_t>(i)]);
      partial[static_cast<std::size_t>(i)] = w.acc.value();
      counts[static_cast<std::size_t>(i)] = w.leaves;
    }
  }
  CompensatedSum acc;
  for (std::size_t i = 0; i < partial.size(); ++i) {
    acc.add(partial[i]);
    out.words += counts[i];
  }
  out.scaled = acc.value();
  return out;
}

PairMin qm_min_ratio(const ConnectorSearch& search, const std::vector<WordData>& words,
                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs, int jobs) {
  const int threads = thread_count(jobs);
  std::vector<PairMin> local(static_cast<std::size_t>(threads));
  for (auto& l : local) l.ratio = std::numeric_limits<double>::infinity();
  const auto np = static_cast<long>(pairs.size());
#pragma omp parallel num_threads(threads)
  {
    PairMin& best = local[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 64)
    for (long p = 0; p < np; ++p) {
      const auto& pr = pairs[static_cast<std::size_t>(p)];
      const Connector c = search.best(words[pr.first], words[pr.second]);
      best.k_used = std::max(best.k_used, static_cast<int>(c.k.size()));
      if (better(c.ratio, static_cast<std::size_t>(p), best)) {
        best.ratio = c.ratio;
        best.pair = static_cast<std::size_t>(p);
        best.k = c.k;
      }
    }
  }
  PairMin out;
  out.ratio = std::numeric_limits<double>::infinity();
  for (const PairMin& l : local) {
    out.k_used = std::max(out.k_used, l.k_used);
    if (l.ratio != std::numeric_limits<double>::infinity() && better(l.ratio, l.pair, out)) {
      out.ratio = l.ratio;
      out.pair = l.pair;
      out.k = l.k;
    }
  }
  return out;
}

std::vector<double> lyapunov_trials(const Cocycle& a, const MarkovMeasure& mu, long n, int trials, std::uint64_t seed,
                                    int jobs) {
  std::vector<double> out(static_cast<std::size_t>(std::max(trials, 0)));
#pragma omp parallel for num_threads(thread_count(jobs)) schedule(dynamic)
  for (int t = 0; t < trials; ++t)
    out[static_cast<std::size_t>(t)] = trial(a, mu, n, splitmix64(seed + static_cast<std::uint64_t>(t)));
  return out;
}

}  // namespace parallel

}  // namespace gl2tf::kernels
