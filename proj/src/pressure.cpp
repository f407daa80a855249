#include "gl2tf/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gl2tf/error.hpp"
#include "gl2tf/kernels.hpp"
#include "gl2tf/transfer.hpp"

namespace gl2tf {

AdditivePressure additive_pressure(const LocalFunction& phi) {
  const WindowGraph g = window_graph(phi);
  const PerronData pd = perron(g.transfer);
  AdditivePressure out;
  out.value = std::log(pd.rho) + g.log_scale;
  out.lower = std::log(pd.lower) + g.log_scale;
  out.upper = std::log(pd.upper) + g.log_scale;
  out.iterations = pd.iterations;
  out.converged = pd.converged;
  return out;
}

LocalFunction log_abs(const LocalFunction& f) {
  return f.map([](double v) { return std::log(std::abs(v)); });
}

LocalFunction half_log_det(const Cocycle& a) {
  std::map<Word, double> entries;
  a.for_each_window([&](std::span<const Symbol> w, const Mat2& m) {
    entries[Word(w.begin(), w.end())] = 0.5 * std::log(std::abs(m.det()));
  });
  return LocalFunction(a.shift(), a.depth(), entries);
}

TriangularCocycle straighten(const Cocycle& a, const Direction& l, double tol) {
  const Vec2 u = l.vector();
  const Mat2 c{u.x, -u.y, u.y, u.x};
  const Mat2 ci = c.transpose();
  std::map<Word, double> ea, eb, ec;
  a.for_each_window([&](std::span<const Symbol> w, const Mat2& m) {
    const Mat2 t = ci * m * c;
    if (std::abs(t.a21) > tol * operator_norm(m))
      throw Error(ErrorCode::PreconditionViolated, "line is not invariant under window " + word_to_string(w));
    const Word key(w.begin(), w.end());
    ea[key] = t.a11;
    eb[key] = t.a12;
    ec[key] = m.det() / t.a11;
  });
  return TriangularCocycle(LocalFunction(a.shift(), a.depth(), ea), LocalFunction(a.shift(), a.depth(), eb),
                           LocalFunction(a.shift(), a.depth(), ec));
}

TriangularPressures triangular_pressures(const TriangularCocycle& b) {
  TriangularPressures out;
  out.p_a = additive_pressure(log_abs(b.a()));
  out.p_c = additive_pressure(log_abs(b.c()));
  out.p_max = std::max(out.p_a.value, out.p_c.value);
  return out;
}

namespace {

struct Structural {
  double lower, upper, value;
  std::string method;
};

double allowance(double v) { return kExactAllowance * std::max(1.0, std::abs(v)); }

std::optional<Structural> structural_bracket(const Cocycle& a) {
  const std::vector<Mat2> gens = a.generators();
  if (common_conformal_structure(gens).found) {
    const AdditivePressure p = additive_pressure(half_log_det(a));
    return Structural{p.lower - allowance(p.value), p.upper + allowance(p.value), p.value, "conformal"};
  }
  const std::vector<Direction> lines = common_invariant_lines(gens);
  if (!lines.empty()) {
    const TriangularPressures tp = triangular_pressures(straighten(a, lines.front()));
    const double lo = std::max(tp.p_a.lower, tp.p_c.lower);
    const double hi = std::max(tp.p_a.upper, tp.p_c.upper);
    return Structural{lo - allowance(tp.p_max), hi + allowance(tp.p_max), tp.p_max, "triangular"};
  }
  return std::nullopt;
}

double periodic_lower_bound(const Cocycle& a) {
  int bound = 1;
  while (bound < 12 && a.shift().count_words(bound + 1) <= (std::size_t{1} << 12)) ++bound;
  double best = -std::numeric_limits<double>::infinity();
  for (const Point& p : periodic_points(a.shift(), bound).representatives)
    best = std::max(best, lyapunov_periodic(a, p).first);
  return best;
}

}  // namespace

PressureEstimate subadditive_pressure(const Cocycle& a, const PressureOptions& opt) {
  if (opt.n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
  PressureEstimate out;
  out.n_used = opt.n_max;
  out.fekete_upper = std::numeric_limits<double>::infinity();
  double qm_best = -std::numeric_limits<double>::infinity();
  double log_qm = 0.0;
  if (opt.qm) {
    if (!(opt.qm->c > 0.0) || !std::isfinite(opt.qm->c) || opt.qm->k < 0)
      throw Error(ErrorCode::InvalidArgument, "QM constants need c > 0 and k >= 0");
    const double growth = std::log(a.shift().alphabet_size()) + kernels::log_scale_for(a);
    log_qm = std::log(opt.qm->c) - std::log(opt.qm->k + 1.0) - opt.qm->k * std::max(0.0, growth);
  }
  for (int n = 1; n <= opt.n_max; ++n) {
    const double ls = kernels::parallel::word_norm_sum(a, n, opt.jobs).log_sum();
    out.log_sums.push_back(ls);
    out.p_n.push_back(ls / n);
    out.fekete_upper = std::min(out.fekete_upper, ls / n);
    if (opt.qm) qm_best = std::max(qm_best, (ls + log_qm) / n);
  }
  out.determinant_lower = additive_pressure(half_log_det(a)).lower;
  out.periodic_lower = periodic_lower_bound(a);
  if (opt.qm) out.qm_lower = qm_best;

  out.upper = out.fekete_upper;
  out.upper_source = "fekete";
  out.lower = out.determinant_lower;
  out.lower_source = "determinant";
  if (out.periodic_lower > out.lower) {
    out.lower = out.periodic_lower;
    out.lower_source = "periodic";
  }
  if (out.qm_lower && *out.qm_lower > out.lower) {
    out.lower = *out.qm_lower;
    out.lower_source = "quasi-multiplicativity";
  }
  out.upper += allowance(out.upper);
  out.lower -= allowance(out.lower);
  out.method = "word-sums";
  const std::size_t last = out.log_sums.size() - 1;
  out.estimate = last == 0 ? out.log_sums[0] : out.log_sums[last] - out.log_sums[last - 1];
  if (opt.structural) {
    if (const auto s = structural_bracket(a)) {
      out.method = s->method;
      if (s->lower > out.lower) {
        out.lower = s->lower;
        out.lower_source = s->method;
      }
      if (s->upper < out.upper) {
        out.upper = s->upper;
        out.upper_source = s->method;
      }
      out.estimate = s->value;
    }
  }
  out.estimate = std::clamp(out.estimate, out.lower, std::max(out.lower, out.upper));
  return out;
}

std::pair<double, double> lyapunov_periodic(const Cocycle& a, const Point& p) {
  if (!p.is_periodic()) throw Error(ErrorCode::InvalidArgument, "lyapunov_periodic: p must be periodic");
  const EigenData e = eigen2(a.product(p, p.period()));
  const double per = p.period();
  return {std::log(std::abs(e.lambda1)) / per, std::log(std::abs(e.lambda2)) / per};
}

LyapunovEstimate lyapunov_monte_carlo(const Cocycle& a, const MarkovMeasure& mu, long n, int trials,
                                      std::uint64_t seed, int jobs) {
  if (n < 1 || trials < 1) throw Error(ErrorCode::InvalidArgument, "lyapunov_monte_carlo: n and trials must be >= 1");
  if (!(mu.shift() == a.shift())) throw Error(ErrorCode::InvalidMeasure, "measure lives on a different shift");
  LyapunovEstimate out;
  out.n = n;
  out.trials = trials;
  out.samples = kernels::parallel::lyapunov_trials(a, mu, n, trials, seed, jobs);
  double mean = 0.0;
  for (double v : out.samples) mean += v;
  mean /= trials;
  double var = 0.0;
  for (double v : out.samples) var += (v - mean) * (v - mean);
  out.mean = mean;
  out.stderr_ = trials > 1 ? std::sqrt(var / (trials - 1) / trials) : 0.0;
  return out;
}

}  // namespace gl2tf
