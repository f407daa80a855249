#include "gl2tf/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gl2tf/error.hpp"
#include "gl2tf/transfer.hpp"

namespace gl2tf {

double CylinderMeasure::total() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

CylinderMeasure cylinders(const MarkovMeasure& mu, int depth) {
  CylinderMeasure out;
  out.words = enumerate_words(mu.shift(), depth);
  for (std::size_t i = 0; i < out.words.size(); ++i) out.weights.push_back(mu.cylinder(out.words[i]));
  return out;
}

GibbsWeights gibbs_weights(const Cocycle& a, int n, double pressure) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "gibbs_weights: n must be >= 1");
  GibbsWeights out;
  out.pressure = pressure;
  out.measure.words = enumerate_words(a.shift(), n);
  const WordList& words = out.measure.words;
  std::vector<double> raw(words.size());
  double z = 0.0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    raw[i] = std::exp(std::log(word_norm(a, words[i]).value) - n * pressure);
    z += raw[i];
  }
  out.measure.weights.resize(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) out.measure.weights[i] = raw[i] / z;

  double gmax = 0.0, gmin = std::numeric_limits<double>::infinity();
  for (int d = 1; d <= n; ++d) {
    double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
    // Words sharing a length-d prefix are contiguous in lexicographic order.
    std::size_t i = 0;
    while (i < words.size()) {
      const auto prefix = words[i].subspan(0, static_cast<std::size_t>(d));
      double mass = 0.0;
      std::size_t j = i;
      while (j < words.size() && std::equal(prefix.begin(), prefix.end(), words[j].begin())) mass += out.measure.weights[j++];
      const double r = mass * std::exp(d * pressure) / word_norm(a, prefix).value;
      dmax = std::max(dmax, r);
      dmin = std::min(dmin, r);
      i = j;
    }
    out.constant_by_depth.push_back(dmax / dmin);
    gmax = std::max(gmax, dmax);
    gmin = std::min(gmin, dmin);
  }
  out.gibbs_constant = gmax / gmin;
  return out;
}

MarkovEquilibrium markov_equilibrium(const LocalFunction& phi) {
  const WindowGraph g = window_graph(phi);
  const PerronData pd = perron(g.transfer);
  const std::size_t n = g.states.size();
  std::vector<std::vector<MarkovMeasure::Edge>> edges(n);
  std::vector<double> pi(n);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double m = g.transfer(i, j);
      if (m > 0.0) edges[i].push_back({j, m * pd.right[j] / (pd.rho * pd.right[i])});
    }
    // Renormalize rows against the residual of the eigenvector.
    double row = 0.0;
    for (const auto& e : edges[i]) row += e.prob;
    for (auto& e : edges[i]) e.prob /= row;
    pi[i] = pd.left[i] * pd.right[i];
    z += pi[i];
  }
  for (double& p : pi) p /= z;
  MarkovEquilibrium out{MarkovMeasure(phi.shift(), g.states, std::move(edges), std::move(pi)), {}};
  out.pressure.value = std::log(pd.rho) + g.log_scale;
  out.pressure.lower = std::log(pd.lower) + g.log_scale;
  out.pressure.upper = std::log(pd.upper) + g.log_scale;
  out.pressure.iterations = pd.iterations;
  out.pressure.converged = pd.converged;
  return out;
}

CohomologyVerdict livsic_test(const LocalFunction& phi, const LocalFunction& psi, int period_bound, double coh_tol) {
  if (!(phi.shift() == psi.shift())) throw Error(ErrorCode::InvalidArgument, "livsic_test: potentials on different shifts");
  if (period_bound < 1) throw Error(ErrorCode::InvalidArgument, "livsic_test: period_bound must be >= 1");
  CohomologyVerdict out;
  int bound = 1;
  while (bound < period_bound && phi.shift().count_words(bound + 1) <= (std::size_t{1} << 20)) ++bound;
  out.period_bound = bound;
  for (const Point& p : periodic_points(phi.shift(), bound).representatives) {
    ++out.orbits_checked;
    const double d = phi.birkhoff_sum(p, p.period()) - psi.birkhoff_sum(p, p.period());
    out.max_discrepancy = std::max(out.max_discrepancy, std::abs(d));
    if (std::abs(d) > coh_tol) {
      out.status = CohomologyStatus::NotCohomologous;
      out.witness = p;
      out.discrepancy = d;
      return out;
    }
  }
  return out;
}

namespace {

Mat2 frame(const Direction& l) {
  const Vec2 u = l.vector();
  return {u.x, -u.y, u.y, u.x};
}

const Direction& line_at(const LineField& f, std::span<const Symbol> w) {
  const auto it = f.lines.find(Word(w.begin(), w.end()));
  if (it == f.lines.end()) throw Error(ErrorCode::SchemaError, "line field has no entry for " + word_to_string(w));
  return it->second;
}

EquilibriumState markov_state(const std::string& label, const MarkovMeasure& mu, int depth) {
  EquilibriumState s;
  s.label = label;
  s.cylinders = cylinders(mu, depth);
  s.entropy = mu.entropy();
  s.markov = mu;
  return s;
}

double max_cylinder_difference(const MarkovMeasure& a, const MarkovMeasure& b, int depth) {
  const CylinderMeasure ca = cylinders(a, depth), cb = cylinders(b, depth);
  double d = 0.0;
  for (std::size_t i = 0; i < ca.weights.size(); ++i) d = std::max(d, std::abs(ca.weights[i] - cb.weights[i]));
  return d;
}

bool norms_multiplicative(const Cocycle& a) {
  int len = 1;
  while (len < 3 && a.shift().count_words(2 * (len + 1)) <= 4096) ++len;
  const WordList words = enumerate_words(a.shift(), len);
  Word joined;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const double ni = word_norm(a, words[i]).value;
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (!a.shift().allowed(words[i].back(), words[j].front())) continue;
      joined = words.word(i);
      joined.insert(joined.end(), words[j].begin(), words[j].end());
      const double expect = ni * word_norm(a, words[j]).value;
      if (std::abs(word_norm(a, joined).value - expect) > 1e-9 * expect) return false;
    }
  }
  return true;
}

LocalFunction log_norm(const Cocycle& a) {
  std::map<Word, double> entries;
  a.for_each_window(
      [&](std::span<const Symbol> w, const Mat2& m) { entries[Word(w.begin(), w.end())] = std::log(operator_norm(m)); });
  return LocalFunction(a.shift(), a.depth(), entries);
}

void delegate_triangular(ClassificationResult& out, const TriangularCocycle& b, const ClassifyOptions& opt) {
  const TriangularPressures tp = triangular_pressures(b);
  out.triangular = tp;
  out.pressure_value = tp.p_max;
  const LocalFunction la = log_abs(b.a()), lc = log_abs(b.c());
  const CohomologyVerdict coh = livsic_test(la, lc, opt.livsic_period_bound, opt.coh_tol);
  out.cohomology = coh;
  const double dp = tp.p_a.value - tp.p_c.value;
  if (std::abs(dp) > opt.pressure_undetermined_tol) {
    out.branch = Branch::ReducibleUnique;
    out.reason = "pressure gap between log|a| and log|c|";
    const bool a_wins = dp > 0.0;
    const MarkovEquilibrium eq = markov_equilibrium(a_wins ? la : lc);
    out.states.push_back(markov_state(a_wins ? "mu_log|a|" : "mu_log|c|", eq.measure, opt.state_depth));
    return;
  }
  if (std::abs(dp) > opt.pressure_equal_tol) {
    out.branch = Branch::Undetermined;
    out.reason = "pressures of log|a| and log|c| differ by less than the decision tolerance";
    return;
  }
  const MarkovEquilibrium ea = markov_equilibrium(la);
  const MarkovEquilibrium ec = markov_equilibrium(lc);
  if (coh.status == CohomologyStatus::PossiblyCohomologous) {
    out.branch = Branch::ReducibleUnique;
    out.reason = "log|a| and log|c| agree on all periodic orbits up to the period bound";
    const double diff = max_cylinder_difference(ea.measure, ec.measure, opt.state_depth);
    out.notes.push_back("max cylinder difference between mu_log|a| and mu_log|c|: " + std::to_string(diff));
    out.states.push_back(markov_state("mu_log|a|", ea.measure, opt.state_depth));
    return;
  }
  out.branch = Branch::ReducibleTwoErgodic;
  out.reason = "equal pressures and log|a| not cohomologous to log|c|";
  out.states.push_back(markov_state("mu_log|a|", ea.measure, opt.state_depth));
  out.states.push_back(markov_state("mu_log|c|", ec.measure, opt.state_depth));
}

}  // namespace

TriangularCocycle straighten_field(const Cocycle& a, const LineField& field, double tol) {
  const int k = a.depth();
  const int kl = field.depth;
  const int big = std::max(k, kl + 1);
  const WordList windows = enumerate_words(a.shift(), 2 * big + 1);
  std::map<Word, double> ea, eb, ec;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const auto w = windows[i];
    const Mat2& m = a.at_window(w.subspan(static_cast<std::size_t>(big - k), static_cast<std::size_t>(2 * k + 1)));
    const Direction& l0 = line_at(field, w.subspan(static_cast<std::size_t>(big - kl), static_cast<std::size_t>(2 * kl + 1)));
    const Direction& l1 =
        line_at(field, w.subspan(static_cast<std::size_t>(big + 1 - kl), static_cast<std::size_t>(2 * kl + 1)));
    const Mat2 t = frame(l1).transpose() * m * frame(l0);
    if (std::abs(t.a21) > tol * operator_norm(m))
      throw Error(ErrorCode::PreconditionViolated, "line field is not invariant at window " + word_to_string(w));
    const Word key(w.begin(), w.end());
    ea[key] = t.a11;
    eb[key] = t.a12;
    ec[key] = t.a22;
  }
  return TriangularCocycle(LocalFunction(a.shift(), big, ea), LocalFunction(a.shift(), big, eb),
                           LocalFunction(a.shift(), big, ec));
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::Typical:
      return "Typical";
    case Branch::ConformalDetected:
      return "ConformalDetected";
    case Branch::ReducibleUnique:
      return "ReducibleUnique";
    case Branch::ReducibleTwoErgodic:
      return "ReducibleTwoErgodic";
    case Branch::Undetermined:
      return "Undetermined";
  }
  return "Undetermined";
}

ClassificationResult classify_triangular(const TriangularCocycle& b, const ClassifyOptions& opt) {
  ClassificationResult out;
  out.invariant_line = kE1;
  PressureOptions po;
  po.n_max = opt.n_max;
  po.jobs = opt.jobs;
  out.pressure = subadditive_pressure(b.to_cocycle(), po);
  delegate_triangular(out, b, opt);
  return out;
}

ClassificationResult classify(const Cocycle& a, const ClassifyOptions& opt) {
  ClassificationResult out;
  PressureOptions po;
  po.n_max = opt.n_max;
  po.jobs = opt.jobs;

  TypicalityOptions to;
  to.period_bound = opt.period_bound;
  to.core_bound = opt.core_bound;
  to.gap_tol = opt.gap_tol;
  to.twist_tol = opt.twist_tol;
  if (auto cert = is_typical(a, to)) {
    out.branch = Branch::Typical;
    out.reason = "pinching periodic point with twisting homoclinic loops";
    out.typicality = *cert;
    const int kmax = opt.qm_k_max >= 0 ? opt.qm_k_max : default_k_max(a.shift());
    out.qm = qm_scan(a, opt.qm_n, kmax, opt.qm_samples, opt.seed, opt.jobs);
    po.qm = QmConstants{out.qm->c_estimate, out.qm->k_used};
    out.pressure = subadditive_pressure(a, po);
    out.pressure_value = out.pressure->estimate;
    out.notes.push_back("lower pressure bound uses the empirical QM constants from the scan");
    EquilibriumState s;
    s.label = "gibbs";
    s.cylinders = gibbs_weights(a, opt.state_depth, out.pressure_value).measure;
    out.states.push_back(std::move(s));
    return out;
  }

  const EqualModulusScan em = equal_modulus_scan(a, opt.period_bound, opt.gap_tol);
  if (em.all_equal) {
    out.branch = Branch::ConformalDetected;
    out.reason = "all periodic eigenvalue pairs have equal modulus";
    const bool mult = norms_multiplicative(a);
    const LocalFunction phi = mult ? log_norm(a) : half_log_det(a);
    out.notes.push_back(mult ? "potential log||A(x)|| (norms multiplicative on samples)"
                             : "potential (1/2) log|det A(x)|");
    const MarkovEquilibrium eq = markov_equilibrium(phi);
    out.pressure = subadditive_pressure(a, po);
    out.pressure_value = eq.pressure.value;
    out.states.push_back(markov_state("mu_phi", eq.measure, opt.state_depth));
    return out;
  }
  out.modulus_counterexample = em.counterexample;

  if (opt.invariant_line) {
    out.pressure = subadditive_pressure(a, po);
    delegate_triangular(out, straighten_field(a, *opt.invariant_line), opt);
    out.notes.push_back("triangularized along the supplied line field");
    return out;
  }
  const std::vector<Direction> lines = common_invariant_lines(a.generators());
  if (!lines.empty()) {
    out.invariant_line = lines.front();
    out.pressure = subadditive_pressure(a, po);
    delegate_triangular(out, straighten(a, lines.front()), opt);
    return out;
  }

  out.branch = Branch::Undetermined;
  out.reason = "no typicality certificate, no equal-modulus structure and no invariant line at the given bounds";
  out.pressure = subadditive_pressure(a, po);
  out.pressure_value = out.pressure->estimate;
  return out;
}

BundleConsistency bundle_consistency(const Cocycle& a, const LineField& l1, const LineField& l2, int period_bound,
                                     double coh_tol) {
  const TriangularCocycle b1 = straighten_field(a, l1);
  const TriangularCocycle b2 = straighten_field(a, l2);
  return {livsic_test(log_abs(b1.a()), log_abs(b2.c()), period_bound, coh_tol),
          livsic_test(log_abs(b2.a()), log_abs(b1.c()), period_bound, coh_tol)};
}

}  // namespace gl2tf
