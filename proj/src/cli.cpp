#include "gl2tf/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gl2tf/error.hpp"
#include "gl2tf/report.hpp"

namespace gl2tf {

using nlohmann::json;

namespace {

struct Flags {
  std::string output = "json";
  std::uint64_t seed = 0;
  int jobs = 0;
  std::string spec_path;
  int n_max = 12;
  int n = 0;
  int k_max = -1;
  std::size_t samples = 1u << 16;
  double qm_c = 0.0;
  int qm_k = -1;
  bool no_structural = false;
  std::string potential;
  std::string phi, psi;
  long lyap_n = 10000;
  int trials = 64;
  std::string measure_path;
  std::string x, y;
  std::string kind = "stable";
  int period_bound = 4;
  int core_bound = kDefaultCoreBound;
  int livsic_period_bound = kDefaultLivsicPeriodBound;
  int state_depth = 8;
  int qm_n = 6;
  std::string line;
  double pressure = std::numeric_limits<double>::quiet_NaN();
};

json read_json(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
    buf << in.rdbuf();
  }
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

json parse_inline(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "invalid JSON for " + what + ": " + e.what());
  }
}

void check_capacity(const ProblemSpec& spec, int n) {
  if (spec.shift.count_words(n) > spec.word_cap)
    throw Error(ErrorCode::CapacityExceeded, "more than " + std::to_string(spec.word_cap) + " words of length " +
                                                 std::to_string(n));
}

const Cocycle& need_cocycle(const ProblemSpec& spec) {
  if (!spec.cocycle) throw Error(ErrorCode::SchemaError, "this command needs a cocycle", "/cocycle");
  return *spec.cocycle;
}

const LocalFunction& named_potential(const ProblemSpec& spec, const std::string& name) {
  const auto it = spec.potentials.find(name);
  if (it == spec.potentials.end()) throw Error(ErrorCode::InvalidArgument, "no potential named '" + name + "'", "/potentials");
  return it->second;
}

ClassifyOptions classify_options(const ProblemSpec& spec, const Flags& f) {
  ClassifyOptions o;
  o.period_bound = f.period_bound;
  o.core_bound = f.core_bound;
  o.gap_tol = spec.tolerances.gap_tol;
  o.twist_tol = spec.tolerances.twist_tol;
  o.coh_tol = spec.tolerances.coh_tol;
  o.pressure_equal_tol = spec.tolerances.pressure_equal_tol;
  o.pressure_undetermined_tol = spec.tolerances.pressure_undetermined_tol;
  o.livsic_period_bound = f.livsic_period_bound;
  o.n_max = f.n_max;
  o.state_depth = f.state_depth;
  o.qm_n = f.qm_n;
  o.qm_k_max = f.k_max;
  o.qm_samples = f.samples;
  o.seed = f.seed;
  o.jobs = f.jobs;
  return o;
}

// Returns the result payload and sets `code` to 0 or 2.
json execute(const std::string& cmd, const ProblemSpec& spec, const Flags& f, int& code) {
  code = 0;
  if (cmd == "validate") return {{"valid", true}, {"normalized", spec.normalized}};

  if (cmd == "pressure") {
    const Cocycle& a = need_cocycle(spec);
    check_capacity(spec, f.n_max);
    PressureOptions po;
    po.n_max = f.n_max;
    po.jobs = f.jobs;
    po.structural = !f.no_structural;
    if (f.qm_k >= 0) po.qm = QmConstants{f.qm_c, f.qm_k};
    return to_json(subadditive_pressure(a, po));
  }

  if (cmd == "pressure-additive") {
    if (!f.potential.empty()) return to_json(additive_pressure(named_potential(spec, f.potential)));
    if (spec.potentials.size() == 1) return to_json(additive_pressure(spec.potentials.begin()->second));
    if (!spec.potentials.empty())
      throw Error(ErrorCode::InvalidArgument, "several potentials given; choose one with --potential");
    json j = to_json(additive_pressure(LocalFunction::constant(spec.shift, 0.0)));
    j["potential"] = "zero";
    return j;
  }

  if (cmd == "lyapunov") {
    const Cocycle& a = need_cocycle(spec);
    std::optional<MarkovMeasure> mu = spec.measure;
    std::string source = "spec";
    if (!f.measure_path.empty()) {
      json wrapped = spec.normalized;
      wrapped["measure"] = read_json(f.measure_path);
      mu = parse_problem_spec(wrapped).measure;
      source = f.measure_path;
    }
    if (!mu) {
      mu = markov_equilibrium(LocalFunction::constant(spec.shift, 0.0)).measure;
      source = "parry";
    }
    json j = to_json(lyapunov_monte_carlo(a, *mu, f.lyap_n, f.trials, f.seed, f.jobs));
    j["measure"] = source;
    json periodic = json::array();
    for (const Point& p : periodic_points(spec.shift, f.period_bound).representatives) {
      const auto [lp, lm] = lyapunov_periodic(a, p);
      periodic.push_back({{"p", point_to_json(p)}, {"lambda_plus", lp}, {"lambda_minus", lm}});
    }
    j["periodic"] = periodic;
    return j;
  }

  if (cmd == "holonomy") {
    const Cocycle& a = need_cocycle(spec);
    if (f.x.empty() || f.y.empty()) throw Error(ErrorCode::InvalidArgument, "holonomy needs --x and --y");
    const Point x = point_from_json(parse_inline(f.x, "--x"), "--x");
    const Point y = point_from_json(parse_inline(f.y, "--y"), "--y");
    if (!x.admissible_in(spec.shift) || !y.admissible_in(spec.shift))
      throw Error(ErrorCode::NotAdmissible, "points must be admissible");
    if (f.kind == "stable") return to_json(stable_holonomy(a, x, y));
    if (f.kind == "unstable") return to_json(unstable_holonomy(a, x, y));
    if (f.kind == "loop") return {{"psi", matrix_to_json(holonomy_loop(a, x, y))}, {"exact", true}};
    throw Error(ErrorCode::InvalidArgument, "--kind must be stable, unstable or loop");
  }

  if (cmd == "typical") {
    TypicalityOptions to;
    to.period_bound = f.period_bound;
    to.core_bound = f.core_bound;
    to.gap_tol = spec.tolerances.gap_tol;
    to.twist_tol = spec.tolerances.twist_tol;
    if (const auto c = is_typical(need_cocycle(spec), to)) return {{"status", "Typical"}, {"certificate", to_json(*c)}};
    code = 2;
    return {{"status", "Undetermined"}, {"period_bound", f.period_bound}, {"core_bound", f.core_bound}};
  }

  if (cmd == "witness") {
    const Cocycle& a = need_cocycle(spec);
    json list = json::array();
    bool all = true;
    for (const Point& p : periodic_points(spec.shift, f.period_bound).representatives) {
      std::vector<Direction> lines;
      if (!f.line.empty()) {
        const json d = parse_inline(f.line, "--line");
        if (!d.is_array() || d.size() != 2) throw Error(ErrorCode::InvalidArgument, "--line must be [x, y]");
        lines.push_back(Direction(Vec2{d[0].get<double>(), d[1].get<double>()}));
      } else {
        lines = eigen2(a.product(p, p.period()), spec.tolerances.gap_tol).directions;
      }
      for (const Direction& l : lines) {
        const WitnessResult w = irreducibility_witness(a, p, l, f.core_bound, spec.tolerances.twist_tol);
        all = all && w.found;
        json e = to_json(w);
        e["p"] = point_to_json(p);
        e["line"] = direction_to_json(l);
        list.push_back(e);
      }
    }
    if (!all) code = 2;
    return {{"all_witnessed", all}, {"results", list}};
  }

  if (cmd == "qm") {
    const Cocycle& a = need_cocycle(spec);
    const int n = f.n > 0 ? f.n : 6;
    check_capacity(spec, n);
    const int kmax = f.k_max >= 0 ? f.k_max : default_k_max(spec.shift);
    return to_json(qm_scan(a, n, kmax, f.samples, f.seed, f.jobs));
  }

  if (cmd == "gibbs") {
    const Cocycle& a = need_cocycle(spec);
    const int n = f.n > 0 ? f.n : 8;
    check_capacity(spec, std::max(n, f.n_max));
    double p = f.pressure;
    json j;
    if (std::isnan(p)) {
      PressureOptions po;
      po.n_max = f.n_max;
      po.jobs = f.jobs;
      const PressureEstimate est = subadditive_pressure(a, po);
      p = est.estimate;
      j["pressure_source"] = to_json(est);
    }
    const GibbsWeights g = gibbs_weights(a, n, p);
    j["pressure"] = p;
    j["measure"] = to_json(g.measure);
    j["gibbs_constant"] = g.gibbs_constant;
    j["constant_by_depth"] = g.constant_by_depth;
    return j;
  }

  if (cmd == "livsic") {
    CohomologyVerdict v;
    if (!f.phi.empty() || !f.psi.empty()) {
      if (f.phi.empty() || f.psi.empty()) throw Error(ErrorCode::InvalidArgument, "give both --phi and --psi");
      v = livsic_test(named_potential(spec, f.phi), named_potential(spec, f.psi), f.livsic_period_bound,
                      spec.tolerances.coh_tol);
    } else if (spec.triangular) {
      v = livsic_test(log_abs(spec.triangular->a()), log_abs(spec.triangular->c()), f.livsic_period_bound,
                      spec.tolerances.coh_tol);
    } else {
      throw Error(ErrorCode::InvalidArgument, "livsic needs --phi/--psi or a triangular cocycle");
    }
    return to_json(v);
  }

  if (cmd == "classify") {
    check_capacity(spec, std::max(f.n_max, f.state_depth));
    ClassifyOptions o = classify_options(spec, f);
    ClassificationResult r;
    json extra;
    if (spec.triangular) {
      r = classify_triangular(*spec.triangular, o);
    } else {
      if (!spec.invariant_lines.empty()) o.invariant_line = spec.invariant_lines.front();
      r = classify(need_cocycle(spec), o);
      if (spec.invariant_lines.size() == 2) {
        const BundleConsistency bc = bundle_consistency(*spec.cocycle, spec.invariant_lines[0], spec.invariant_lines[1],
                                                        o.livsic_period_bound, o.coh_tol);
        extra = {{"consistent", bc.consistent()},
                 {"a1_vs_c2", to_json(bc.a1_vs_c2)},
                 {"a2_vs_c1", to_json(bc.a2_vs_c1)}};
      }
    }
    if (r.branch == Branch::Undetermined) code = 2;
    json j = to_json(r);
    if (!extra.is_null()) j["bundle_consistency"] = extra;
    return j;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown command " + cmd);
}

void print_table(std::ostream& out, const json& report) {
  for (const auto& [k, v] : report.items()) {
    if (k == "result" && v.is_object()) {
      for (const auto& [rk, rv] : v.items()) out << "result." << rk << ": " << (rv.is_string() ? rv.get<std::string>() : rv.dump()) << '\n';
    } else {
      out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermodynamic formalism for GL2(R) cocycles over subshifts of finite type", "gl2tf"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--output", f.output, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--seed", f.seed, "random seed");
  app.add_option("--jobs", f.jobs, "worker threads (0 = all available)");

  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("spec", f.spec_path, "problem spec (JSON file, - for stdin)")->required();
    s->fallthrough();
    return s;
  };
  sub("validate", "check a problem spec");
  CLI::App* pressure = sub("pressure", "subadditive pressure bracket");
  pressure->add_option("--n-max", f.n_max);
  pressure->add_option("--qm-c", f.qm_c, "quasi-multiplicativity constant c");
  pressure->add_option("--qm-k", f.qm_k, "quasi-multiplicativity connector length k");
  pressure->add_flag("--no-structural", f.no_structural, "word sums only");
  CLI::App* padd = sub("pressure-additive", "pressure of a locally constant potential");
  padd->add_option("--potential", f.potential);
  CLI::App* lyap = sub("lyapunov", "top Lyapunov exponent");
  lyap->add_option("--n", f.lyap_n);
  lyap->add_option("--trials", f.trials);
  lyap->add_option("--measure", f.measure_path, "JSON file with a measure block");
  lyap->add_option("--period-bound", f.period_bound);
  CLI::App* hol = sub("holonomy", "stable/unstable holonomy or holonomy loop");
  hol->add_option("--x", f.x, "point JSON")->required();
  hol->add_option("--y", f.y, "point JSON")->required();
  hol->add_option("--kind", f.kind, "stable, unstable or loop");
  CLI::App* typ = sub("typical", "search for a typicality certificate");
  typ->add_option("--period-bound", f.period_bound);
  typ->add_option("--core-bound", f.core_bound);
  CLI::App* wit = sub("witness", "irreducibility witnesses");
  wit->add_option("--period-bound", f.period_bound);
  wit->add_option("--core-bound", f.core_bound);
  wit->add_option("--line", f.line, "direction [x, y]");
  CLI::App* qm = sub("qm", "quasi-multiplicativity scan");
  qm->add_option("--n", f.n);
  qm->add_option("--k-max", f.k_max);
  qm->add_option("--samples", f.samples);
  CLI::App* gibbs = sub("gibbs", "Gibbs cylinder weights");
  gibbs->add_option("--n", f.n);
  gibbs->add_option("--n-max", f.n_max);
  gibbs->add_option("--pressure", f.pressure);
  CLI::App* liv = sub("livsic", "periodic-orbit cohomology test");
  liv->add_option("--phi", f.phi);
  liv->add_option("--psi", f.psi);
  liv->add_option("--period-bound", f.livsic_period_bound);
  CLI::App* cls = sub("classify", "full classification pipeline");
  cls->add_option("--period-bound", f.period_bound);
  cls->add_option("--core-bound", f.core_bound);
  cls->add_option("--n-max", f.n_max);
  cls->add_option("--state-depth", f.state_depth);
  cls->add_option("--qm-n", f.qm_n);
  cls->add_option("--k-max", f.k_max);
  cls->add_option("--samples", f.samples);
  cls->add_option("--livsic-period-bound", f.livsic_period_bound);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 1;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  const auto start = std::chrono::steady_clock::now();
  try {
    const json raw = read_json(f.spec_path);
    if (cmd == "validate") {
      const auto issues = validate_problem_spec(raw);
      if (!issues.empty()) {
        json list = json::array();
        for (const auto& i : issues)
          list.push_back({{"code", std::string(to_string(i.code))}, {"path", i.path}, {"message", i.message}});
        err << json{{"errors", list}}.dump(2) << '\n';
        return 1;
      }
    }
    const ProblemSpec spec = parse_problem_spec(raw);
    int code = 0;
    json result = execute(cmd, spec, f, code);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json report = {{"command", cmd},
                   {"spec_hash", spec_hash(spec.normalized)},
                   {"tool_version", kToolVersion},
                   {"seed", f.seed},
                   {"wall_time", wall},
                   {"result", std::move(result)}};
    if (f.output == "table")
      print_table(out, report);
    else
      out << report.dump(2) << '\n';
    return code;
  } catch (const Error& e) {
    json j = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    if (!e.path().empty()) j["path"] = e.path();
    err << json{{"error", j}}.dump(2) << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << json{{"error", {{"code", "InternalError"}, {"message", e.what()}}}}.dump(2) << '\n';
    return 1;
  }
}

}  // namespace gl2tf
