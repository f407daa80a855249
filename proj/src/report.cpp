#include "gl2tf/report.hpp"

#include <cmath>

namespace gl2tf {

using nlohmann::json;

namespace {

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

// JSON has no infinities.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const HolonomyResult& r) {
  return {{"H", matrix_to_json(r.h)},
          {"truncation_n", r.truncation_n},
          {"error_bound", finite_or_null(r.error_bound)},
          {"exact", r.exact}};
}

json to_json(const PressureEstimate& p) {
  json j = {{"n_used", p.n_used},
            {"log_sums", p.log_sums},
            {"P_n", p.p_n},
            {"lower", p.lower},
            {"upper", p.upper},
            {"width", p.width()},
            {"estimate", p.estimate},
            {"method", p.method},
            {"lower_source", p.lower_source},
            {"upper_source", p.upper_source},
            {"fekete_upper", p.fekete_upper},
            {"determinant_lower", p.determinant_lower},
            {"periodic_lower", finite_or_null(p.periodic_lower)}};
  if (p.qm_lower) j["qm_lower"] = *p.qm_lower;
  return j;
}

json to_json(const AdditivePressure& p) {
  return {{"value", p.value},
          {"lower", p.lower},
          {"upper", p.upper},
          {"iterations", p.iterations},
          {"converged", p.converged}};
}

json to_json(const LyapunovEstimate& l) {
  return {{"mean", l.mean}, {"stderr", l.stderr_}, {"n", l.n}, {"trials", l.trials}};
}

json to_json(const TypicalityCertificate& c) {
  return {{"p", point_to_json(c.p)},
          {"lambda_plus", complex_json(c.lambda_plus)},
          {"lambda_minus", complex_json(c.lambda_minus)},
          {"v_plus", direction_to_json(c.v_plus)},
          {"v_minus", direction_to_json(c.v_minus)},
          {"z_plus", point_to_json(c.z_plus)},
          {"z_minus", point_to_json(c.z_minus)},
          {"twist_margin_plus", c.margin_plus},
          {"twist_margin_minus", c.margin_minus},
          {"modulus_gap", c.modulus_gap},
          {"exact", c.exact}};
}

json to_json(const WitnessResult& w) {
  json j = {{"found", w.found}, {"examined", w.examined}};
  if (w.found) {
    j["z"] = point_to_json(w.z);
    j["margin"] = w.margin;
    j["periodic_action"] = w.periodic_action;
  }
  return j;
}

json to_json(const QmReport& q) {
  return {{"n", q.n},
          {"k_max", q.k_max},
          {"k_used", q.k_used},
          {"c_estimate", q.c_estimate},
          {"worst_pair",
           {{"I", word_to_json(q.worst_i)}, {"J", word_to_json(q.worst_j)}, {"K", word_to_json(q.worst_k)}}},
          {"samples", q.samples},
          {"exhaustive", q.exhaustive}};
}

json to_json(const CylinderMeasure& m) {
  json w = json::object();
  for (std::size_t i = 0; i < m.words.size(); ++i) w[word_to_string(m.words[i])] = m.weights[i];
  return {{"depth", m.depth()}, {"weights", w}};
}

json to_json(const CohomologyVerdict& v) {
  json j = {{"status", v.status == CohomologyStatus::NotCohomologous ? "NotCohomologous" : "PossiblyCohomologous"},
            {"max_discrepancy", v.max_discrepancy},
            {"period_bound", v.period_bound},
            {"orbits_checked", v.orbits_checked}};
  if (v.witness) {
    j["witness"] = point_to_json(*v.witness);
    j["discrepancy"] = v.discrepancy;
  }
  return j;
}

json to_json(const TriangularPressures& t) {
  return {{"P_log_abs_a", to_json(t.p_a)}, {"P_log_abs_c", to_json(t.p_c)}, {"P_max", t.p_max}};
}

json to_json(const EquilibriumState& s) {
  json j = {{"label", s.label}, {"cylinders", to_json(s.cylinders)}};
  if (s.markov) {
    j["entropy"] = s.entropy;
    j["order"] = s.markov->order();
  }
  return j;
}

json to_json(const ClassificationResult& r) {
  json j = {{"branch", std::string(to_string(r.branch))}, {"reason", r.reason}, {"pressure_value", r.pressure_value}};
  json cert = json::object();
  if (r.typicality) cert["typicality"] = to_json(*r.typicality);
  if (r.qm) cert["qm"] = to_json(*r.qm);
  if (r.pressure) cert["pressure"] = to_json(*r.pressure);
  if (r.triangular) cert["triangular_pressures"] = to_json(*r.triangular);
  if (r.invariant_line) cert["invariant_line"] = direction_to_json(*r.invariant_line);
  if (r.cohomology) cert["cohomology"] = to_json(*r.cohomology);
  if (r.modulus_counterexample) cert["modulus_counterexample"] = point_to_json(*r.modulus_counterexample);
  j["certificates"] = cert;
  json states = json::array();
  for (const auto& s : r.states) states.push_back(to_json(s));
  j["equilibrium_states"] = states;
  j["notes"] = r.notes;
  return j;
}

}  // namespace gl2tf
