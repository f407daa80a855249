#pragma once

// JSON views of library results.

#include <json.hpp>

#include "gl2tf/equilibrium.hpp"
#include "gl2tf/problem_spec.hpp"

namespace gl2tf {

nlohmann::json to_json(const HolonomyResult& r);
nlohmann::json to_json(const PressureEstimate& p);
nlohmann::json to_json(const AdditivePressure& p);
nlohmann::json to_json(const LyapunovEstimate& l);
nlohmann::json to_json(const TypicalityCertificate& c);
nlohmann::json to_json(const WitnessResult& w);
nlohmann::json to_json(const QmReport& q);
nlohmann::json to_json(const CylinderMeasure& m);
nlohmann::json to_json(const CohomologyVerdict& v);
nlohmann::json to_json(const TriangularPressures& t);
nlohmann::json to_json(const EquilibriumState& s);
nlohmann::json to_json(const ClassificationResult& r);

}  // namespace gl2tf
