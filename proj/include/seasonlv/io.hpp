#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "seasonlv/attractor.hpp"
#include "seasonlv/classify.hpp"
#include "seasonlv/fixedpoints.hpp"
#include "seasonlv/flow.hpp"
#include "seasonlv/model.hpp"
#include "seasonlv/oracle.hpp"
#include "seasonlv/sampling.hpp"

namespace seasonlv {

using Json = nlohmann::json;

struct Scenario {
  std::string name;
  ModelParams params;
  std::optional<Vec3> x0;
  IntegratorConfig integrator;
};

/// A number, or a string holding a decimal or a ratio "p/q".
double parse_number(const Json& value, const std::string& field);

/// Keys: omega, phi, mu[3], b[3], a[3][3]; optional name, x0[3] and
/// integrator {rel_tol, abs_tol, max_steps}. Throws ParseError for a
/// malformed document and InvalidParams when validate() objects.
Scenario parse_scenario(const Json& doc, const std::string& fallback_name = "scenario");

/// The name defaults to the file stem.
Scenario load_scenario(const std::string& path);

/// Partial box; missing keys keep their defaults.
SampleBox parse_sample_box(const Json& doc);

Json params_to_json(const ModelParams& p);
Json derived_to_json(const DerivedParams& d);
Json record_to_json(const FixedPointRecord& fp);
Json inventory_to_json(const FixedPointInventory& inv);
Json index_report_to_json(const IndexReport& rep);
Json signature_to_json(const BoundarySignature& sig);
Json class_to_json(const ClassId& c);
Json lg_signature_to_json(const LGSignature& s);
Json theta_to_json(const ThetaReport& t);
Json limit_report_to_json(const LimitSetReport& rep);

}  // namespace seasonlv
