#include "seasonlv/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

namespace seasonlv {
namespace {

double parse_decimal(const std::string& text, const std::string& field) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError(field + ": not a number: \"" + text + "\"");
  }
  if (used != text.size()) throw ParseError(field + ": trailing characters in \"" + text + "\"");
  return v;
}

Vec3 parse_vec3(const Json& doc, const std::string& field) {
  if (!doc.is_array() || doc.size() != 3) throw ParseError(field + ": expected an array of 3 numbers");
  Vec3 out{};
  for (int i = 0; i < 3; ++i) out[i] = parse_number(doc[i], field + "[" + std::to_string(i) + "]");
  return out;
}

const Json& require(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  return doc.at(key);
}

Json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

Json vec_json(const Vec3& v) { return Json::array({number(v[0]), number(v[1]), number(v[2])}); }

Json mat_json(const Mat3& m) { return Json::array({vec_json(m[0]), vec_json(m[1]), vec_json(m[2])}); }

Json complex_json(const Complex& c) { return Json::array({number(c.real()), number(c.imag())}); }

Json along_json(const std::optional<Along>& a) {
  if (!a) return nullptr;
  return to_string(*a);
}

}  // namespace

double parse_number(const Json& value, const std::string& field) {
  double v = 0.0;
  if (value.is_number()) {
    v = value.get<double>();
  } else if (value.is_string()) {
    const std::string text = value.get<std::string>();
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
      v = parse_decimal(text, field);
    } else {
      const double num = parse_decimal(text.substr(0, slash), field);
      const double den = parse_decimal(text.substr(slash + 1), field);
      if (den == 0.0) throw ParseError(field + ": zero denominator");
      v = num / den;
    }
  } else {
    throw ParseError(field + ": expected a number or a numeric string");
  }
  if (!std::isfinite(v)) throw ParseError(field + ": not finite");
  return v;
}

Scenario parse_scenario(const Json& doc, const std::string& fallback_name) {
  if (!doc.is_object()) throw ParseError("scenario must be a JSON object");
  Scenario sc;
  sc.name = doc.contains("name") ? doc.at("name").get<std::string>() : fallback_name;
  ModelParams& p = sc.params;
  p.omega = parse_number(require(doc, "omega"), "omega");
  p.phi = parse_number(require(doc, "phi"), "phi");
  p.mu = parse_vec3(require(doc, "mu"), "mu");
  p.b = parse_vec3(require(doc, "b"), "b");
  const Json& a = require(doc, "a");
  if (!a.is_array() || a.size() != 3) throw ParseError("a: expected a 3x3 array");
  for (int i = 0; i < 3; ++i) p.a[i] = parse_vec3(a[i], "a[" + std::to_string(i) + "]");
  if (doc.contains("x0")) sc.x0 = StateVec(parse_vec3(doc.at("x0"), "x0")).values();
  if (doc.contains("integrator")) {
    const Json& in = doc.at("integrator");
    if (in.contains("rel_tol")) sc.integrator.rel_tol = parse_number(in.at("rel_tol"), "integrator.rel_tol");
    if (in.contains("abs_tol")) sc.integrator.abs_tol = parse_number(in.at("abs_tol"), "integrator.abs_tol");
    if (in.contains("max_steps")) sc.integrator.max_steps = in.at("max_steps").get<std::size_t>();
    sc.integrator.validate();
  }
  const auto violations = validate(p);
  if (!violations.empty()) {
    std::string msg = "invalid parameters:";
    for (const auto& v : violations) msg += " " + v.to_string();
    throw InvalidParams(msg);
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    return parse_scenario(doc, std::filesystem::path(path).stem().string());
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

SampleBox parse_sample_box(const Json& doc) {
  SampleBox box;
  if (!doc.is_object()) throw ParseError("sample box must be a JSON object");
  auto range = [&](const char* key, double& lo, double& hi) {
    if (!doc.contains(key)) return;
    const Json& r = doc.at(key);
    if (!r.is_array() || r.size() != 2) throw ParseError(std::string(key) + ": expected [lo, hi]");
    lo = parse_number(r[0], key);
    hi = parse_number(r[1], key);
    if (!(lo > 0.0 && hi >= lo)) throw ParseError(std::string(key) + ": need 0 < lo <= hi");
  };
  range("omega", box.omega_lo, box.omega_hi);
  range("phi", box.phi_lo, box.phi_hi);
  range("mu", box.mu_lo, box.mu_hi);
  range("b", box.b_lo, box.b_hi);
  range("a", box.a_lo, box.a_hi);
  if (box.phi_hi > 1.0) throw ParseError("phi: upper bound exceeds 1");
  return box;
}

Json params_to_json(const ModelParams& p) {
  return Json{{"omega", p.omega}, {"phi", p.phi}, {"mu", vec_json(p.mu)}, {"b", vec_json(p.b)}, {"a", mat_json(p.a)}};
}

Json derived_to_json(const DerivedParams& d) {
  Json gammas = Json::array();
  Json betas = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json grow = Json::array(), brow = Json::array();
    for (int j = 0; j < 3; ++j) {
      grow.push_back(i == j ? Json(nullptr) : number(d.gamma[i][j]));
      brow.push_back(d.beta[i][j] ? number(*d.beta[i][j]) : Json(nullptr));
    }
    gammas.push_back(grow);
    betas.push_back(brow);
  }
  Json transverse = Json::array();
  for (const auto& t : d.transverse) transverse.push_back(t ? number(*t) : Json(nullptr));
  return Json{{"r", vec_json(d.r)},
              {"gammas", gammas},
              {"betas", betas},
              {"detA", number(d.det_a)},
              {"transverse", transverse},
              {"admissible", d.admissible},
              {"boundary_stable", d.boundary_stable}};
}

Json record_to_json(const FixedPointRecord& fp) {
  Json support = Json::array();
  for (int i = 0; i < 3; ++i)
    if (fp.support[i]) support.push_back(i + 1);
  Json eig = Json::array();
  for (const auto& l : fp.eigenvalues) eig.push_back(complex_json(l));
  return Json{{"name", fp.name()},
              {"kind", to_string(fp.kind)},
              {"support", support},
              {"coords", vec_json(fp.coords)},
              {"hat", vec_json(fp.hat)},
              {"eigenvalues", eig},
              {"det_jacobian", number(fp.det_jacobian)},
              {"residual", number(fp.residual)},
              {"stability", to_string(fp.stability)},
              {"index", fp.index ? Json(*fp.index) : Json(nullptr)}};
}

Json inventory_to_json(const FixedPointInventory& inv) {
  Json points = Json::array();
  for (const auto& fp : inv.all()) points.push_back(record_to_json(fp));
  Json absent = Json::array();
  for (int k = 0; k < 3; ++k)
    if (!inv.planar[k]) absent.push_back("v" + std::to_string(k + 1));
  return Json{{"fixed_points", points},
              {"absent_planar", absent},
              {"positive_search",
               {{"mesh", inv.positive.mesh},
                {"seeds", inv.positive.seeds},
                {"failures", inv.positive.failures},
                {"boundary_hits", inv.positive.boundary_hits},
                {"hat_rejections", inv.positive.hat_rejections}}},
              {"degenerate", inv.degenerate},
              {"notes", inv.notes}};
}

Json index_report_to_json(const IndexReport& rep) {
  return Json{{"lhs", rep.lhs},
              {"holds", rep.holds},
              {"refined", rep.refined},
              {"axial_sum", rep.axial_sum},
              {"planar_sum", rep.planar_sum},
              {"positive_sum", rep.positive_sum}};
}

Json signature_to_json(const BoundarySignature& sig) {
  Json gs = Json::object();
  for (int s = 0; s < 6; ++s)
    gs[std::to_string(kGammaPairs[s][0] + 1) + std::to_string(kGammaPairs[s][1] + 1)] = sig.pattern.gamma[s];
  Json axial = Json::array(), exists = Json::array(), boundary = Json::array(), transverse = Json::array();
  for (int i = 0; i < 3; ++i) {
    axial.push_back(to_string(sig.axial_type(i)));
    exists.push_back(sig.planar_exists(i));
    boundary.push_back(along_json(sig.planar_boundary(i)));
    transverse.push_back(along_json(sig.planar_transverse(i)));
  }
  return Json{{"gamma_signs", gs},
              {"axial_type", axial},
              {"planar_exists", exists},
              {"planar_boundary", boundary},
              {"planar_transverse", transverse}};
}

Json class_to_json(const ClassId& c) {
  return Json{{"class_id", c.id},
              {"permutation", {c.permutation[0] + 1, c.permutation[1] + 1, c.permutation[2] + 1}},
              {"det_a_sign", c.det_a_sign},
              {"expected_positive_fp", to_string(expected_positive_fp(c.id))}};
}

Json lg_signature_to_json(const LGSignature& s) {
  Json planar = Json::array(), in_plane = Json::array();
  for (int k = 0; k < 3; ++k) {
    planar.push_back(s.planar[k] ? vec_json(*s.planar[k]) : Json(nullptr));
    in_plane.push_back(along_json(s.in_plane[k]));
  }
  Json out{{"axial", Json::array({vec_json(s.axial[0]), vec_json(s.axial[1]), vec_json(s.axial[2])})},
           {"planar", planar},
           {"in_plane", in_plane},
           {"degenerate_flags", s.degenerate_flags}};
  out["signature"] = s.signature ? signature_to_json(*s.signature) : Json(nullptr);
  return out;
}

Json theta_to_json(const ThetaReport& t) {
  return Json{{"theta", number(t.theta)}, {"scale", number(t.scale)}, {"verdict", to_string(t.verdict)}};
}

Json limit_report_to_json(const LimitSetReport& rep) {
  const LimitEvidence& ev = rep.evidence;
  Json out{{"verdict", to_string(rep.verdict)},
           {"evidence",
            {{"tail_step", number(ev.tail_step)},
             {"fixed_point_distance", ev.fixed_point_distance ? number(*ev.fixed_point_distance) : Json(nullptr)},
             {"min_coord_first", number(ev.min_coord_first)},
             {"min_coord_last", number(ev.min_coord_last)},
             {"dominance_changes", ev.dominance_changes},
             {"dominant_count", ev.dominant_count},
             {"scale", number(ev.scale)}}},
           {"note", rep.note}};
  out["target"] = rep.target ? vec_json(*rep.target) : Json(nullptr);
  out["target_name"] = rep.target_name ? Json(*rep.target_name) : Json(nullptr);
  if (rep.curve) {
    const CurveStats& c = *rep.curve;
    out["curve_stats"] = Json{{"diameter", number(c.diameter)},
                              {"max_angular_gap", number(c.max_angular_gap)},
                              {"rotation_number_estimate", number(c.rotation_number)},
                              {"max_radial_spread", number(c.max_radial_spread)},
                              {"mean_radius", number(c.mean_radius)},
                              {"centroid", vec_json(c.centroid)},
                              {"normal", vec_json(c.normal)}};
  } else {
    out["curve_stats"] = nullptr;
  }
  return out;
}

}  // namespace seasonlv
