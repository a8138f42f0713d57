#include "seasonlv/commands.hpp"

#include <random>

#include "seasonlv/parallel.hpp"

namespace seasonlv {
namespace {

PositiveSearchOptions search_options(std::uint64_t seed) {
  PositiveSearchOptions opt;
  opt.seed = seed;
  return opt;
}

Json status_json(const char* status, const std::string& message) {
  return Json{{"status", status}, {"message", message}};
}

}  // namespace

CommandOutput classify_report(const ModelParams& params, bool with_oracle) {
  CommandOutput out;
  const DerivedParams d = derive(params);
  const SignatureResult sr = signature(params);
  const Json dj = derived_to_json(d);
  Json& rep = out.report;
  rep["class_id"] = nullptr;
  rep["permutation"] = nullptr;
  rep["signature"] = nullptr;
  rep["gammas"] = dj["gammas"];
  rep["betas"] = dj["betas"];
  rep["detA"] = dj["detA"];
  rep["r"] = dj["r"];
  rep["transverse"] = dj["transverse"];
  rep["degenerate_flags"] = sr.degenerate_flags;
  if (sr.signature) {
    const ClassId c = canonical_class(*sr.signature, d.det_a_sign());
    rep["signature"] = signature_to_json(*sr.signature);
    rep.update(class_to_json(c));
    if (c.det_a_sign == 0) rep["degenerate_flags"].push_back("detA");
    if (c.id == 27) rep["theta"] = theta_to_json(heteroclinic_theta(params));
  }
  if (with_oracle) {
    const LGSignature lg = lg_signature(LGMap::from(params));
    Json oj = lg_signature_to_json(lg);
    oj["agrees"] = sr.signature.has_value() && lg.signature.has_value() && *sr.signature == *lg.signature;
    rep["oracle"] = oj;
  }
  if (!rep["degenerate_flags"].empty()) out.status = kExitDegenerate;
  return out;
}

CommandOutput fixed_points_report(const ModelParams& params, const IntegratorConfig& config, std::uint64_t seed) {
  CommandOutput out;
  const DerivedParams d = derive(params);
  if (!d.admissible) {
    out.report = status_json("inadmissible", "some r_i <= 0; axial and interior fixed points are not defined");
    out.report["r"] = derived_to_json(d)["r"];
    out.status = kExitDegenerate;
    return out;
  }
  try {
    const IndexReport idx = verify_index_formula(params, config, search_options(seed));
    out.report = inventory_to_json(idx.inventory);
    out.report["index_formula"] = index_report_to_json(idx);
    out.report["index_formula"]["status"] = "ok";
  } catch (const Degenerate& e) {
    out.report = inventory_to_json(fixed_point_inventory(params, config, search_options(seed)));
    out.report["index_formula"] = status_json("degenerate", e.what());
  }
  return out;
}

CommandOutput verify_index_report(const ModelParams& params, const IntegratorConfig& config, std::uint64_t seed) {
  CommandOutput out;
  try {
    const IndexReport idx = verify_index_formula(params, config, search_options(seed));
    out.report = index_report_to_json(idx);
    out.report["status"] = "ok";
    out.report["fixed_points"] = inventory_to_json(idx.inventory)["fixed_points"];
  } catch (const Inadmissible& e) {
    out.report = status_json("inadmissible", e.what());
    out.status = kExitDegenerate;
  } catch (const Degenerate& e) {
    out.report = status_json("degenerate", e.what());
    out.status = kExitDegenerate;
  }
  return out;
}

std::vector<FixedPointRecord> known_fixed_points(const ModelParams& params, const IntegratorConfig& config,
                                                 std::uint64_t seed) {
  const DerivedParams d = derive(params);
  if (d.admissible) return fixed_point_inventory(params, config, search_options(seed)).all();
  std::vector<FixedPointRecord> fps{trivial_fixed_point(params, config)};
  for (int i = 0; i < 3; ++i)
    if (d.r[i] > 0.0) fps.push_back(axial_fixed_point(params, i, config));
  return fps;
}

OrbitOutput orbit_report(const ModelParams& params, const Vec3& x0, std::size_t n, std::size_t transient,
                         const IntegratorConfig& config, std::uint64_t seed) {
  OrbitOutput out;
  out.trace = iterate(params, x0, n, transient, config);
  AnalysisOptions opt;
  opt.min_points = std::min<std::size_t>(opt.min_points, n);
  out.limit = analyze_limit_set(out.trace, known_fixed_points(params, config, seed), opt);
  out.report = limit_report_to_json(out.limit);
  out.report["x0"] = Json::array({x0[0], x0[1], x0[2]});
  out.report["n"] = n;
  out.report["transient"] = transient;
  return out;
}

SimplexOutput simplex_report(const ModelParams& params, int resolution, int iterations,
                             const IntegratorConfig& config, unsigned jobs) {
  SimplexOutput out;
  out.mesh = simplex_mesh(params, resolution, iterations, config, jobs);
  std::vector<Vec3> cloud;
  double scale = 0.0;
  for (const auto& m : out.mesh) {
    cloud.push_back(m.x);
    for (double v : m.x) scale = std::max(scale, v);
  }
  out.report = Json{{"resolution", resolution},
                    {"iterations", iterations},
                    {"points", out.mesh.size()},
                    {"scale", scale},
                    {"ordered_pairs", count_ordered_pairs(cloud, 1e-10 * scale, 1e-6 * scale)}};
  return out;
}

SweepSpec parse_sweep_spec(const Json& doc) {
  SweepSpec spec;
  spec.box = parse_sample_box(doc);
  if (doc.contains("samples")) {
    const double n = parse_number(doc.at("samples"), "samples");
    if (!(n >= 1.0)) throw ParseError("samples: need at least 1");
    spec.samples = static_cast<std::size_t>(n);
  }
  return spec;
}

SweepOutput sweep_report(const SweepSpec& spec, const IntegratorConfig& config, std::uint64_t seed, unsigned jobs) {
  std::mt19937_64 rng(seed);
  std::vector<ModelParams> draws;
  for (std::size_t s = 0; s < spec.samples; ++s) draws.push_back(sample_admissible(rng, spec.box));

  std::vector<Json> rows(draws.size());
  parallel_for(draws.size(), jobs, [&](std::size_t s) {
    const ModelParams& p = draws[s];
    Json row{{"sample", s}, {"params", params_to_json(p)}};
    const CommandOutput cls = classify_report(p, false);
    row["class_id"] = cls.report["class_id"];
    row["degenerate_flags"] = cls.report["degenerate_flags"];
    row["det_a_sign"] = cls.report.contains("det_a_sign") ? cls.report["det_a_sign"] : Json(nullptr);
    try {
      const IndexReport idx = verify_index_formula(p, config, search_options(seed + s + 1));
      row["index_status"] = "ok";
      row["lhs"] = idx.lhs;
      row["holds"] = idx.holds;
      row["positive_count"] = idx.inventory.positive.roots.size();
    } catch (const Degenerate& e) {
      row["index_status"] = "degenerate";
      row["note"] = e.what();
    }
    rows[s] = std::move(row);
  });

  SweepOutput out;
  out.samples = Json::array();
  Json freq = Json::object();
  std::size_t classified = 0, evaluated = 0, holds = 0, existence_violations = 0, det_violations = 0;
  for (auto& row : rows) {
    if (!row["class_id"].is_null()) {
      ++classified;
      const int id = row["class_id"].get<int>();
      const std::string key = std::to_string(id);
      freq[key] = freq.value(key, 0) + 1;
      const int det = row["det_a_sign"].get<int>();
      if ((id >= 19 && id <= 25 && det >= 0) || (id >= 26 && det <= 0)) ++det_violations;
      if (row["index_status"] == "ok") {
        const bool expect = expected_positive_fp(id) == PositiveExpectation::AtLeastOne;
        if (expect != (row["positive_count"].get<std::size_t>() > 0)) ++existence_violations;
      }
    }
    if (row["index_status"] == "ok") {
      ++evaluated;
      if (row["holds"].get<bool>()) ++holds;
    }
    out.samples.push_back(std::move(row));
  }
  out.summary = Json{{"samples", spec.samples},
                     {"seed", seed},
                     {"classified", classified},
                     {"class_frequencies", freq},
                     {"distinct_classes", freq.size()},
                     {"index_evaluated", evaluated},
                     {"index_holds", holds},
                     {"index_pass_rate", evaluated ? static_cast<double>(holds) / static_cast<double>(evaluated) : 0.0},
                     {"positive_existence_violations", existence_violations},
                     {"det_sign_violations", det_violations}};
  return out;
}

}  // namespace seasonlv
