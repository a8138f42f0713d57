#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "seasonlv/commands.hpp"

namespace py = pybind11;
using namespace seasonlv;

namespace {

py::object to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null: return py::none();
    case Json::value_t::boolean: return py::bool_(j.get<bool>());
    case Json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case Json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case Json::value_t::number_float: return py::float_(j.get<double>());
    case Json::value_t::string: return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(to_py(v));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
      return out;
    }
    default: return py::none();
  }
}

Scenario scenario_from(const std::string& text) { return parse_scenario(Json::parse(text)); }

IntegratorConfig config_from(const Scenario& sc, double rel_tol, double abs_tol) {
  IntegratorConfig c = sc.integrator;
  if (rel_tol > 0.0) c.rel_tol = rel_tol;
  if (abs_tol > 0.0) c.abs_tol = abs_tol;
  c.validate();
  return c;
}

py::object with_status(const CommandOutput& out) {
  Json rep = out.report;
  rep["exit_status"] = out.status;
  return to_py(rep);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Seasonal-succession Lotka-Volterra engine";

  py::register_exception<Error>(m, "SeasonLVError");

  m.def("class_count", &enumerate_class_count, "Realizable boundary patterns modulo relabeling");

  m.def("load_scenario", [](const std::string& path) {
    const Scenario sc = load_scenario(path);
    Json doc = params_to_json(sc.params);
    doc["name"] = sc.name;
    if (sc.x0) doc["x0"] = Json::array({(*sc.x0)[0], (*sc.x0)[1], (*sc.x0)[2]});
    return to_py(doc);
  });

  m.def("derive", [](const std::string& params) { return to_py(derived_to_json(derive(scenario_from(params).params))); });

  m.def(
      "classify",
      [](const std::string& params, bool oracle) { return with_status(classify_report(scenario_from(params).params, oracle)); },
      py::arg("params"), py::arg("oracle") = false);

  m.def(
      "fixed_points",
      [](const std::string& params, std::uint64_t seed, double rel_tol, double abs_tol) {
        const Scenario sc = scenario_from(params);
        return with_status(fixed_points_report(sc.params, config_from(sc, rel_tol, abs_tol), seed));
      },
      py::arg("params"), py::arg("seed") = 0, py::arg("rel_tol") = 0.0, py::arg("abs_tol") = 0.0);

  m.def(
      "verify_index",
      [](const std::string& params, std::uint64_t seed, double rel_tol, double abs_tol) {
        const Scenario sc = scenario_from(params);
        return with_status(verify_index_report(sc.params, config_from(sc, rel_tol, abs_tol), seed));
      },
      py::arg("params"), py::arg("seed") = 0, py::arg("rel_tol") = 0.0, py::arg("abs_tol") = 0.0);

  m.def(
      "orbit",
      [](const std::string& params, const Vec3& x0, std::size_t n, std::size_t transient, std::uint64_t seed) {
        const Scenario sc = scenario_from(params);
        const OrbitOutput out = orbit_report(sc.params, StateVec(x0).values(), n, transient, sc.integrator, seed);
        py::dict rep = to_py(out.report);
        rep["points"] = out.trace.points;
        return rep;
      },
      py::arg("params"), py::arg("x0"), py::arg("n") = kDefaultWindow, py::arg("transient") = kDefaultTransient,
      py::arg("seed") = 0);
}
