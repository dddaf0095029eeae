#include "skewcert/atlas.hpp"
#include "skewcert/cremona.hpp"
#include "skewcert/freecert.hpp"
#include "skewcert/parser.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <json.hpp>

namespace py = pybind11;
using nlohmann::json;
using namespace skewcert;

namespace {

// Ad hoc fixture around a lattice or map spec, so any atlas operation can run on it.
std::string evaluate(const std::string& op, const std::string& args, const std::string& lattice,
                     const std::string& map) {
  json fx = {{"schema", kFixtureSchema}, {"name", "adhoc"}, {"kind", "combined"}, {"expectations", json::array()}};
  if (!lattice.empty()) fx["lattice"] = json::parse(lattice);
  if (!map.empty()) fx["map"] = json::parse(map);
  Fixture f = Fixture::from_json(fx);
  return evaluate_op(f, op, args.empty() ? json::object() : json::parse(args)).dump();
}

std::string certify(const std::string& map, const std::string& a, const std::string& b, unsigned step,
                    unsigned depth) {
  FieldEndo sigma = FieldEndo::from_json(json::parse(map));
  RatFunc fa = parse_ratfunc(a, sigma.vars()), fb = parse_ratfunc(b, sigma.vars());
  py::gil_scoped_release release;
  auto c = certify_free(sigma, fa, fb, step, depth);
  json j = c.to_json();
  if (!c.free) j["witness_expands_to_zero"] = expand_witness(c.witness, fa, fb, sigma, step).is_zero();
  return j.dump();
}

std::string degrees(const std::string& map, unsigned n, int max_degree) {
  PlaneMap P = PlaneMap::from_json(json::parse(map));
  CremonaOptions o;
  o.max_degree = max_degree;
  py::gil_scoped_release release;
  return degree_sequence(P, n, o).to_json().dump();
}

std::string run(const std::filesystem::path& dir, const std::string& name) {
  py::gil_scoped_release release;
  return run_fixture(dir, name).to_json().dump();
}

std::string list(const std::filesystem::path& dir) {
  json out = json::array();
  for (const auto& s : list_fixtures(dir)) out.push_back({{"name", s.name}, {"kind", s.kind}, {"summary", s.summary}});
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "skewcert core bindings; values cross as JSON text";

  py::register_exception<Error>(m, "SkewcertError", PyExc_ValueError);

  m.def("evaluate", &evaluate, py::arg("op"), py::arg("args") = "", py::arg("lattice") = "",
        py::arg("map") = "");
  m.def("certify", &certify, py::arg("map"), py::arg("a"), py::arg("b"), py::arg("step") = 1,
        py::arg("depth") = 3);
  m.def("degree_sequence", &degrees, py::arg("map"), py::arg("n") = 8, py::arg("max_degree") = 512);
  m.def("run_fixture", &run, py::arg("dir"), py::arg("name"));
  m.def("list_fixtures", &list, py::arg("dir"));
  m.def("errata_markdown", [](const std::filesystem::path& dir) { return errata_markdown(dir); }, py::arg("dir"));
  m.def("default_fixture_dir", []() { return fixture_dir(); });
  m.attr("fixture_schema") = kFixtureSchema;
}
