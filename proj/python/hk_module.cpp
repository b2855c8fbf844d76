#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hk/suite.hpp"

namespace py = pybind11;
using namespace hk;

namespace {

GradedAlgebra build_model(int b, int m, const std::vector<int>& qdiag) {
  ModelSpec spec{b, m, diag_form(qdiag)};
  return apolar_model(spec);
}

std::vector<int> model_dims(const GradedAlgebra& a) { return a.dims; }

py::dict result_dict(const CheckResult& r) {
  py::dict d;
  d["check"] = r.check;
  d["b"] = r.b;
  d["m"] = r.m;
  d["seed"] = r.seed;
  d["pass"] = r.pass;
  d["data"] = r.data;
  return d;
}

py::dict run_suite(const GradedAlgebra& a, const std::string& name, std::uint64_t seed) {
  for (const auto& e : suite_registry())
    if (e.name == name) return result_dict(e.run(a, seed));
  throw Error("SchemaError", "unknown suite: " + name);
}

std::vector<std::string> list_suites() {
  std::vector<std::string> names;
  for (const auto& e : suite_registry()) names.push_back(e.name);
  return names;
}

}  // namespace

PYBIND11_MODULE(_hk, mod) {
  mod.doc() = "exact verification toolkit for hyperkahler cohomology models";
  mod.attr("__version__") = kToolkitVersion;

  py::register_exception<Error>(mod, "HkError");

  py::class_<GradedAlgebra>(mod, "Model")
      .def_property_readonly("top_degree", [](const GradedAlgebra& a) { return a.top_degree; })
      .def_property_readonly("dims", &model_dims)
      .def("validate", [](const GradedAlgebra& a) { return validate_algebra(a).ok; })
      .def("save", [](const GradedAlgebra& a) { return save_model(a); });

  mod.def("build_model", &build_model, py::arg("b"), py::arg("m"), py::arg("qdiag"),
          "construct the graded Frobenius model for a diagonal reference form");
  mod.def("load_model", [](const std::string& text) { return load_model(text); });
  mod.def("structure_dim", [](const GradedAlgebra& a, std::uint64_t seed) {
    return structure_lie_algebra(a, {seed, 64, 3}).dim();
  });
  mod.def("so5_dim", [](const GradedAlgebra& a, std::uint64_t seed) {
    auto ts = sample_hk_triples(a, 1, seed);
    return so5_closure(a, ts[0]).dim();
  });
  mod.def("bb_matrix", [](const GradedAlgebra& a, std::uint64_t seed) {
    auto ts = sample_hk_triples(a, 1, seed);
    QMat bb = bb_extract(a, ts[0]);
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < bb.rows(); ++i) {
      std::vector<std::string> row;
      for (int j = 0; j < bb.cols(); ++j) row.push_back(to_string(bb(i, j)));
      rows.push_back(row);
    }
    return rows;
  });
  mod.def("run_suite", &run_suite, py::arg("model"), py::arg("name"), py::arg("seed") = 7);
  mod.def("list_suites", &list_suites);
  mod.def("twistor_connect", [](const std::vector<int>& qdiag, std::uint64_t seed, int pairs) {
    return result_dict(check_twistor_connect(diag_form(qdiag), seed, pairs));
  });
  mod.def("twistor_admissible",
          [](const std::vector<int>& qdiag, const std::vector<std::vector<long>>& q_gens,
             std::uint64_t seed, int instances) {
            return result_dict(
                check_twistor_admissible(diag_form(qdiag), q_gens, seed, instances, 20));
          });
}
