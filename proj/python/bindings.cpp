#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "cluster/errors.hpp"
#include "cluster/json_io.hpp"
#include "cluster/scatter2.hpp"
#include "cluster/theta.hpp"
#include "cluster/verify.hpp"

namespace py = pybind11;
using namespace cluster;

namespace {

using Rows = std::vector<std::vector<long long>>;

std::string theta_json(const ThetaFunction& t) {
  Json j;
  j["label"] = t.label.c;
  j["poly"] = poly_to_json(t.poly);
  j["text"] = t.poly.to_string();
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_clusteraff, m) {
  m.doc() = "Exact computations for cluster algebras of acyclic affine type";

  static py::exception<Error> error_type(m, "ClusterError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type, e.what());
    }
  });

  m.def(
      "mutate_matrix", [](const Rows& rows, int k) { return mutate_matrix(IntMatrix::from_rows(rows), k).to_rows(); },
      py::arg("matrix"), py::arg("k"));
  m.def(
      "mutate_matrix_word",
      [](const Rows& rows, const std::vector<int>& word) {
        return mutate_matrix_word(IntMatrix::from_rows(rows), word).to_rows();
      },
      py::arg("matrix"), py::arg("word"));
  m.def(
      "symmetrizer", [](const Rows& rows) { return symmetrizer_inverse(IntMatrix::from_rows(rows)); },
      py::arg("matrix"));
  m.def(
      "cluster_variable_json",
      [](const Rows& rows, const std::vector<long long>& g, int depth) {
        return poly_to_json(find_cluster_variable_by_gvector(IntMatrix::from_rows(rows), WeightVec(g), depth)).dump();
      },
      py::arg("matrix"), py::arg("g"), py::arg("depth") = 8);
  m.def(
      "scatter2_json",
      [](const Rows& rows, int order) {
        return walls_to_json(complete_scattering_rank2(IntMatrix::from_rows(rows), order)).dump();
      },
      py::arg("matrix"), py::arg("order") = 8);
  m.def(
      "theta2_json",
      [](const Rows& rows, const std::vector<long long>& lambda, int order) {
        ScatteringDiagram2 d = complete_scattering_rank2(IntMatrix::from_rows(rows), order);
        return poly_to_json(theta_via_broken_lines(d, WeightVec(lambda), order)).dump();
      },
      py::arg("matrix"), py::arg("lam"), py::arg("order") = 8);
  m.def("identity_names", &identity_names);

  py::class_<ThetaEngine>(m, "ThetaEngine")
      .def(py::init([](const Rows& rows, int depth, long long height_bound) {
             return new ThetaEngine(IntMatrix::from_rows(rows), depth, height_bound);
           }),
           py::arg("matrix"), py::arg("depth") = 8, py::arg("height_bound") = -1)
      .def_property_readonly("n", &ThetaEngine::n)
      .def_property_readonly("delta", [](const ThetaEngine& e) { return e.data().delta.c; })
      .def_property_readonly("tubes",
                             [](const ThetaEngine& e) {
                               std::vector<Rows> out;
                               for (const auto& t : e.tubes()) {
                                 Rows orbit;
                                 for (const auto& r : t.orbit) orbit.push_back(r.c);
                                 out.push_back(orbit);
                               }
                               return out;
                             })
      .def("nu_c", [](const ThetaEngine& e, const std::vector<long long>& phi) { return nu_c(e.data(), RootVec(phi)).c; })
      .def("theta_delta_json", [](ThetaEngine& e) { return theta_json(e.theta_delta()); })
      .def("theta_k_delta_json", [](ThetaEngine& e, int k) { return theta_json(e.theta_k_delta(k)); })
      .def("theta_label_json",
           [](ThetaEngine& e, const std::vector<long long>& lambda) { return theta_json(e.theta_label(WeightVec(lambda))); })
      .def("tube_info_json", [](ThetaEngine& e) { return tube_info_json(e).dump(); })
      .def(
          "verify",
          [](ThetaEngine& e, const std::string& identity) {
            CheckResult r = run_identity(e, identity, VerifyOptions{});
            return py::make_tuple(r.ok(), r.checked, r.failures);
          },
          py::arg("identity"))
      .def(
          "report_json",
          [](ThetaEngine& e, const std::string& name) { return build_report(e, name, VerifyOptions{}).dump(); },
          py::arg("name") = "");
}
