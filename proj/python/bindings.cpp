#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gweave/error.hpp"
#include "gweave/gframe.hpp"
#include "gweave/induced.hpp"
#include "gweave/papersuite.hpp"
#include "gweave/weaving.hpp"

namespace py = pybind11;
using namespace gweave;

namespace {

py::dict bounds_dict(const BoundsReport& b) {
  py::dict d;
  d["lower"] = b.lower;
  d["upper"] = b.upper;
  d["is_frame"] = b.is_frame;
  d["witness_low"] = b.witness_low;
  d["witness_high"] = b.witness_high;
  return d;
}

py::dict universal_dict(const UniversalReport& u) {
  py::dict d;
  d["lower"] = u.lower;
  d["upper"] = u.upper;
  d["argmin_sigma"] = u.argmin_sigma.indices();
  d["argmax_sigma"] = u.argmax_sigma.indices();
  d["woven"] = u.woven;
  d["threshold"] = u.threshold;
  d["method"] = to_string(u.method);
  d["subsets_examined"] = u.subsets_examined;
  return d;
}

py::dict record_dict(const VerificationRecord& r) {
  py::dict d;
  d["name"] = r.name;
  d["passed"] = r.passed;
  d["detail"] = r.detail;
  py::dict values;
  for (const auto& [k, v] : r.values) values[py::str(k)] = v;
  d["values"] = values;
  return d;
}

py::dict example_dict(const papersuite::ExampleInstance& ex) {
  py::dict d;
  d["name"] = ex.name;
  py::dict params;
  for (const auto& [k, v] : ex.parameters) params[py::str(k)] = v;
  d["parameters"] = params;
  d["f"] = ex.f;
  d["g"] = ex.g ? py::cast(*ex.g) : py::none();
  py::dict expected;
  for (const auto& e : ex.expected) expected[py::str(e.key)] = e.value;
  d["expected"] = expected;
  return d;
}

}  // namespace

PYBIND11_MODULE(_gweave, m) {
  m.doc() = "g-frames and their weavings";

  static py::exception<Error> error_type(m, "GWeaveError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = py::reinterpret_borrow<py::object>(error_type.ptr())(py::str(e.what()));
      err.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error_type.ptr(), err.ptr());
    }
  });

  py::class_<GFrame>(m, "GFrame")
      .def(py::init([](Eigen::Index d, const std::vector<Matrix>& blocks, const std::vector<std::string>& labels) {
             return GFrame(d, blocks, labels);
           }),
           py::arg("domain_dim"), py::arg("blocks"), py::arg("labels") = std::vector<std::string>{})
      .def_property_readonly("domain_dim", &GFrame::domain_dim)
      .def_property_readonly("blocks", &GFrame::blocks)
      .def_property_readonly("labels", &GFrame::labels)
      .def_property_readonly("is_real", &GFrame::is_real)
      .def("row_counts", &GFrame::row_counts)
      .def("__len__", &GFrame::size)
      .def("__repr__", [](const GFrame& f) {
        return "<GFrame d=" + std::to_string(f.domain_dim()) + " N=" + std::to_string(f.size()) + ">";
      });

  m.def("frame_operator", &frame_operator_matrix, py::arg("frame"));
  m.def(
      "bounds", [](const GFrame& f, double tol) { return bounds_dict(optimal_bounds(f, tol)); }, py::arg("frame"),
      py::arg("tol") = kDefaultTolerance);
  m.def(
      "classify",
      [](const GFrame& f, double tol) {
        const auto c = classify(f, tol);
        py::dict d;
        d["frame"] = c.is_g_frame;
        d["exact"] = c.is_g_exact;
        d["riesz"] = c.is_g_riesz;
        d["onb"] = c.is_g_onb;
        d["exactness_witness"] = c.exactness_witness ? py::cast(*c.exactness_witness + 1) : py::none();
        d["detail"] = c.detail;
        return d;
      },
      py::arg("frame"), py::arg("tol") = kDefaultTolerance);
  m.def("canonical_dual", &canonical_dual, py::arg("frame"));
  m.def("transform_sqrt_inv", &transform_sqrt_inv, py::arg("frame"));
  m.def("compose_right", &compose_right, py::arg("frame"), py::arg("u"));
  m.def(
      "weave",
      [](const GFrame& f, const GFrame& g, const std::vector<std::size_t>& sigma) {
        return weave(f, g, WeavingSelection::from_indices(f.size(), sigma));
      },
      py::arg("f"), py::arg("g"), py::arg("sigma"));
  m.def(
      "universal_bounds",
      [](const GFrame& f, const GFrame& g, std::optional<std::uint64_t> search, std::uint64_t seed, std::size_t cap,
         double tol) {
        return universal_dict(search ? universal_bounds_search(f, g, *search, seed, tol)
                                     : universal_bounds_exhaustive(f, g, tol, cap));
      },
      py::arg("f"), py::arg("g"), py::arg("search") = py::none(), py::arg("seed") = 0,
      py::arg("cap") = kDefaultExhaustiveCap, py::arg("tol") = kDefaultTolerance);
  m.def(
      "woven",
      [](const GFrame& f, const GFrame& g, std::optional<std::uint64_t> search, std::uint64_t seed, std::size_t cap,
         double tol) {
        WovenStrategy strategy;
        strategy.cap = cap;
        strategy.seed = seed;
        if (search) {
          strategy.method = SearchMethod::Search;
          strategy.budget = *search;
        }
        const auto v = is_woven(f, g, tol, strategy);
        py::dict d;
        d["woven"] = v.woven;
        d["conclusive"] = v.conclusive;
        d["report"] = universal_dict(v.report);
        d["certificate"] = v.certificate ? py::cast(v.certificate->indices()) : py::none();
        d["certificate_spectrum"] = v.certificate_spectrum;
        d["certificate_direction"] = v.certificate_direction;
        return d;
      },
      py::arg("f"), py::arg("g"), py::arg("search") = py::none(), py::arg("seed") = 0,
      py::arg("cap") = kDefaultExhaustiveCap, py::arg("tol") = kDefaultTolerance);

  m.def(
      "check_dual_weaving", [](const GFrame& f) { return record_dict(check_dual_weaving(f)); }, py::arg("frame"));
  m.def(
      "check_sqrt_inv_weaving",
      [](const GFrame& f, const GFrame& g) { return record_dict(check_sqrt_inv_weaving(f, g)); }, py::arg("f"),
      py::arg("g"));
  m.def(
      "check_induced_operator_identity",
      [](const GFrame& f) { return record_dict(check_induced_operator_identity(f)); }, py::arg("frame"));

  py::module_ ex = m.def_submodule("examples", "worked example families");
  ex.def(
      "projection",
      [](Eigen::Index d, bool single_line) {
        return papersuite::build_projection_gframe(
            d, single_line ? papersuite::ProjectionCodomain::SingleLine : papersuite::ProjectionCodomain::ThreeLine);
      },
      py::arg("d"), py::arg("single_line") = false);
  ex.def(
      "shifted_cover", [](std::size_t n) { return example_dict(papersuite::build_shifted_cover_pair(n)); },
      py::arg("n"));
  ex.def(
      "overlapping_cover", [](std::size_t n) { return example_dict(papersuite::build_overlapping_cover_pair(n)); },
      py::arg("n"));
  ex.def(
      "split_weight", [](std::size_t n) { return example_dict(papersuite::build_split_weight_pair(n)); },
      py::arg("n"));
  ex.def(
      "duplicated_rows", [](std::size_t k) { return example_dict(papersuite::build_duplicated_rows_pair(k)); },
      py::arg("k"));
  ex.def(
      "four_channel", [](std::size_t n) { return example_dict(papersuite::build_four_channel_pair(n)); },
      py::arg("n"));
  ex.def("random_unitary", &papersuite::random_unitary, py::arg("d"), py::arg("seed"));

  m.def(
      "run_suite",
      [](std::size_t dim_scale, std::size_t cap, std::uint64_t search_budget, std::uint64_t seed, double tol) {
        papersuite::SuiteConfig config;
        config.dim_scale = dim_scale;
        config.cap = cap;
        config.search_budget = search_budget;
        config.seed = seed;
        config.tol = tol;
        const auto report = papersuite::run_suite(config);
        py::list records;
        for (const auto& r : report.records) {
          py::dict d;
          d["name"] = r.name;
          d["status"] = papersuite::to_string(r.status);
          d["method"] = r.method;
          py::dict computed;
          for (const auto& [k, v] : r.computed) computed[py::str(k)] = v;
          d["computed"] = computed;
          d["detail"] = r.detail;
          records.append(d);
        }
        return records;
      },
      py::arg("dim_scale") = 0, py::arg("cap") = kDefaultExhaustiveCap, py::arg("search_budget") = 64,
      py::arg("seed") = 0, py::arg("tol") = kDefaultTolerance);
}
