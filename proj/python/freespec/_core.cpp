#include "freespec/dilation.hpp"
#include "freespec/examples.hpp"
#include "freespec/extreme.hpp"
#include "freespec/oracles.hpp"
#include "freespec/pencil.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace freespec;

namespace {

Field parse_field(const std::string& f) { return field_from_string(f); }

MatrixTuple make_tuple(const std::vector<CMatrix>& entries, const std::string& field) {
  return MatrixTuple(entries, parse_field(field));
}

py::dict report_dict(const ExtremeReport& r) {
  py::dict d;
  d["classical"] = r.classical;
  d["matrix"] = r.matrix;
  d["free"] = r.free;
  d["irreducible"] = r.irreducible;
  d["interior"] = r.interior;
  d["kernel_dim"] = r.kernel_dim;
  d["dilation_dim"] = r.dilation_dim;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Free spectrahedra: membership, extreme points and dilation decompositions.";

  py::register_exception<Error>(m, "FreespecError");

  py::class_<MatrixTuple>(m, "MatrixTuple")
      .def(py::init(&make_tuple), py::arg("entries"), py::arg("field") = "real")
      .def_property_readonly("g", &MatrixTuple::g)
      .def_property_readonly("n", &MatrixTuple::n)
      .def_property_readonly("field", [](const MatrixTuple& x) { return std::string(to_string(x.field())); })
      .def_property_readonly("entries", &MatrixTuple::entries)
      .def("compress", &MatrixTuple::compress)
      .def("norm", &MatrixTuple::norm)
      .def("__len__", &MatrixTuple::g)
      .def("__getitem__", [](const MatrixTuple& x, int j) {
        if (j < 0 || j >= x.g()) throw py::index_error();
        return x[j];
      })
      .def("__repr__", [](const MatrixTuple& x) {
        return "MatrixTuple(g=" + std::to_string(x.g()) + ", n=" + std::to_string(x.n()) + ", field=" +
               to_string(x.field()) + ")";
      });

  py::class_<LinearPencil>(m, "LinearPencil")
      .def(py::init<MatrixTuple>(), py::arg("coefficients"))
      .def(py::init([](const std::vector<CMatrix>& a, const std::string& field) {
             return LinearPencil(make_tuple(a, field));
           }),
           py::arg("coefficients"), py::arg("field") = "real")
      .def_property_readonly("m", &LinearPencil::m)
      .def_property_readonly("g", &LinearPencil::g)
      .def_property_readonly("coefficients", &LinearPencil::coefficients);

  m.def("direct_sum", &direct_sum);
  m.def("distance", &distance);
  m.def("unitarily_equivalent", [](const MatrixTuple& x, const MatrixTuple& y) { return unitarily_equivalent(x, y); });
  m.def("irreducible", [](const MatrixTuple& x) { return irreducible(x).irreducible; });

  m.def("evaluate_L", &evaluate_L);
  m.def("membership", [](const LinearPencil& a, const MatrixTuple& x) {
    const MembershipVerdict v = membership(a, x);
    py::dict d;
    d["status"] = to_string(v.status);
    d["min_eigenvalue"] = v.min_eigenvalue;
    d["kernel_dim"] = v.kernel_dim;
    return d;
  });
  m.def("mconv_membership", [](const MatrixTuple& a, const MatrixTuple& y) { return mconv_membership(a, y); });
  m.def("sample_point",
        [](const LinearPencil& a, int n, bool boundary, std::uint64_t seed) {
          linalg::Rng rng(seed);
          return sample_point(a, n, a.field(), boundary ? SampleKind::kBoundary : SampleKind::kInterior, rng);
        },
        py::arg("pencil"), py::arg("n"), py::arg("boundary") = false, py::arg("seed") = 0);

  m.def("classical_extreme", [](const LinearPencil& a, const MatrixTuple& x) { return classical_extreme_test(a, x); });
  m.def("matrix_extreme", [](const LinearPencil& a, const MatrixTuple& x) { return matrix_extreme_test(a, x); });
  m.def("free_extreme", [](const LinearPencil& a, const MatrixTuple& x) { return free_extreme_test(a, x); });
  m.def("dilation_dim", [](const LinearPencil& a, const MatrixTuple& x) { return dilation_subspace(a, x).dim; });
  m.def("classify", [](const LinearPencil& a, const MatrixTuple& x) { return report_dict(classify(a, x)); });

  m.def("decompose",
        [](const LinearPencil& a, const MatrixTuple& x, std::uint64_t seed) {
          const Decomposition dec = decompose_to_free_extremes(a, x, {}, {seed, false});
          py::dict d;
          d["summands"] = dec.summands;
          d["gammas"] = dec.gammas;
          d["total_size"] = dec.total_size;
          d["steps"] = dec.steps;
          d["residual"] = dec.residual;
          d["certified"] = dec.certified;
          return d;
        },
        py::arg("pencil"), py::arg("x"), py::arg("seed") = 0);

  m.def("example", [](const std::string& name) { return examples::by_name(name).pencil; });
  m.def("examples", &examples::registry);
  m.def("pauli_pair", &examples::pauli_pair);
  m.def("halmos_dilation", [](const MatrixTuple& x) { return examples::halmos_dilation(x); });

  m.def("refute_matrix_extreme",
        [](const LinearPencil& a, const MatrixTuple& x, int trials, std::uint64_t seed) {
          return oracles::refute_matrix_extreme(a, x, trials, seed).found;
        },
        py::arg("pencil"), py::arg("x"), py::arg("trials") = 200, py::arg("seed") = 0);
}
