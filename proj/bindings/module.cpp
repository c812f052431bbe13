#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "helixspan/diagram.hpp"
#include "helixspan/limitlaw.hpp"
#include "helixspan/oracle.hpp"
#include "helixspan/series.hpp"
#include "helixspan/tableaux.hpp"

namespace py = pybind11;
using namespace helixspan;

namespace {

py::int_ to_py_int(const Int& x) {
  PyObject* obj = PyLong_FromString(x.str().c_str(), nullptr, 10);
  if (!obj) throw py::error_already_set();
  return py::reinterpret_steal<py::int_>(obj);
}

py::object to_py_fraction(const Rat& x) {
  static py::object fraction_type =
      py::module_::import("fractions").attr("Fraction");
  return fraction_type(py::str(x.str()));
}

py::list to_py_ints(const std::vector<Int>& xs) {
  py::list out;
  for (const Int& x : xs) out.append(to_py_int(x));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact 5'-3' distance distributions of RNA secondary structures";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  // ----- diagrams -----------------------------------------------------------
  py::class_<SecondaryStructure>(m, "SecondaryStructure")
      .def(py::init<int, std::vector<std::pair<int, int>>>(), py::arg("n"),
           py::arg("arcs"))
      .def_property_readonly("n", &SecondaryStructure::n)
      .def_property_readonly("arcs", &SecondaryStructure::arcs)
      .def("partner", &SecondaryStructure::partner, py::arg("v"))
      .def("__eq__",
           [](const SecondaryStructure& a, const SecondaryStructure& b) {
             return a == b;
           })
      .def("__str__", [](const SecondaryStructure& s) { return to_dot_bracket(s); })
      .def("__repr__", [](const SecondaryStructure& s) {
        return "SecondaryStructure('" + to_dot_bracket(s) + "')";
      });

  m.def("parse_dot_bracket", &parse_dot_bracket, py::arg("text"));
  m.def("to_dot_bracket", &to_dot_bracket, py::arg("structure"));
  m.def("bfs_distance", &bfs_distance, py::arg("structure"));
  m.def("min_stack_length", &min_stack_length, py::arg("structure"));
  m.def("is_r_canonical", &is_r_canonical, py::arg("structure"), py::arg("r"));
  m.def("isolated_count", &isolated_count, py::arg("structure"));

  // ----- tableaux -----------------------------------------------------------
  py::class_<Tableau>(m, "Tableau")
      .def(py::init<std::vector<int>>(), py::arg("shapes"))
      .def_property_readonly("n", &Tableau::n)
      .def_property_readonly("shapes", &Tableau::shapes)
      .def("__eq__", [](const Tableau& a, const Tableau& b) { return a == b; })
      .def("__str__", &Tableau::to_string)
      .def("__repr__",
           [](const Tableau& t) { return "Tableau([" + t.to_string() + "])"; });

  m.def("beta", &helixspan::beta, py::arg("structure"));
  m.def("beta_inv", &helixspan::beta_inv, py::arg("tableau"));
  m.def(
      "irreducible_blocks",
      [](const Tableau& t) {
        std::vector<std::pair<int, int>> out;
        for (const IndexInterval& block : irreducible_blocks(t))
          out.emplace_back(block.lo, block.hi);
        return out;
      },
      py::arg("tableau"));
  m.def(
      "census",
      [](const Tableau& t) {
        const EmptyShapeCensus c = census(t);
        py::dict out;
        out["star"] = c.count_star;
        out["hash"] = c.count_hash;
        out["plain"] = c.count_plain;
        return out;
      },
      py::arg("tableau"));
  m.def("tableau_distance", &tableau_distance, py::arg("tableau"));
  m.def("is_irreducible", &is_irreducible, py::arg("structure"));
  m.def("gamma", &helixspan::gamma, py::arg("structure"));
  m.def("gamma_star", &helixspan::gamma_star, py::arg("structure"));

  // ----- oracle -------------------------------------------------------------
  m.def("enumerate_dot_brackets", &enumerate_dot_brackets, py::arg("n"),
        py::arg("r") = 1, py::arg("cap") = kDefaultEnumerationCap);
  m.def(
      "histogram",
      [](int n, int r, int cap) {
        py::dict out;
        for (const auto& [d, count] : histogram(n, r, cap).counts)
          out[py::int_(d)] = to_py_int(count);
        return out;
      },
      py::arg("n"), py::arg("r") = 1, py::arg("cap") = kDefaultEnumerationCap);

  // ----- series -------------------------------------------------------------
  m.def(
      "secondary_coeffs",
      [](int N) { return to_py_ints(integer_coeffs(secondary_series(N))); },
      py::arg("N"), "Coefficients s_0..s_N of the counting series S(z)");
  m.def(
      "canonical_coeffs",
      [](int r, int N) {
        return to_py_ints(integer_coeffs(canonical_series(r, N)));
      },
      py::arg("r"), py::arg("N"),
      "Coefficients of S_r(z), counting r-canonical structures");

  py::class_<DistanceTable>(m, "DistanceTable")
      .def_property_readonly("r", &DistanceTable::r)
      .def_property_readonly("N", &DistanceTable::N)
      .def_property_readonly("d_max", &DistanceTable::d_max)
      .def(
          "w", [](const DistanceTable& t, int n, int d) { return to_py_int(t.w(n, d)); },
          py::arg("n"), py::arg("d"))
      .def(
          "row_total",
          [](const DistanceTable& t, int n) { return to_py_int(t.row_total(n)); },
          py::arg("n"))
      .def(
          "probability",
          [](const DistanceTable& t, int n, int d) {
            return to_py_fraction(Rat(t.w(n, d), t.row_total(n)));
          },
          py::arg("n"), py::arg("d"))
      .def(
          "probability_row",
          [](const DistanceTable& t, int n) {
            py::list out;
            for (const Rat& p : probability_row(t, n))
              out.append(to_py_fraction(p));
            return out;
          },
          py::arg("n"))
      .def("__eq__", [](const DistanceTable& a, const DistanceTable& b) {
        return a == b;
      });

  m.def("distance_table", &distance_table, py::arg("r"), py::arg("N"),
        py::arg("d_max") = -1);
  m.def("theorem1_table", &theorem1_table, py::arg("N"), py::arg("d_max") = -1);
  m.def("claim2_table", &claim2_table, py::arg("N"), py::arg("d_max") = -1);

  // ----- limit law ----------------------------------------------------------
  m.def(
      "q_exact",
      [](int D) {
        std::vector<std::string> out;
        const LimitLaw law = q_series(D);
        for (const QSqrt5& q : law.q) out.push_back(q.to_string());
        return out;
      },
      py::arg("D"), "q(0..D) as exact strings like '7/2-3/2*sqrt5'");
  m.def(
      "q_values",
      [](int D, unsigned bits) {
        std::vector<double> out;
        const LimitLaw law = q_series(D);
        for (const QSqrt5& q : law.q)
          out.push_back(static_cast<double>(q.value(bits)));
        return out;
      },
      py::arg("D"), py::arg("bits") = kDefaultPrecisionBits);
  m.def("rho", []() { return static_cast<double>(helixspan::rho().value()); },
        "Dominant singularity (3 - sqrt5)/2");
  m.def("rho_exact", []() { return helixspan::rho().to_string(); });
  m.def(
      "delta",
      [](unsigned bits) { return static_cast<double>(helixspan::delta(bits)); },
      py::arg("bits") = kDefaultPrecisionBits,
      "Decay base of the limit law tail");
}
