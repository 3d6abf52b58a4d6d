#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symdyn/symdyn.hpp"

namespace py = pybind11;
using namespace symdyn;

namespace {

py::object big(const BigInt& v) { return py::module_::import("builtins").attr("int")(v.str()); }

py::dict arc_dict(const Domain& d, const Arc& a) {
  py::dict out;
  out["start"] = d.normalize(a.start);
  out["length"] = a.length;
  return out;
}

py::dict verification_dict(const VerificationReport& r) {
  py::dict out;
  out["circle"] = r.circle;
  out["covering"] = r.covering;
  out["equality"] = r.equality;
  out["strict"] = r.strict;
  out["min_gap"] = r.min_gap;
  out["partition_covering"] = r.partition_covering;
  out["boundary_invariant"] = r.boundary_invariant;
  out["expansion_factor"] = r.expansion_factor ? py::cast(*r.expansion_factor) : py::none();
  out["min_abs_slope"] = r.min_abs_slope;
  out["tol"] = r.tol;
  out["notes"] = r.notes;
  return out;
}

py::dict singleton_dict(const SingletonEvidence& e) {
  py::dict out;
  out["depth"] = e.depth;
  out["max_diameter"] = e.max_diameter;
  out["diameter_table"] = e.diameter_table;
  out["decreasing"] = e.decreasing;
  out["widest_word"] = e.widest_word;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Symbolic dynamics of coupled-expanding interval and circle maps";
  m.attr("__version__") = SYMDYN_VERSION;
  m.attr("PI") = kPi;

  static py::exception<Error> exc(m, "SymdynError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyObject* type = exc.ptr();
      py::object inst = py::reinterpret_borrow<py::object>(type)(e.what());
      inst.attr("code") = to_string(e.code());
      PyErr_SetObject(type, inst.ptr());
    }
  });

  py::class_<TransitionMatrix>(m, "TransitionMatrix")
      .def(py::init(&TransitionMatrix::from_rows), py::arg("rows"))
      .def_property_readonly("size", &TransitionMatrix::size)
      .def("to_rows", &TransitionMatrix::to_rows)
      .def("__getitem__", [](const TransitionMatrix& a, std::pair<std::size_t, std::size_t> ij) {
        if (ij.first >= a.size() || ij.second >= a.size()) throw py::index_error();
        return static_cast<int>(a(ij.first, ij.second));
      })
      .def("__eq__", [](const TransitionMatrix& a, const TransitionMatrix& b) { return a == b; })
      .def("__repr__", [](const TransitionMatrix& a) {
        return "TransitionMatrix(" + py::repr(py::cast(a.to_rows())).cast<std::string>() + ")";
      });

  m.def(
      "spectral_radius",
      [](const TransitionMatrix& a, double tol) {
        const auto r = spectral_radius(a, tol);
        py::dict out;
        out["lambda"] = r.lambda;
        out["eigvec"] = r.eigvec ? py::cast(*r.eigvec) : py::none();
        out["iterations"] = r.iterations;
        out["residual"] = r.residual;
        return out;
      },
      py::arg("a"), py::arg("tol") = 1e-12);
  m.def("is_irreducible", &is_irreducible);
  m.def("is_primitive", [](const TransitionMatrix& a) {
    const auto p = is_primitive(a);
    return py::make_tuple(p.primitive, p.exponent ? py::cast(*p.exponent) : py::none());
  });
  m.def("count_paths", [](const TransitionMatrix& a, int i, int j, int n) { return big(count_paths(a, i, j, n)); });
  m.def("count_words", [](const TransitionMatrix& a, int n) { return big(count_words(a, n)); });
  m.def("subshift_entropy", &subshift_entropy, py::arg("a"), py::arg("tol") = 1e-12);
  m.def("has_full_cycle", [](const TransitionMatrix& a) { return has_full_cycle(TransitionGraph(a)); });
  m.def("strongly_connected_components",
        [](const TransitionMatrix& a) { return strongly_connected_components(TransitionGraph(a)); });

  py::class_<SymbolSequence>(m, "SymbolSequence")
      .def(py::init<SymbolWord, SymbolWord>(), py::arg("preperiod"), py::arg("period"))
      .def_property_readonly("preperiod", &SymbolSequence::preperiod)
      .def_property_readonly("period", &SymbolSequence::period)
      .def("prefix", &SymbolSequence::prefix)
      .def("__getitem__", &SymbolSequence::at)
      .def("__eq__", [](const SymbolSequence& a, const SymbolSequence& b) { return a == b; })
      .def("__repr__", [](const SymbolSequence& s) { return "SymbolSequence(" + to_string(s) + ")"; });
  m.def("is_admissible", py::overload_cast<const TransitionMatrix&, const SymbolSequence&>(&is_admissible));
  m.def("is_admissible_word",
        [](const TransitionMatrix& a, const SymbolWord& w) { return is_admissible(a, std::span<const int>(w)); });
  m.def("shift", py::overload_cast<const SymbolSequence&, std::size_t>(&shift), py::arg("s"), py::arg("times") = 1);
  m.def("sequence_metric", &sequence_metric);

  py::class_<PiecewiseMonotoneMap>(m, "Map")
      .def_property_readonly("name", &PiecewiseMonotoneMap::name)
      .def_property_readonly("is_circle", [](const PiecewiseMonotoneMap& t) { return t.domain().is_circle(); })
      .def_property_readonly("branch_count", [](const PiecewiseMonotoneMap& t) { return t.branches().size(); })
      .def("evaluate", &PiecewiseMonotoneMap::evaluate)
      .def("__call__", &PiecewiseMonotoneMap::evaluate)
      .def("derivative", &PiecewiseMonotoneMap::derivative)
      .def("one_sided_derivatives", &PiecewiseMonotoneMap::one_sided_derivatives)
      .def("branch_image",
           [](const PiecewiseMonotoneMap& t, std::size_t b, double start, double length) {
             return arc_dict(t.domain(), t.branch_image(b, {start, length}));
           })
      .def("branch_inverse", &PiecewiseMonotoneMap::branch_inverse, py::arg("b"), py::arg("y"),
           py::arg("tol") = 1e-12);

  py::class_<Partition>(m, "Partition")
      .def_property_readonly("size", &Partition::size)
      .def("pieces", [](const Partition& p) {
        py::list out;
        for (const Arc& a : p.pieces()) out.append(arc_dict(p.domain(), a));
        return out;
      });

  py::class_<MapInstance>(m, "MapInstance")
      .def_readonly("map", &MapInstance::map)
      .def_readonly("partition", &MapInstance::partition)
      .def_readonly("matrix", &MapInstance::matrix);

  m.def(
      "make_builtin",
      [](const std::string& name, std::optional<TransitionMatrix> matrix) {
        return make_builtin(name, BuiltinParams{std::move(matrix)});
      },
      py::arg("name"), py::arg("matrix") = py::none());
  m.def(
      "make_piecewise_linear",
      [](const std::string& domain, const std::vector<double>& xs, const std::vector<double>& ys) {
        return make_piecewise_linear(domain == "circle" ? Domain::circle() : Domain::interval(), xs, ys);
      },
      py::arg("domain"), py::arg("breakpoints"), py::arg("values"));

  m.def("kasner_angle", &kasner_angle);
  m.def("kasner_geometric", &kasner_geometric);
  m.def("kasner_derivative", &kasner_derivative);
  m.def(
      "scrambled_pair_witness",
      [](int horizon, double tol) {
        const auto w = scrambled_pair_witness(horizon, tol);
        py::dict out;
        out["horizon"] = w.horizon;
        out["min_distance"] = w.min_distance;
        out["argmin"] = w.argmin;
        out["max_distance"] = w.max_distance;
        out["argmax"] = w.argmax;
        out["certified"] = w.certified;
        return out;
      },
      py::arg("horizon") = 200, py::arg("tol") = 1e-10);

  m.def("infer_matrix", &infer_matrix, py::arg("map"), py::arg("partition"), py::arg("tol") = kDefaultCoverTol);
  m.def(
      "verify",
      [](const PiecewiseMonotoneMap& t, const Partition& p, const TransitionMatrix& a, double tol) {
        return verification_dict(verify(t, p, a, tol));
      },
      py::arg("map"), py::arg("partition"), py::arg("matrix"), py::arg("tol") = kDefaultCoverTol);
  m.def(
      "entropy_verdict",
      [](const PiecewiseMonotoneMap& t, const Partition& p, const TransitionMatrix& a, int depth) {
        const auto rep = verify(t, p, a);
        const auto ev = singleton_check(t, p, a, depth);
        const auto v = entropy_verdict(a, rep, ev);
        py::dict out;
        out["lower"] = v.lower ? py::cast(*v.lower) : py::none();
        out["exact"] = v.exact ? py::cast(*v.exact) : py::none();
        out["li_yorke"] = v.li_yorke;
        out["devaney"] = v.devaney;
        out["justifications"] = v.justifications;
        return out;
      },
      py::arg("map"), py::arg("partition"), py::arg("matrix"), py::arg("depth") = 12);

  m.def(
      "cylinder",
      [](const PiecewiseMonotoneMap& t, const Partition& p, const SymbolWord& w) {
        const auto c = cylinder(t, p, w);
        py::dict out = arc_dict(t.domain(), c.interval);
        out["diameter"] = c.diameter;
        out["ambiguous"] = c.ambiguous;
        return out;
      },
      py::arg("map"), py::arg("partition"), py::arg("word"));
  m.def(
      "singleton_check",
      [](const PiecewiseMonotoneMap& t, const Partition& p, const TransitionMatrix& a, int depth) {
        return singleton_dict(singleton_check(t, p, a, depth));
      },
      py::arg("map"), py::arg("partition"), py::arg("matrix"), py::arg("depth"));
  m.def(
      "factor_point",
      [](const PiecewiseMonotoneMap& t, const Partition& p, const SymbolSequence& s, double tol) {
        const auto f = factor_point(t, p, s, tol);
        return py::make_tuple(f.point, f.radius, f.certified);
      },
      py::arg("map"), py::arg("partition"), py::arg("s"), py::arg("tol") = 1e-10);
  m.def("itinerary", &itinerary, py::arg("map"), py::arg("partition"), py::arg("matrix"), py::arg("x"), py::arg("n"),
        py::arg("tol") = 1e-12);
  m.def(
      "preimage_count",
      [](const PiecewiseMonotoneMap& t, const Partition& p, const TransitionMatrix& a, double y, int depth) {
        return preimage_count(t, p, a, y, depth);
      },
      py::arg("map"), py::arg("partition"), py::arg("matrix"), py::arg("y"), py::arg("depth") = 10);
  m.def(
      "entropy_by_cylinders",
      [](const PiecewiseMonotoneMap& t, const Partition& p, int n_max) {
        std::vector<std::tuple<int, std::uint64_t, double>> out;
        for (const auto& c : entropy_by_cylinders(t, p, n_max)) out.emplace_back(c.n, c.count, c.estimate);
        return out;
      },
      py::arg("map"), py::arg("partition"), py::arg("n_max"));

  m.def("_run_analysis_json", [](const std::string& cfg) {
    return run_analysis(parse_config(nlohmann::json::parse(cfg))).report.dump();
  });
  m.def("_matrix_report_json",
        [](const TransitionMatrix& a, int n) { return matrix_report(a, n).dump(); });
}
