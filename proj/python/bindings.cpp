#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ibg/certificate.hpp"
#include "ibg/generators.hpp"
#include "ibg/recognizer.hpp"
#include "ibg/witness.hpp"

namespace py = pybind11;
using namespace ibg;

namespace {

std::vector<Color> colors_from(const std::string& s) {
  std::vector<Color> out;
  out.reserve(s.size());
  for (char ch : s) {
    if (ch == 'B') out.push_back(Color::Black);
    else if (ch == 'W') out.push_back(Color::White);
    else throw Error(ErrorCode::MalformedInput, "colors must be a string over B and W");
  }
  return out;
}

std::string colors_to(const Bigraph& g) {
  std::string s;
  for (Color c : g.colors()) s += color_char(c);
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Interval bigraph recognition with certificates";

  static py::exception<Error> exc(m, "IbgError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = exc;
      py::object inst = err(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(err.ptr(), inst.ptr());
    }
  });

  py::class_<Bigraph>(m, "Bigraph")
      .def(py::init([](const std::string& colors, const std::vector<std::pair<Vertex, Vertex>>& edges,
                       const std::string& name) {
             std::vector<Edge> es(edges.begin(), edges.end());
             return Bigraph(colors_from(colors), es, name);
           }),
           py::arg("colors"), py::arg("edges"), py::arg("name") = "")
      .def_static("parse", [](const std::string& text) { return parse_bigraph(text); })
      .def_static("read", &read_bigraph_file)
      .def("to_text", [](const Bigraph& g) { return write_bigraph(g); })
      .def_property_readonly("n", &Bigraph::n)
      .def_property_readonly("m", &Bigraph::m)
      .def_property_readonly("name", &Bigraph::name)
      .def_property_readonly("colors", &colors_to)
      .def_property_readonly("edges", &Bigraph::edges)
      .def("adjacent", &Bigraph::adjacent)
      .def("__repr__", [](const Bigraph& g) {
        return "<Bigraph n=" + std::to_string(g.n()) + " m=" + std::to_string(g.m()) + ">";
      });

  m.def("recognize_json", [](const Bigraph& g) {
    Certificate c;
    {
      py::gil_scoped_release nogil;
      c = recognize(g);
    }
    return certificate_to_json(c);
  });
  m.def("verify_json", [](const Bigraph& g, const std::string& text) {
    std::string reason;
    bool ok = verify_certificate(g, certificate_from_json(text), &reason);
    return std::make_pair(ok, reason);
  });
  m.def(
      "oracle",
      [](const Bigraph& g, int limit) -> std::pair<bool, std::optional<std::vector<Vertex>>> {
        OracleResult r = oracle_recognize(g, limit);
        if (!r.ordering) return {r.is_interval_bigraph, std::nullopt};
        return {r.is_interval_bigraph, r.ordering->sequence()};
      },
      py::arg("g"), py::arg("limit") = 16);

  m.def("gen_cycle", &gen_cycle, py::arg("k"));
  m.def("gen_path", &gen_path, py::arg("n"));
  m.def("gen_biclique", &gen_biclique, py::arg("a"), py::arg("b"));
  m.def(
      "gen_exobiclique",
      [](int a, int b, bool singletons) {
        return gen_exobiclique(a, b, singletons ? ExoPattern::Singletons : ExoPattern::Pairs);
      },
      py::arg("a"), py::arg("b"), py::arg("singletons") = false);
  m.def("gen_random", &gen_random_bipartite, py::arg("nb"), py::arg("nw"), py::arg("p"), py::arg("seed"));
  m.def("gen_obstruction", &gen_obstruction_family, py::arg("steps"));
  m.def(
      "gen_intervals",
      [](int nb, int nw, std::uint64_t seed) { return gen_from_intervals(nb, nw, seed).first; },
      py::arg("nb"), py::arg("nw"), py::arg("seed"));
}
