#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crysta/construct.hpp"
#include "crysta/json_report.hpp"

namespace py = pybind11;
using namespace crysta;

namespace {

// GemError -> ValueError with the structured code in the message prefix.
void translate(const GemError& e) {
    PyErr_SetString(PyExc_ValueError,
                    (std::string(error_code_name(e.code())) + ": " + e.what()).c_str());
}

std::array<S3Verdict, 5> verdicts_of(const Gem& g, uint64_t seed, int budget) {
    S3Options opt;
    opt.seed = seed;
    opt.restart_budget = budget;
    return s3_verdicts(g, opt);
}

}  // namespace

PYBIND11_MODULE(_crysta, m) {
    m.doc() = "crystallization toolkit core (5-colored gems of PL 4-manifolds)";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const GemError& e) {
            translate(e);
        }
    });

    py::class_<Gem>(m, "Gem")
        .def_static("from_text", &Gem::parse, py::arg("text"))
        .def_static("from_file", &Gem::parse_file, py::arg("path"))
        .def("to_text", &Gem::serialize)
        .def_property_readonly("order", &Gem::order)
        .def("partner", &Gem::partner, py::arg("color"), py::arg("vertex"))
        .def("is_contracted", &Gem::is_contracted)
        .def("is_bipartite", [](const Gem& g) { return g.bipartition().bipartite; })
        .def("residue_count",
             [](const Gem& g, const std::vector<int>& colors) {
                 ColorSet cs;
                 for (int c : colors) cs = cs.with(c);
                 return g.residues(cs).count;
             },
             py::arg("colors"))
        .def("__eq__", [](const Gem& a, const Gem& b) { return a == b; })
        .def("__repr__",
             [](const Gem& g) { return "<crysta.Gem order=" + std::to_string(g.order()) + ">"; });

    m.def("canonical_hex", [](const Gem& g, const std::string& group) {
        return canonical_form(g, symmetry_group_from_string(group)).hex();
    }, py::arg("gem"), py::arg("group") = "vcr");

    m.def("invariant_report_json",
          [](const Gem& g) { return to_json(invariant_report(g)).dump(); }, py::arg("gem"));

    m.def("homology_betti", [](const Gem& g) {
        HomologyProfile h = homology(build_complex(g));
        return std::vector<int>(h.betti.begin(), h.betti.end());
    }, py::arg("gem"));

    m.def("euler_characteristic", [](const Gem& g) { return euler_characteristic(g); },
          py::arg("gem"));

    m.def("connected_sum",
          [](const Gem& a, const Gem& b, bool reverse) {
              return connected_sum(a, b,
                                   reverse ? SumOrientation::opposite_class
                                           : SumOrientation::same_class);
          },
          py::arg("a"), py::arg("b"), py::arg("reverse") = false);

    m.def("find_dipoles", [](const Gem& g) {
        std::vector<std::tuple<int, int, std::vector<int>>> out;
        for (const Dipole& d : find_dipoles(g)) out.emplace_back(d.v, d.w, d.colors.colors());
        return out;
    }, py::arg("gem"));

    m.def("simplify",
          [](const Gem& g, uint64_t seed, int budget) {
              SimplifyResult r = simplify(g, seed, budget);
              return py::make_tuple(r.gem, r.log);
          },
          py::arg("gem"), py::arg("seed") = 1, py::arg("budget") = 1 << 20);

    m.def("s3_verdicts",
          [](const Gem& g, uint64_t seed, int budget) {
              std::vector<std::string> out;
              for (S3Verdict v : verdicts_of(g, seed, budget)) out.push_back(to_string(v));
              return out;
          },
          py::arg("gem"), py::arg("seed") = 1, py::arg("budget") = 64);

    m.def("enumerate_simple_json",
          [](int order, const std::string& group, int jobs, uint64_t seed) {
              EnumerationTask task;
              task.order = order;
              task.group = symmetry_group_from_string(group);
              task.jobs = jobs;
              task.seed = seed;
              EnumerationResult res = enumerate_simple(task);
              Json j;
              j["entries"] = Json::array();
              for (const auto& e : res.entries) {
                  Json line = catalog_entry_json(e);
                  line["gem"] = e.gem.serialize();
                  j["entries"].push_back(line);
              }
              j["certified"] = res.certified;
              j["flagged"] = res.flagged;
              j["exhaustive"] = res.exhaustive;
              return j.dump();
          },
          py::arg("order"), py::arg("group") = "vcr", py::arg("jobs") = 1, py::arg("seed") = 1);
}
