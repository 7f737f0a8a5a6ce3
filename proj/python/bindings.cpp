#include "treefloer/error.hpp"
#include "treefloer/homology.hpp"
#include "treefloer/pipeline.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace treefloer;

namespace {

RunConfig make_config(const std::string& pd, std::optional<std::vector<long>> omega,
                      std::optional<std::string> marking, int points_per_arc, std::optional<int> outer_face,
                      const std::string& edge_orientation, const std::string& check, bool mirror, int threads) {
    RunConfig cfg;
    cfg.pd = pd;
    cfg.omega = std::move(omega);
    cfg.marking_json = std::move(marking);
    cfg.points_per_arc = points_per_arc;
    cfg.outer_face = outer_face;
    if (edge_orientation == "larger")
        cfg.orientation = EdgeOrientation::LargerTail;
    else if (edge_orientation != "smaller")
        throw Error(ErrorKind::MalformedInput, "python", "edge_orientation must be 'smaller' or 'larger'");
    cfg.check = parse_check_level(check);
    cfg.mirror = mirror;
    cfg.threads = threads;
    return cfg;
}

SparseMatrix parse_matrix(const std::vector<std::vector<std::string>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r ? static_cast<int>(rows[0].size()) : 0;
    SparseMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw Error(ErrorKind::MalformedInput, "python", "ragged matrix");
        for (int j = 0; j < c; ++j) {
            const auto v = RationalFn::parse(rows[i][j]);
            if (!v.is_zero())
                m.push(i, j, v);
        }
    }
    m.normalize();
    return m;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spanning-tree complex for knot diagrams given as PD codes";

    static py::exception<Error> error_type(m, "Error", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            // args = (kind, module, message, exit code)
            py::tuple args = py::make_tuple(std::string(to_string(e.kind())), e.module(), std::string(e.what()),
                                            exit_code(e.kind()));
            PyErr_SetObject(error_type.ptr(), args.ptr());
        }
    });

    m.def(
        "run_json",
        [](const std::string& pd, std::optional<std::vector<long>> omega, std::optional<std::string> marking,
           int points_per_arc, std::optional<int> outer_face, const std::string& edge_orientation,
           const std::string& check, bool mirror, int threads, bool timings) {
            const auto cfg = make_config(pd, std::move(omega), std::move(marking), points_per_arc, outer_face,
                                         edge_orientation, check, mirror, threads);
            Report rep;
            {
                py::gil_scoped_release release;
                rep = run(cfg);
            }
            return py::make_tuple(report_to_json(rep, timings), trees_to_json(rep));
        },
        py::arg("pd"), py::arg("omega") = py::none(), py::arg("marking") = py::none(), py::arg("points_per_arc") = 0,
        py::arg("outer_face") = py::none(), py::arg("edge_orientation") = "smaller", py::arg("check") = "fast",
        py::arg("mirror") = false, py::arg("threads") = 1, py::arg("timings") = false,
        "Full pipeline; returns (report JSON, trees JSON).");

    m.def("mirror_pd", [](const std::string& pd) { return mirror(parse_pd(pd)).to_pd_string(); }, py::arg("pd"));

    m.def(
        "tree_count",
        [](const std::string& pd, std::optional<int> outer_face) {
            const auto d = parse_pd(pd);
            const auto col = faces_and_coloring(d, outer_face);
            const auto bg = black_graph(d, col);
            return py::make_tuple(enumerate_trees(d, bg).size(), matrix_tree_count(bg));
        },
        py::arg("pd"), py::arg("outer_face") = py::none(),
        "(enumerated spanning trees, Matrix-Tree determinant)");

    m.def(
        "check_generic",
        [](const std::vector<long>& omega) {
            const auto v = treefloer::check_generic(omega, true);
            return py::make_tuple(v.generic, v.witness);
        },
        py::arg("omega"));

    m.def("block_rank", [](const std::vector<std::vector<std::string>>& rows) { return block_rank(parse_matrix(rows)); },
          py::arg("rows"), "Exact rank of a matrix of GF(2)(T) entries written like \"(T^2 + 1)/(T + 1)\".");
    m.def("block_rank_dense",
          [](const std::vector<std::vector<std::string>>& rows) { return block_rank_dense(parse_matrix(rows)); },
          py::arg("rows"));

    m.def("field_normalize", [](const std::string& text) { return RationalFn::parse(text).to_string(); },
          py::arg("text"), "Canonical text of a GF(2)(T) element.");

    m.attr("REPORT_SCHEMA_VERSION") = kReportSchemaVersion;
}
