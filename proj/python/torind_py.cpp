#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "torind/jobs.hpp"

namespace py = pybind11;
using namespace torind;
using torind::io::json;

namespace {

// A document is a dict (taken as JSON) or a path to a JSON file.
io::Document to_document(const py::handle& obj) {
    if (py::isinstance<py::dict>(obj)) {
        const std::string text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
        return {json::parse(text), {}};
    }
    return io::load_document(py::str(obj).cast<std::string>());
}

py::object to_python(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::dict run(const std::string& command, const py::list& documents, std::optional<std::uint32_t> p, int cutoff,
             std::uint64_t seed, std::optional<int> degree, std::optional<std::size_t> power,
             std::optional<std::string> var, std::size_t dim_bound, std::size_t n_target, std::size_t candidates) {
    std::vector<io::Document> docs;
    for (const auto& d : documents) docs.push_back(to_document(d));
    io::JobOptions o;
    o.p = p;
    o.cutoff = cutoff;
    o.seed = seed;
    o.degree = degree;
    o.power = power;
    o.var = std::move(var);
    o.dim_bound = dim_bound;
    o.n_target = n_target;
    o.candidates = candidates;
    io::JobResult r;
    {
        py::gil_scoped_release release;
        r = io::run_job(command, docs, o);
    }
    py::dict out = to_python(r.report);
    out["exit_code"] = r.exit_code;
    return out;
}

}  // namespace

PYBIND11_MODULE(torind, m) {
    m.doc() = "Tor-independence and DG module computations over prime fields";

    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    m.attr("SCHEMA") = io::kSchema;
    m.def("commands", &io::command_names);
    m.def("run", &run, py::arg("command"), py::arg("documents"), py::arg("p") = py::none(),
          py::arg("cutoff") = 10, py::arg("seed") = 0, py::arg("degree") = py::none(), py::arg("power") = py::none(),
          py::arg("var") = py::none(), py::arg("dim_bound") = 4, py::arg("n_target") = 2,
          py::arg("candidates") = 1000,
          "Runs a command on documents (dicts or paths) and returns its report with an exit_code entry.");
    m.def("render_text", [](const py::dict& report) {
        const std::string text = py::module_::import("json").attr("dumps")(report).cast<std::string>();
        json j = json::parse(text);
        j.erase("exit_code");
        return io::render_text(j);
    });

    m.def(
        "koszul_dims",
        [](const py::object& ring) {
            return depth_and_ecodepth(*io::parse_ring(to_document(ring), std::nullopt)).koszul.dims;
        },
        py::arg("ring"));
    m.def(
        "depth_ecodepth",
        [](const py::object& ring) {
            DepthInfo d = depth_and_ecodepth(*io::parse_ring(to_document(ring), std::nullopt));
            return std::make_pair(d.depth, d.ecodepth);
        },
        py::arg("ring"));
    m.def(
        "tor_dims",
        [](const py::object& ring, const py::object& modules, std::size_t top) {
            io::ModuleList ml = io::parse_modules(to_document(modules), io::parse_ring(to_document(ring), std::nullopt));
            if (ml.modules.size() != 2) throw Error(ErrorKind::Malformed, "tor_dims needs exactly two modules");
            return tor_dims(ml.modules[0], ml.modules[1], top);
        },
        py::arg("ring"), py::arg("modules"), py::arg("top") = 10);
    m.def(
        "dg_profiles",
        [](const py::object& dgmodules) {
            io::DGModuleList dl = io::parse_dgmodules(to_document(dgmodules), std::nullopt);
            std::vector<std::map<int, std::size_t>> out;
            for (const auto& x : dl.modules) out.push_back(homology_profile(x).dims);
            return out;
        },
        py::arg("dgmodules"));
}
