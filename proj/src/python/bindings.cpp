#include <memory>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "latent/cli.hpp"

namespace py = pybind11;
using namespace latent;

namespace {

struct RunResult {
    std::string json;
    int max_thunk_runs = 0;
};

RunResult run_source(const std::string& source, const std::string& pipeline, const std::string& strategy) {
    auto probe = std::make_shared<ThunkProbe>();
    auto ast = cli::parse_program(source);
    auto report = cli::run_program(*ast, cli::parse_pipeline(pipeline), lang::parse_strategy(strategy),
                                   cli::RunOptions{probe});
    return {cli::render_json(report), probe->max_runs()};
}

py::list pipeline_items(const std::string& spec) {
    py::list out;
    for (const auto& h : cli::parse_pipeline(spec).handlers) {
        out.append(py::make_tuple(h.name, h.init ? py::cast(*h.init) : py::none()));
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_latent, m) {
    m.doc() = "Latent effect trees and modular handlers";

    static py::exception<cli::ParseError> parse_error(m, "ParseError", PyExc_ValueError);
    static py::exception<lang::ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
    static py::exception<EvalError> eval_error(m, "EvalError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const cli::ParseError& e) {
            parse_error(e.what());
        } catch (const lang::ConfigError& e) {
            config_error(e.what());
        } catch (const EvalError& e) {
            eval_error(e.what());
        }
    });

    m.def("parse", [](const std::string& source) { return lang::to_sexp(*cli::parse_program(source)); },
          py::arg("source"), "Parse a program and print it back in canonical form.");
    m.def("parse_pipeline", &pipeline_items, py::arg("spec"),
          "Validate a handler list; returns (name, initial state) pairs.");
    m.def(
        "run_json",
        [](const std::string& source, const std::string& pipeline, const std::string& strategy) {
            auto r = run_source(source, pipeline, strategy);
            return py::make_tuple(r.json, r.max_thunk_runs);
        },
        py::arg("source"), py::arg("pipeline"), py::arg("strategy") = "cbv",
        "Run a program; returns the JSON report and the most runs of any thunk slot.");
}
