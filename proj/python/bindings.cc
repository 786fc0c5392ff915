#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oneclock/cli_io.h"

namespace py = pybind11;
using namespace oneclock;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact solvers for one-clock priced timed games";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object>
      doc_error, solver_error;
  doc_error.call_once_and_store_result([&] {
    return py::object(py::exception<DocumentError>(m, "DocumentError",
                                                   PyExc_ValueError));
  });
  solver_error.call_once_and_store_result([&] {
    return py::object(py::exception<Error>(m, "SolverError",
                                           PyExc_RuntimeError));
  });
  // Exceptions carry the diagnostic code and location as attributes.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DocumentError& e) {
      const Diagnostic& d = e.diagnostic();
      py::object type = doc_error.get_stored();
      py::object err = type(e.what());
      err.attr("code") = ErrorCodeName(d.code);
      err.attr("field") = d.field;
      err.attr("line") = d.line;
      err.attr("column") = d.column;
      PyErr_SetObject(type.ptr(), err.ptr());
    } catch (const Error& e) {
      py::object type = solver_error.get_stored();
      py::object err = type(e.what());
      err.attr("code") = ErrorCodeName(e.code());
      PyErr_SetObject(type.ptr(), err.ptr());
    }
  });

  m.def("format_version", [] { return kFormatVersion; });

  m.def("parse_game", [](const std::string& text) {
    return FormatGame(ParseGame(text));
  }, py::arg("text"), "Validate a game document and return it in canonical form.");

  m.def("solve", [](const std::string& text, bool verify, bool instrumented) {
    GameDocument doc = ParseGame(text);
    py::gil_scoped_release release;
    return EmitResult(SolveDocument(
        doc, {.verify = verify, .instrumented = instrumented}));
  }, py::arg("text"), py::arg("verify") = false, py::arg("instrumented") = false,
     "Solve a game document; returns the result document.");

  m.def("plot", [](const std::string& result, bool decimal) {
    return EmitPlot(ParseResult(result), decimal);
  }, py::arg("result"), py::arg("decimal") = false);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = RunCli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
