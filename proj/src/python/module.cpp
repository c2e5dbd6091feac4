// _iqu: python bindings for the main operations — parsing, type checking,
// program evaluation, and the quantum co-processor primitives.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "iqu/eval.hpp"
#include "iqu/gates.hpp"
#include "iqu/parser.hpp"
#include "iqu/quantum.hpp"
#include "iqu/typecheck.hpp"

namespace py = pybind11;

namespace {

iqu::EvalConfig make_config(const std::string& mode, uint64_t seed, uint64_t fuel,
                            unsigned max_qubits, bool strict_pred) {
    iqu::EvalConfig cfg;
    if (mode == "sample")
        cfg.mode = iqu::EvalConfig::Mode::Sample;
    else if (mode == "distribution" || mode == "dist")
        cfg.mode = iqu::EvalConfig::Mode::Distribution;
    else
        throw py::value_error("mode must be 'distribution' or 'sample'");
    cfg.seed = seed;
    cfg.fuel = fuel;
    cfg.max_qubits = max_qubits;
    cfg.strict_pred = strict_pred;
    return cfg;
}

// Evaluates a pure circuit expression (no store) down to its circuit value.
iqu::CircuitPtr circuit_of(const std::string& source) {
    iqu::TermPtr t = iqu::parse_program(source);
    iqu::TypePtr ty = iqu::check_program(t);
    if (ty->kind != iqu::TypeKind::Circ)
        throw py::value_error("expected a circ-typed expression, got " + iqu::to_string(ty));
    iqu::EvalConfig cfg;
    iqu::LocationAllocator alloc;
    auto result = iqu::eval(iqu::Store{}, t, cfg, alloc);
    return result.outcomes.at(0).value.circ;
}

std::vector<iqu::Complex> to_state(const std::vector<std::complex<double>>& amps) {
    if (amps.empty() || (amps.size() & (amps.size() - 1)) != 0)
        throw py::value_error("state length must be a nonzero power of two");
    return amps;
}

} // namespace

PYBIND11_MODULE(_iqu, m) {
    m.doc() = "IQu interpreter: quantum Idealized Algol with a state-vector co-processor";

    py::register_exception<iqu::ParseError>(m, "IquParseError");
    py::register_exception<iqu::TypeError>(m, "IquTypeError");
    py::register_exception<iqu::RuntimeError>(m, "IquRuntimeError");

    m.def("parse", [](const std::string& source) { return iqu::ast_dump(iqu::parse_program(source)); },
          py::arg("source"), "Parse a program and return an indented AST dump.");

    m.def("pretty", [](const std::string& source) { return iqu::pretty(iqu::parse_program(source)); },
          py::arg("source"), "Parse a program and return its canonical one-line form.");

    m.def("check", [](const std::string& source) {
              return iqu::to_string(iqu::check_program(iqu::parse_program(source)));
          },
          py::arg("source"), "Type-check a closed program and return its (ground) type.");

    m.def("run",
          [](const std::string& source, const std::string& mode, uint64_t seed, uint64_t fuel,
             unsigned max_qubits, bool strict_pred) {
              iqu::EvalConfig cfg = make_config(mode, seed, fuel, max_qubits, strict_pred);
              iqu::RunReport report = iqu::run_program(source, {}, cfg);
              std::vector<std::pair<std::string, double>> lines;
              lines.reserve(report.merged.size());
              for (const auto& line : report.merged)
                  lines.emplace_back(line.value, line.probability);
              return lines;
          },
          py::arg("source"), py::arg("mode") = "distribution", py::arg("seed") = 0,
          py::arg("fuel") = 10'000'000, py::arg("max_qubits") = 20,
          py::arg("strict_pred") = false,
          "Run a closed program; returns [(value, probability)] merged by value.");

    m.def("circuit_wires",
          [](const std::string& circuit) -> std::optional<uint64_t> {
              return iqu::wires(circuit_of(circuit));
          },
          py::arg("circuit"), "Wire count of a circuit expression (None when undefined).");

    m.def("apply_circuit",
          [](const std::string& circuit, const std::vector<std::complex<double>>& state) {
              auto c = circuit_of(circuit);
              auto v = to_state(state);
              auto w = iqu::wires(c);
              if (!w || (size_t(1) << *w) != v.size())
                  throw py::value_error("circuit arity does not match state size");
              return iqu::apply_circuit(*c, v);
          },
          py::arg("circuit"), py::arg("state"),
          "Apply a circuit expression to a state vector.");

    m.def("build_matrix",
          [](const std::string& circuit) {
              iqu::Matrix mat = iqu::build_matrix(*circuit_of(circuit));
              std::vector<std::vector<std::complex<double>>> rows(mat.dim);
              for (size_t r = 0; r < mat.dim; ++r) {
                  rows[r].resize(mat.dim);
                  for (size_t c = 0; c < mat.dim; ++c)
                      rows[r][c] = mat.at(r, c);
              }
              return rows;
          },
          py::arg("circuit"), "Dense unitary of a circuit expression (<= 10 wires).");

    m.def("reverse_circuit",
          [](const std::string& circuit) {
              return iqu::to_string(iqu::structural_adjoint(circuit_of(circuit)));
          },
          py::arg("circuit"), "Structural adjoint of a circuit expression, pretty-printed.");

    m.def("partial_measure",
          [](const std::vector<std::complex<double>>& state, uint64_t k) {
              auto v = to_state(state);
              auto outcomes = iqu::partial_measure(v, k);
              std::vector<std::tuple<uint64_t, std::vector<std::complex<double>>, double>> out;
              out.reserve(outcomes.size());
              for (const auto& o : outcomes)
                  out.emplace_back(o.result, *o.residual, o.probability);
              return out;
          },
          py::arg("state"), py::arg("k"),
          "Measure the leftmost k mod (n+1) qubits; returns [(result, residual, probability)].");

    m.def("gates", [] {
        py::list out;
        for (const auto& g : iqu::gate_table()) {
            py::dict entry;
            entry["name"] = g.name;
            entry["arity"] = g.arity;
            entry["adjoint"] = g.adjoint;
            std::vector<std::vector<std::complex<double>>> rows(g.unitary.dim);
            for (size_t r = 0; r < g.unitary.dim; ++r) {
                rows[r].resize(g.unitary.dim);
                for (size_t c = 0; c < g.unitary.dim; ++c)
                    rows[r][c] = g.unitary.at(r, c);
            }
            entry["unitary"] = rows;
            out.append(entry);
        }
        return out;
    });
}
