#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsg/cli.hpp"
#include "qsg/smith.hpp"

namespace py = pybind11;
using namespace qsg;

namespace {

py::int_ to_py(const Integer& v) { return py::int_(py::str(to_string(v))); }

Integer from_py(const py::handle& h) { return Integer(py::str(h).cast<std::string>()); }

IntMatrix matrix_from_py(const std::vector<std::vector<py::object>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    IntMatrix M(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix");
        for (std::size_t c = 0; c < cols; ++c) M(r, c) = from_py(rows[r][c]);
    }
    return M;
}

py::list matrix_to_py(const IntMatrix& M) {
    py::list out;
    for (std::size_t r = 0; r < M.rows(); ++r) {
        py::list row;
        for (std::size_t c = 0; c < M.cols(); ++c) row.append(to_py(M(r, c)));
        out.append(row);
    }
    return out;
}

CartanDatum cartan_of(const std::string& type, int rank) {
    if (type.size() != 1) throw std::invalid_argument("type must be a single letter A..G");
    return CartanDatum::of_type(lie_type_from_char(type[0]), rank);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quantum subgroup data for twisted small quantum groups";

    m.def(
        "run_command",
        [](const std::string& command, const std::string& spec_json, std::optional<std::size_t> cap) {
            cli::CommandResult r;
            try {
                const cli::ProblemSpec spec = cli::spec_from_json(cli::json::parse(spec_json.empty() ? "{}" : spec_json));
                py::gil_scoped_release release;
                r = cli::run_command(command, spec, cap.value_or(cli::enumeration_cap_from_env()));
            } catch (const std::exception& e) {
                r.exit_code = cli::kParseFailure;
                r.lines.push_back({{"command", command}, {"error", e.what()}, {"exit_code", cli::kParseFailure}});
            }
            std::vector<std::string> lines;
            for (const auto& l : r.lines) lines.push_back(l.dump());
            return py::make_tuple(r.exit_code, lines, r.text);
        },
        py::arg("command"), py::arg("spec_json"), py::arg("cap") = py::none(),
        "Run a subcommand on a JSON problem spec. Returns (exit_code, json_lines, text).");

    m.def(
        "smith_normal_form",
        [](const std::vector<std::vector<py::object>>& rows) {
            const SmithForm f = smith_normal_form(matrix_from_py(rows));
            return py::make_tuple(matrix_to_py(f.U), matrix_to_py(f.S), matrix_to_py(f.V));
        },
        py::arg("matrix"), "(U, S, V) with U M V = S.");

    m.def(
        "kernel_mod",
        [](const std::vector<std::vector<py::object>>& rows, std::int64_t ell) {
            const ModKernel k = kernel_mod(matrix_from_py(rows), ell);
            return py::make_tuple(k.generators, k.orders, to_py(k.order));
        },
        py::arg("matrix"), py::arg("ell"), "(generators, generator_orders, order) of {z : M z = 0 mod ell}.");

    m.def(
        "cartan_matrix",
        [](const std::string& type, int rank) { return matrix_to_py(cartan_of(type, rank).cartan()); },
        py::arg("type"), py::arg("rank"));

    m.def(
        "positive_roots",
        [](const std::string& type, int rank) {
            std::vector<std::vector<long long>> out;
            for (const auto& r : positive_roots(cartan_of(type, rank))) out.push_back(r.coords);
            return out;
        },
        py::arg("type"), py::arg("rank"), "Positive roots in simple-root coordinates, by height.");

    py::register_exception<cli::ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<InvalidTwist>(m, "InvalidTwist", PyExc_ValueError);
}
