#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ospcert/cli_io.hpp"

namespace py = pybind11;
using namespace ospcert;

namespace {

CommonOptions options(const std::string& data_dir, int jobs, std::size_t row_cap, const std::string& frame) {
    CommonOptions o;
    o.data_dir = resolve_data_dir(data_dir.empty() ? std::nullopt : std::optional<std::string>(data_dir));
    o.jobs = jobs;
    o.row_cap = row_cap;
    o.frame = frame_parse(frame);
    return o;
}

// Reports cross the boundary as canonical JSON text; the Python side parses it.
std::string dump(const Report& r) { return report_text(r); }

template <class T>
ExactMatrix<T> to_matrix(const std::vector<std::vector<T>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    ExactMatrix<T> m(0, cols);
    for (const auto& r : rows) {
        if (r.size() != cols) throw UsageError("ragged matrix");
        SparseRow<T> sr;
        for (std::size_t c = 0; c < cols; ++c)
            if (!r[c].is_zero()) sr.emplace_back(c, r[c]);
        m.append_row(std::move(sr));
    }
    return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact oscillator-deformation checks for B(m,n)";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<MathError>(m, "MathError", PyExc_ArithmeticError);
    py::register_exception<IntegrityError>(m, "IntegrityError", PyExc_RuntimeError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);

    m.def(
        "generate",
        [](int mm, std::vector<int> ns, const std::string& data_dir, const std::string& frame) {
            return dump(cmd_generate(options(data_dir, 1, kDefaultRowCap, frame), mm, ns));
        },
        py::arg("m"), py::arg("n"), py::arg("data_dir") = "", py::arg("gamma_frame") = "orthonormal");
    m.def(
        "dim_check", [](std::vector<int> ns) { return dump(cmd_dim_check(CommonOptions{}, ns)); }, py::arg("n"));
    m.def(
        "rank",
        [](int mm, std::vector<int> ns, std::optional<std::string> sector, int jobs, const std::string& data_dir) {
            return dump(cmd_rank(options(data_dir, jobs, kDefaultRowCap, "orthonormal"), mm, ns, sector));
        },
        py::arg("m"), py::arg("n"), py::arg("sector") = std::nullopt, py::arg("jobs") = 1, py::arg("data_dir") = "");
    m.def(
        "verify_certs",
        [](std::vector<int> ns, int jobs, const std::string& data_dir) {
            return dump(cmd_verify_certs(options(data_dir, jobs, kDefaultRowCap, "orthonormal"), ns));
        },
        py::arg("n"), py::arg("jobs") = 1, py::arg("data_dir") = "");
    m.def(
        "verify_b01", [](const std::string& data_dir) { return dump(cmd_verify_b01(options(data_dir, 1, kDefaultRowCap, "orthonormal"))); },
        py::arg("data_dir") = "");
    m.def(
        "verify_bmn",
        [](std::vector<std::pair<int, int>> targets, std::size_t row_cap, int jobs, const std::string& data_dir) {
            return dump(cmd_verify_bmn(options(data_dir, jobs, row_cap, "orthonormal"), targets));
        },
        py::arg("targets"), py::arg("row_cap") = kDefaultRowCap, py::arg("jobs") = 1, py::arg("data_dir") = "");

    m.def(
        "normal_order",
        [](const std::string& word) {
            Monomial w;
            std::istringstream in(word);
            std::string tok;
            while (in >> tok) w.push_back(Generator::parse(tok));
            return normal_order(w).to_string();
        },
        py::arg("word"), "PBW normal form of a space-separated word such as 'b1- b1+'");

    m.def(
        "rank_rational",
        [](const std::vector<std::vector<std::string>>& rows) {
            std::vector<std::vector<Rational>> vals;
            for (const auto& r : rows) {
                std::vector<Rational> v;
                for (const auto& s : r) v.push_back(Rational::parse(s));
                vals.push_back(std::move(v));
            }
            return rank(to_matrix(vals));
        },
        py::arg("rows"), "exact rank of a matrix of 'p/q' strings");
    m.def(
        "rank_sqrt2",
        [](const std::vector<std::vector<std::pair<std::string, std::string>>>& rows) {
            std::vector<std::vector<QuadScalar>> vals;
            for (const auto& r : rows) {
                std::vector<QuadScalar> v;
                for (const auto& [a, b] : r) v.emplace_back(Rational::parse(a), Rational::parse(b));
                vals.push_back(std::move(v));
            }
            return rank(to_matrix(vals));
        },
        py::arg("rows"), "exact rank over Q(sqrt2); entries are ('p/q', 'r/s') for p/q + r/s sqrt2");
}
