// Python bindings. Integers cross the boundary as Python ints; reports come
// back as the same dicts the CLI prints as JSON.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cyclescope/cli.hpp"
#include "cyclescope/cycles.hpp"
#include "cyclescope/families.hpp"
#include "cyclescope/json_io.hpp"
#include "cyclescope/numth.hpp"
#include "cyclescope/ruleout.hpp"

namespace py = pybind11;
using namespace cyclescope;

namespace {

i128 to_i128(const py::int_& v) { return parse_i128(py::str(v).cast<std::string>()); }

py::int_ from_i128(i128 v) {
    const std::string s = to_string(v);
    return py::reinterpret_steal<py::int_>(PyLong_FromString(s.c_str(), nullptr, 10));
}

py::object to_python(const Json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

Json from_python(const py::object& o) {
    const auto text = py::module_::import("json").attr("dumps")(o).cast<std::string>();
    return Json::parse(text);
}

py::list cycle_list(const std::vector<Json>& docs) {
    py::list out;
    for (const auto& d : docs) out.append(to_python(d));
    return out;
}

}  // namespace

PYBIND11_MODULE(_cyclescope, m) {
    m.doc() = "Cycles of elliptic curves: search, verification and rule-out.";

    py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
    py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_ArithmeticError);

    m.def("is_prime", [](const py::int_& n) { return is_prime(to_i128(n)); }, py::arg("n"));

    m.def(
        "factorize",
        [](const py::int_& n) {
            py::list out;
            for (const auto& pp : factorize(to_i128(n)).factors)
                out.append(py::make_tuple(from_i128(pp.prime), pp.exponent));
            return out;
        },
        py::arg("n"), "Prime factorization as [(p, e), ...].");

    m.def(
        "cyclotomic", [](int k, const py::int_& x) { return from_i128(cyclotomic_eval(k, to_i128(x))); },
        py::arg("k"), py::arg("x"));

    m.def(
        "multiplicative_order",
        [](const py::int_& q, const py::int_& n) { return from_i128(multiplicative_order(to_i128(q), to_i128(n))); },
        py::arg("q"), py::arg("n"));

    m.def(
        "solve_cm",
        [](const py::int_& q, const py::int_& D) -> py::object {
            const auto s = solve_cm_equation(to_i128(q), to_i128(D));
            if (!s) return py::none();
            return py::make_tuple(from_i128(s->t), from_i128(s->y));
        },
        py::arg("q"), py::arg("D"), "(t, y) with 4q = t^2 + D y^2, or None.");

    m.def(
        "verify_cycle",
        [](const py::object& doc, bool realize) {
            const Json j = from_python(doc);
            if (is_cofactor_document(j))
                return to_python(cofactor_report_to_json(verify_cofactor_cycle(cofactor_entries_from_json(j))));
            return to_python(cycle_report_to_json(verify_cycle(cycle_entries_from_json(j), realize), realize));
        },
        py::arg("doc"), py::arg("realize") = false, "Checks a cycle given as {\"entries\": [...]}.");

    m.def(
        "two_cycle_from_trace",
        [](const py::int_& q, const py::int_& t) -> py::object {
            const auto c = two_cycle_from_trace(to_i128(q), to_i128(t));
            if (!c) return py::none();
            return to_python(cycle_to_json(*c));
        },
        py::arg("q"), py::arg("t"));

    m.def(
        "scan_mnt",
        [](const py::int_& x_min, const py::int_& x_max, int kind, unsigned workers) {
            std::vector<Json> docs;
            for (const auto& sc : scan_mnt_cycles(to_i128(x_min), to_i128(x_max), kind, workers)) {
                Json j = cycle_to_json(sc.cycle);
                j["x"] = int_to_json(sc.x);
                docs.push_back(std::move(j));
            }
            return cycle_list(docs);
        },
        py::arg("x_min"), py::arg("x_max"), py::arg("kind") = 2, py::arg("workers") = 1);

    m.def(
        "ruleout",
        [](int k1, int k2, std::int64_t c_max, std::int64_t d_max, std::int64_t c_bound,
           std::vector<std::int64_t> sieve_moduli, unsigned workers) {
            RuleoutConfig cfg;
            cfg.c_max = c_max;
            cfg.d_max = d_max;
            cfg.c_bound = c_bound;
            if (!sieve_moduli.empty()) cfg.sieve_moduli = std::move(sieve_moduli);
            cfg.workers = workers;
            return to_python(ruleout_report_to_json(run_ruleout(k1, k2, cfg)));
        },
        py::arg("k1"), py::arg("k2"), py::arg("c_max") = 82, py::arg("d_max") = 16,
        py::arg("c_bound") = 1'000'000, py::arg("sieve_moduli") = std::vector<std::int64_t>{},
        py::arg("workers") = 1);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = run_cli(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs a command line; returns (exit_code, stdout, stderr).");
}
