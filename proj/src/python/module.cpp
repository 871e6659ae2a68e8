#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dioph/cli.hpp"
#include "dioph/corpus.hpp"
#include "dioph/melb.hpp"

namespace py = pybind11;
using namespace dioph;

namespace {

// Python ints and "p/q" strings both become exact rationals.
Rational to_rational(const py::object& o) {
    if (py::isinstance<py::bool_>(o)) throw py::type_error("expected an int or a 'p/q' string");
    if (py::isinstance<py::int_>(o)) return Rational(py::str(o).cast<std::string>());
    if (py::isinstance<py::str>(o)) {
        Rational q;
        if (q.set_str(o.cast<std::string>(), 10) != 0 || q.get_den() == 0)
            throw py::value_error("not a rational: " + o.cast<std::string>());
        q.canonicalize();
        return q;
    }
    throw py::type_error("expected an int or a 'p/q' string");
}

py::object to_py(const Integer& x) { return py::int_(py::str(x.get_str())); }

py::dict ball_dict(const RealBall& b) {
    py::dict d;
    d["mid"] = b.mid_string();
    d["rad"] = b.rad_string();
    d["value"] = b.mid_double();
    return d;
}

}  // namespace

PYBIND11_MODULE(_dioph, m) {
    m.doc() = "Exact and ball-rigorous checks for rational approximation bounds";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(PyExc_ValueError, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
        }
    });

    m.def("command_names", &command_names);

    m.def(
        "run",
        [](const std::string& command, const std::string& toml_text, prec_t precision, std::uint64_t seed) {
            RunConfig cfg;
            cfg.command = command;
            cfg.precision = precision;
            cfg.seed = seed;
            RunResult r = run_text(cfg, toml_text);
            return py::make_tuple(r.exit_code, r.report);
        },
        py::arg("command"), py::arg("toml_text"), py::arg("precision") = 128, py::arg("seed") = 1,
        "Runs a CLI command on TOML text; returns (exit_code, json_report).");

    m.def(
        "height",
        [](const py::object& x0, const py::object& x1, prec_t bits) {
            return ball_dict(height(ProjPoint::rational(to_rational(x0), to_rational(x1)), bits));
        },
        py::arg("x0"), py::arg("x1"), py::arg("bits") = 128);

    m.def(
        "mu",
        [](int n, const py::object& t) { return mu(n, to_rational(t)).get_str(); }, py::arg("n"), py::arg("t"),
        "Exact value of mu_n(t) as a 'p/q' string.");

    m.def(
        "generate_convergents",
        [](const std::vector<long>& minpoly, std::size_t count) {
            std::vector<Integer> mp(minpoly.begin(), minpoly.end());
            ConvergentCorpus cc = generate_convergents(mp, count);
            py::list out;
            for (std::size_t k = 0; k < cc.p.size(); ++k) out.append(py::make_tuple(to_py(cc.p[k]), to_py(cc.q[k])));
            return out;
        },
        py::arg("minpoly"), py::arg("count"),
        "Convergents (p, q) of the largest root of c + b x + a x^2, given as [c, b, a].");

    m.def(
        "param_pipeline",
        [](int q, int n, const py::object& delta, const std::vector<long>& r, prec_t bits) {
            ParamReport p = param_pipeline(q, n, to_rational(delta), MultiDegree(r), bits);
            py::dict d;
            d["t_a"] = ball_dict(p.t_a.ball);
            d["u_tilde"] = ball_dict(p.u_tilde.ball);
            d["w"] = ball_dict(p.w.ball);
            d["eps"] = p.eps.get_str();
            py::list checks;
            for (const auto& c : p.checks) checks.append(py::make_tuple(c.name, std::string(to_string(c.verdict))));
            d["checks"] = checks;
            d["all_pass"] = p.all_pass;
            return d;
        },
        py::arg("q"), py::arg("n"), py::arg("delta"), py::arg("r"), py::arg("bits") = 128);
}
