#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "rds/attractor.hpp"
#include "rds/cocycle.hpp"
#include "rds/lyapunov.hpp"
#include "rds/maps.hpp"
#include "rds/noise.hpp"
#include "rds/oracle.hpp"
#include "rds/selftest.hpp"
#include "rds/version.hpp"

namespace py = pybind11;
using namespace rds;

namespace {

std::vector<double> to_floats(const std::vector<ExtReal>& xs)
{
    std::vector<double> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(x.to_double());
    return out;
}

py::object optional_int(const std::optional<std::int64_t>& v)
{
    return v ? py::object(py::int_(*v)) : py::none();
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Random dynamical systems with dyadic noise: maps, orbits, diagnostics, oracles.";
    m.attr("__version__") = std::string(version());

    py::enum_<Family>(m, "Family")
        .value("G", Family::G)
        .value("F", Family::F);

    py::class_<ExtReal>(m, "ExtReal", "Real with a 64-bit binary exponent, or an escaped sign.")
        .def(py::init(&ExtReal::finite), py::arg("value"))
        .def_static("escaped", &ExtReal::escaped, py::arg("sign"))
        .def_property_readonly("is_escaped", &ExtReal::is_escaped)
        .def_property_readonly("sign", &ExtReal::sign)
        .def_property_readonly("significand", &ExtReal::significand)
        .def_property_readonly("exponent", &ExtReal::exponent)
        .def("log_abs", &ExtReal::log_abs)
        .def("__float__", &ExtReal::to_double)
        .def("__str__", &ExtReal::to_string)
        .def("__repr__", [](const ExtReal& x) { return "ExtReal(" + x.to_string() + ")"; })
        .def(py::self == py::self)
        .def(py::self < py::self);

    py::class_<NoisePath>(m, "NoisePath", "Two-sided dyadic noise sequence keyed by a seed.")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def_static(
            "scripted",
            [](std::uint64_t seed, std::int64_t first_index, const std::vector<std::int64_t>& exponents) {
                return NoisePath::scripted(seed, first_index, exponents);
            },
            py::arg("seed"), py::arg("first_index"), py::arg("exponents"))
        .def("at", [](const NoisePath& p, std::int64_t m) { return p.at(m).exponent; }, py::arg("m"))
        .def("shift", &NoisePath::shift, py::arg("r"))
        .def("reversed", &NoisePath::reversed)
        .def_property_readonly("seed", &NoisePath::seed)
        .def(py::self == py::self);

    m.def("sample_exponent", &sample_exponent, py::arg("u"));
    m.def("noise_at", [](std::uint64_t seed, std::int64_t index) { return noise_at(seed, index).exponent; },
          py::arg("seed"), py::arg("index"));
    m.def("sample_seed", &sample_seed, py::arg("seed"), py::arg("sample"));

    m.def("g_eval",
          [](double z, std::int64_t k, double threshold) { return g_eval(z, NoiseAtom(k), threshold); },
          py::arg("z"), py::arg("k"), py::arg("escape_threshold") = kEscapeThreshold);
    m.def("f_eval", [](double y, std::int64_t k) { return f_eval(y, NoiseAtom(k)); }, py::arg("y"), py::arg("k"));
    m.def("f_eval", [](const ExtReal& y, std::int64_t k) { return f_eval(y, NoiseAtom(k)); }, py::arg("y"),
          py::arg("k"));
    m.def("g_derivative_log2", [](double z, std::int64_t k) { return g_derivative(z, NoiseAtom(k)).log2; },
          py::arg("z"), py::arg("k"));
    m.def("f_derivative_log2", [](double y, std::int64_t k) { return f_derivative(y, NoiseAtom(k)).log2; },
          py::arg("y"), py::arg("k"));

    m.def(
        "forward_orbit",
        [](Family family, const NoisePath& path, double z0, std::int64_t n) {
            const Orbit o = forward_orbit(family, path, z0, n);
            py::dict d;
            d["states"] = to_floats(o.states);
            d["log2_deriv_sum"] = o.log2_deriv_sum;
            d["log_deriv_sum"] = o.log_deriv_sum();
            d["escaped_at"] = optional_int(o.escaped_at);
            return d;
        },
        py::arg("family"), py::arg("path"), py::arg("z0"), py::arg("n"));
    m.def("pullback_state",
          py::overload_cast<Family, const NoisePath&, double, std::int64_t>(&pullback_state),
          py::arg("family"), py::arg("path"), py::arg("z0"), py::arg("n"));
    m.def("cocycle_check", &cocycle_check, py::arg("family"), py::arg("path"), py::arg("z0"), py::arg("s"),
          py::arg("t"));
    m.def(
        "backward_orbit",
        [](Family family, const NoisePath& path, double x0, std::int64_t n) {
            return to_floats(backward_orbit(family, path, x0, n));
        },
        py::arg("family"), py::arg("path"), py::arg("x0"), py::arg("n"));

    py::register_exception<EscapedOrbit>(m, "EscapedOrbit", PyExc_RuntimeError);

    m.def(
        "finite_time_lyapunov",
        [](Family family, const NoisePath& path, double z0, std::int64_t n) {
            return finite_time_lyapunov(family, path, z0, n).value();
        },
        py::arg("family"), py::arg("path"), py::arg("z0"), py::arg("n"));
    m.def(
        "lyapunov_ensemble",
        [](Family family, double z0, std::int64_t steps, std::int64_t paths, std::uint64_t seed, int workers) {
            LyapunovSummary s;
            {
                py::gil_scoped_release release;
                s = lyapunov_ensemble(family, z0, steps, paths, seed, workers);
            }
            py::dict d;
            d["mean"] = s.mean;
            d["std_error"] = s.std_error;
            d["min"] = s.min;
            d["max"] = s.max;
            std::vector<double> values;
            for (const auto& e : s.samples) values.push_back(e.value());
            d["values"] = values;
            return d;
        },
        py::arg("family"), py::arg("z0"), py::arg("steps"), py::arg("paths"), py::arg("seed"),
        py::arg("workers") = 1);
    m.def(
        "integrability_diagnostic",
        [](Family family, std::int64_t samples, std::int64_t truncation, std::uint64_t seed, int workers) {
            IntegrabilityReport r;
            {
                py::gil_scoped_release release;
                r = integrability_diagnostic(family, samples, truncation, seed, workers);
            }
            py::list rows;
            for (const auto& c : r.checkpoints) {
                py::dict row;
                row["samples"] = c.samples;
                row["running_mean"] = c.running_mean;
                row["truncated_mean"] = c.truncated_mean;
                row["truncated_std_error"] = c.truncated_std_error;
                rows.append(row);
            }
            py::dict d;
            d["checkpoints"] = rows;
            d["analytic_truncated"] = r.analytic_truncated;
            d["fixed_point_log_moment"] = r.fixed_point_log_moment;
            return d;
        },
        py::arg("family"), py::arg("samples"), py::arg("K0") = 20, py::arg("seed") = 1, py::arg("workers") = 1);

    m.def(
        "survival_curve",
        [](std::int64_t k, double z0, const std::vector<std::int64_t>& ns, std::int64_t samples,
           std::uint64_t seed, int workers) {
            SurvivalCurve c;
            {
                py::gil_scoped_release release;
                c = survival_curve(k, z0, ns, samples, seed, workers);
            }
            py::list rows;
            for (const auto& r : c.rows) {
                py::dict row;
                row["n"] = r.n;
                row["p_hat"] = r.p_below_one.value;
                row["half_width"] = r.p_below_one.half_width();
                row["bound"] = r.bound.value();
                row["bound_exact"] = r.bound.to_string();
                rows.append(row);
            }
            return rows;
        },
        py::arg("k"), py::arg("z0"), py::arg("n"), py::arg("samples"), py::arg("seed"), py::arg("workers") = 1);
    m.def(
        "pullback_diameter",
        [](const NoisePath& path, double radius, std::int64_t n) { return pullback_diameter(path, radius, n); },
        py::arg("path"), py::arg("R"), py::arg("n"));
    m.def(
        "pullback_diameter_curve",
        [](double radius, double eps, const std::vector<std::int64_t>& ns, std::int64_t samples,
           std::uint64_t seed, int workers) {
            PullbackDiameterCurve c;
            {
                py::gil_scoped_release release;
                c = pullback_diameter_curve(radius, eps, ns, samples, seed, workers);
            }
            py::list rows;
            for (const auto& r : c.rows) {
                py::dict row;
                row["n"] = r.n;
                row["p_exceed"] = r.p_exceed.value;
                row["half_width"] = r.p_exceed.half_width();
                row["median_diameter"] = r.median_diameter;
                rows.append(row);
            }
            return rows;
        },
        py::arg("R"), py::arg("eps"), py::arg("n"), py::arg("samples"), py::arg("seed"), py::arg("workers") = 1);
    m.def(
        "dual_forward_curve",
        [](double radius, double eps, const std::vector<std::int64_t>& ns, std::int64_t samples,
           std::uint64_t seed, int workers) {
            std::vector<Estimate> est;
            {
                py::gil_scoped_release release;
                est = dual_forward_curve(radius, eps, ns, samples, seed, workers);
            }
            std::vector<double> out;
            for (const auto& e : est) out.push_back(e.value);
            return out;
        },
        py::arg("R"), py::arg("eps"), py::arg("n"), py::arg("samples"), py::arg("seed"), py::arg("workers") = 1);
    m.def(
        "stable_set_probe",
        [](Family family, const NoisePath& path, double x, double y, double mu, double beta, std::int64_t n) {
            const auto r = stable_set_probe(family, path, x, y, mu, beta, n);
            return py::make_tuple(r.holds, optional_int(r.failed_at));
        },
        py::arg("family"), py::arg("path"), py::arg("x"), py::arg("y"), py::arg("mu"), py::arg("beta"),
        py::arg("n"));
    m.def(
        "unstable_set_probe",
        [](Family family, const NoisePath& path, double x0, double mu, double beta, std::int64_t n) {
            const auto r = unstable_set_probe(family, path, x0, mu, beta, n);
            return py::make_tuple(r.exited, optional_int(r.exit_step));
        },
        py::arg("family"), py::arg("path"), py::arg("x0"), py::arg("mu"), py::arg("beta"), py::arg("n"));

    m.def(
        "survival_bound",
        [](std::int64_t k, std::int64_t n) {
            const Rational r = survival_bound(k, n);
            return py::make_tuple(r.num(), r.den());
        },
        py::arg("k"), py::arg("n"));
    m.def("exact_exponent", &exact_exponent, py::arg("family"));
    m.def("truncated_log_moment", &truncated_log_moment, py::arg("K0") = py::none());
    m.def(
        "tail_probability",
        [](std::int64_t k) {
            const Rational r = tail_probability(k);
            return py::make_tuple(r.num(), r.den());
        },
        py::arg("k"));

    m.def("selftest", [](std::uint64_t seed) {
        py::list out;
        for (const auto& r : run_selftest(seed)) out.append(py::make_tuple(r.name, r.passed, r.detail));
        return out;
    }, py::arg("seed") = 1);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out;
            std::ostringstream err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = cli::run(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs an rdsim command in-process; returns (exit_code, stdout, stderr).");
}
