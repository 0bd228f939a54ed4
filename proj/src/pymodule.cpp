// Python bindings for the main operations: domain catalog, Lyapunov reports,
// coupling simulation, Skorokhod transform, harmonic-measure backends.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rbm/config.hpp"
#include "rbm/coupling.hpp"
#include "rbm/harmonic.hpp"
#include "rbm/lyapunov.hpp"
#include "rbm/skorokhod.hpp"

namespace py = pybind11;
using namespace rbm;

namespace {

std::pair<std::vector<double>, std::vector<std::vector<double>>> transform_impl(
    const Domain* domain, const std::vector<double>& t,
    const std::vector<std::pair<double, double>>& gamma, double h_max) {
    DrivingPath path;
    path.t = t;
    for (auto [x, y] : gamma) path.gamma.push_back({x, y});
    ReflectedPath rp = domain ? skorokhod_transform(*domain, path, h_max)
                              : skorokhod_transform(HalfPlane{}, path, h_max);
    std::vector<std::vector<double>> cols(3);
    for (std::size_t k = 0; k < rp.t.size(); ++k) {
        cols[0].push_back(rp.beta[k].x);
        cols[1].push_back(rp.beta[k].y);
        cols[2].push_back(rp.local_time[k]);
    }
    return {rp.t, cols};
}

} // namespace

PYBIND11_MODULE(_rbm, m) {
    m.doc() = "Lyapunov exponents and synchronous couplings of reflected Brownian motions";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<double, double>())
        .def_readonly("x", &Vec2::x)
        .def_readonly("y", &Vec2::y)
        .def("__repr__", [](const Vec2& v) {
            return "Vec2(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")";
        });

    py::class_<BoundaryPoint>(m, "BoundaryPoint")
        .def_readonly("curve_index", &BoundaryPoint::curve_index)
        .def_readonly("u", &BoundaryPoint::u)
        .def_readonly("position", &BoundaryPoint::position)
        .def_readonly("inward_normal", &BoundaryPoint::inward_normal)
        .def_readonly("tangent", &BoundaryPoint::tangent)
        .def_readonly("curvature", &BoundaryPoint::curvature);

    py::class_<Domain>(m, "Domain")
        .def_static("disc", &Domain::disc, py::arg("radius") = 1.0, py::arg("n_quad") = 256)
        .def_static("ellipse", &Domain::ellipse, py::arg("semi_a"), py::arg("semi_b"),
                    py::arg("n_quad") = 256)
        .def_static("annulus", &Domain::annulus, py::arg("r_inner"), py::arg("r_outer"),
                    py::arg("n_quad") = 256)
        .def_static("disc_exterior", &Domain::disc_exterior, py::arg("radius") = 1.0,
                    py::arg("n_quad") = 256)
        .def_static("ellipse_exterior", &Domain::ellipse_exterior, py::arg("a"),
                    py::arg("n_quad") = 256)
        .def_static("disc_with_holes", &Domain::disc_with_holes, py::arg("outer_radius"),
                    py::arg("hole_centers"), py::arg("hole_radii"), py::arg("n_quad") = 256)
        .def("area", &Domain::area)
        .def("boundary_length", &Domain::boundary_length)
        .def("feature_size", &Domain::feature_size)
        .def("hole_count", &Domain::hole_count)
        .def("euler_char", &Domain::euler_char)
        .def("is_exterior", &Domain::is_exterior)
        .def("curvature_integral", &Domain::curvature_integral)
        .def("contains", [](const Domain& d, double x, double y) { return d.contains({x, y}); })
        .def("boundary_point", &Domain::boundary_point, py::arg("curve_index"), py::arg("u"))
        .def("project",
             [](const Domain& d, double x, double y) {
                 ProjectionResult r = d.project_to_boundary({x, y});
                 return py::make_tuple(r.point, r.distance);
             })
        .def("scaled", &Domain::scaled);

    m.def("tangent_angle_alpha", &tangent_angle_alpha);
    m.def("abs_log_cos_alpha", &abs_log_cos_alpha);
    m.def("disc_exterior_half_range_integrals", &disc_exterior_half_range_integrals,
          py::arg("tol") = 1e-10);

    py::class_<QuadConfig>(m, "QuadConfig")
        .def(py::init<>())
        .def_readwrite("outer_nodes", &QuadConfig::outer_nodes)
        .def_readwrite("inner_tol", &QuadConfig::inner_tol)
        .def_readwrite("nystrom_panels", &QuadConfig::nystrom_panels)
        .def_readwrite("nystrom_delta0", &QuadConfig::nystrom_delta0);

    py::class_<LyapunovReport>(m, "LyapunovReport")
        .def_readonly("domain_id", &LyapunovReport::domain_id)
        .def_readonly("holes", &LyapunovReport::holes)
        .def_readonly("curvature_term", &LyapunovReport::curvature_term)
        .def_readonly("cross_term", &LyapunovReport::cross_term)
        .def_readonly("lambda_", &LyapunovReport::lambda)
        .def_readonly("chi_gap", &LyapunovReport::chi_gap)
        .def_readonly("chi_ok", &LyapunovReport::chi_ok)
        .def_readonly("area", &LyapunovReport::area)
        .def_readonly("decay_rate", &LyapunovReport::decay_rate)
        .def_readonly("err_curv", &LyapunovReport::err_curv)
        .def_readonly("err_cross", &LyapunovReport::err_cross)
        .def_readonly("backend", &LyapunovReport::backend);

    m.def(
        "lambda_report",
        [](const Domain& domain, const std::string& backend, const QuadConfig& cfg,
           int panels) {
            HarmonicMeasure hm = backend == "nystrom"
                                     ? HarmonicMeasure::nystrom(domain, panels)
                                     : HarmonicMeasure::exact(domain);
            return lambda_report(domain, hm, cfg);
        },
        py::arg("domain"), py::arg("backend") = "exact", py::arg("quad") = QuadConfig{},
        py::arg("panels") = 256);
    m.def("lambda_ellipse_exterior", &lambda_ellipse_exterior, py::arg("a"),
          py::arg("quad") = QuadConfig{});
    m.def("ellipse_exterior_cross_term", &ellipse_exterior_cross_term, py::arg("a"),
          py::arg("quad") = QuadConfig{});

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("h", &SimConfig::h)
        .def_readwrite("T", &SimConfig::T)
        .def_readwrite("x0", &SimConfig::x0)
        .def_readwrite("y0", &SimConfig::y0)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("thin_stride", &SimConfig::thin_stride)
        .def_readwrite("d_exc", &SimConfig::d_exc);

    py::class_<SlopeFit>(m, "SlopeFit")
        .def_readonly("slope", &SlopeFit::slope)
        .def_readonly("std_error", &SlopeFit::std_error)
        .def_readonly("points", &SlopeFit::points);

    py::class_<CouplingStats>(m, "CouplingStats")
        .def_readonly("degenerate", &CouplingStats::degenerate)
        .def_readonly("t", &CouplingStats::t)
        .def_readonly("d", &CouplingStats::d)
        .def_readonly("lx", &CouplingStats::lx)
        .def_readonly("ly", &CouplingStats::ly)
        .def_readonly("functional_names", &CouplingStats::functional_names)
        .def_readonly("functional_running", &CouplingStats::functional_running)
        .def_readonly("excursion_running", &CouplingStats::excursion_running)
        .def_readonly("excursion_log_cos_sum", &CouplingStats::excursion_log_cos_sum)
        .def_readonly("final_lx", &CouplingStats::final_lx)
        .def_readonly("final_ly", &CouplingStats::final_ly)
        .def_readonly("steps", &CouplingStats::steps);

    m.def(
        "simulate_coupling",
        [](const Domain& domain, const SimConfig& cfg, bool with_functionals) {
            std::vector<FunctionalSpec> funcs;
            if (with_functionals) {
                funcs.push_back({"one", [](const BoundaryPoint&) { return 1.0; }});
                funcs.push_back({"nu", [](const BoundaryPoint& p) { return p.curvature; }});
            }
            return simulate_coupling(domain, cfg, funcs);
        },
        py::arg("domain"), py::arg("config"), py::arg("with_functionals") = true,
        py::call_guard<py::gil_scoped_release>());
    m.def("estimate_decay_rate", &estimate_decay_rate, py::arg("stats"),
          py::arg("burn_in_fraction") = 0.1);
    m.def("inverse_local_time", &inverse_local_time);

    py::class_<WosConfig>(m, "WosConfig")
        .def(py::init<>())
        .def_readwrite("walkers", &WosConfig::walkers)
        .def_readwrite("eps_abs", &WosConfig::eps_abs)
        .def_readwrite("max_steps", &WosConfig::max_steps)
        .def_readwrite("seed", &WosConfig::seed)
        .def_readwrite("workers", &WosConfig::workers);

    m.def(
        "wos_hit_fraction",
        [](const Domain& domain, double x, double y, int curve_index, double u0, double u1,
           const WosConfig& cfg) {
            HitFraction h;
            {
                // release the GIL for the walk only; building the result tuple
                // needs it back
                py::gil_scoped_release release;
                h = wos_hit_fraction(domain, {x, y}, curve_index, u0, u1, cfg);
            }
            return py::make_tuple(h.probability, h.std_error, h.non_converged);
        },
        py::arg("domain"), py::arg("x"), py::arg("y"), py::arg("curve_index"),
        py::arg("u0") = 0.0, py::arg("u1") = 1.0, py::arg("config") = WosConfig{});

    m.def("exact_disc_density", &density_exact_disc_interior);
    m.def("half_plane_density", &density_half_plane);

    m.def(
        "skorokhod_transform",
        [](const std::vector<double>& t, const std::vector<std::pair<double, double>>& gamma,
           double h_max) { return transform_impl(nullptr, t, gamma, h_max); },
        py::arg("t"), py::arg("gamma"), py::arg("h_max") = 1e-3,
        "reflect a polyline in the upper half-plane; returns (t, [x, y, local_time])");
    m.def(
        "skorokhod_transform_domain",
        [](const Domain& d, const std::vector<double>& t,
           const std::vector<std::pair<double, double>>& gamma, double h_max) {
            return transform_impl(&d, t, gamma, h_max);
        },
        py::arg("domain"), py::arg("t"), py::arg("gamma"), py::arg("h_max") = 1e-3);
}
