#include "rbm/lyapunov.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "rbm/errors.hpp"
#include "rbm/nystrom.hpp"
#include "rbm/quadrature.hpp"

namespace rbm {

namespace {
constexpr double kPi = 3.141592653589793238;
constexpr double kTwoPi = 6.283185307179586477;

double wrap_unit(double u) { return u - std::floor(u); }

// parameter distance on the circle [0,1)
double param_gap(double a, double b) {
    double d = std::abs(wrap_unit(a) - wrap_unit(b));
    return std::min(d, 1.0 - d);
}

double log_cos_from_tangents(Vec2 tx, Vec2 ty) {
    double c = std::abs(dot(tx, ty));
    double s = std::abs(cross(tx, ty));
    double alpha = std::atan2(s, c); // in [0, pi/2], accurate at both ends
    if (alpha < 1e-4) {
        double a2 = alpha * alpha;
        return a2 / 2.0 + a2 * a2 / 12.0 + a2 * a2 * a2 / 45.0;
    }
    return -std::log(std::max(std::cos(alpha), 1e-300));
}

// locate zeros of u -> dot(t_x, tangent(u)) on one curve (candidates for the
// alpha = pi/2 log singularity); scan + bisection
std::vector<double> perpendicular_params(const BoundaryCurve& c, Vec2 tx, int scan_n) {
    std::vector<double> zeros;
    double prev = dot(tx, c.unit_tangent(0.0));
    for (int i = 1; i <= scan_n; ++i) {
        double u = double(i) / scan_n;
        double cur = dot(tx, c.unit_tangent(wrap_unit(u)));
        if ((prev < 0.0) != (cur < 0.0)) {
            double lo = double(i - 1) / scan_n, hi = u, flo = prev;
            for (int k = 0; k < 60; ++k) {
                double mid = 0.5 * (lo + hi);
                double fm = dot(tx, c.unit_tangent(wrap_unit(mid)));
                if ((flo < 0.0) == (fm < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            zeros.push_back(0.5 * (lo + hi));
        }
        prev = cur;
    }
    return zeros;
}
} // namespace

double diagonal_limit_value(const BoundaryPoint& x) {
    return x.curvature * x.curvature / kTwoPi;
}

double abs_log_cos_alpha(const BoundaryPoint& x, const BoundaryPoint& y) {
    return log_cos_from_tangents(x.tangent, y.tangent);
}

namespace {

// inner integral over the whole boundary for one fixed x, exact (closed-form
// kernel) backend: adaptive quadrature in the curve parameter
double inner_integral_exact(const Domain& domain, const HarmonicMeasure& hm,
                            const BoundaryPoint& x, double tol) {
    double total = 0.0;
    double diag_guard = 1e-9; // parameter half-width treated as "on the diagonal"
    for (int ci = 0; ci < int(domain.curves().size()); ++ci) {
        const auto& c = domain.curves()[std::size_t(ci)];
        bool same_curve = (ci == x.curve_index);
        auto f = [&](double u) {
            u = wrap_unit(u);
            if (same_curve && param_gap(u, x.u) < diag_guard)
                return diagonal_limit_value(x) * c.speed(u);
            BoundaryPoint y = domain.boundary_point(ci, u);
            double rho = hm.density(x, y).density;
            return log_cos_from_tangents(x.tangent, y.tangent) * rho * c.speed(u);
        };
        std::vector<double> splits = perpendicular_params(c, x.tangent, 4 * c.n_quad());
        if (same_curve) splits.push_back(x.u);
        total += integrate_adaptive_split(f, 0.0, 1.0, splits, tol).value;
    }
    return total;
}

std::pair<double, double> cross_term_exact(const Domain& domain, const HarmonicMeasure& hm,
                                           const QuadConfig& cfg) {
    auto outer = [&](int n) {
        double s = 0.0;
        for (int ci = 0; ci < int(domain.curves().size()); ++ci) {
            const auto& c = domain.curves()[std::size_t(ci)];
            for (int i = 0; i < n; ++i) {
                double u = double(i) / n;
                BoundaryPoint x = domain.boundary_point(ci, u);
                s += inner_integral_exact(domain, hm, x, cfg.inner_tol) * c.speed(u) / n;
            }
        }
        return s;
    };
    double coarse = outer(cfg.outer_nodes / 2);
    double fine = outer(cfg.outer_nodes);
    double err = std::abs(fine - coarse) + cfg.inner_tol * domain.boundary_length();
    return {fine, err};
}

// inner integral for the Nystrom backend: trapezoid over solver nodes with
// the near-diagonal band replaced by the normalization asymptotics
// omega ~ 1/(pi d^2), plus adaptive treatment of cells where alpha ~ pi/2
std::pair<double, double> inner_integral_nystrom(const Domain& domain,
                                                 const NystromSolver& solver,
                                                 const BoundaryPoint& x,
                                                 const std::vector<double>& omega,
                                                 const std::vector<double>& omega_err,
                                                 double band) {
    double s = 0.0, e = 0.0;
    int N = solver.node_count();
    for (int j = 0; j < N; ++j) {
        BoundaryPoint y = domain.boundary_point(solver.node_curve(j), solver.node_u(j));
        double d = dist(x.position, y.position);
        double w = solver.node_weight(j);
        double val;
        if (d < 1e-12 * domain.diameter()) {
            val = diagonal_limit_value(x);
        } else {
            double rho = d < band ? 1.0 / (kPi * d * d) : omega[std::size_t(j)];
            double lc = log_cos_from_tangents(x.tangent, y.tangent);
            if (d >= band) e += lc * omega_err[std::size_t(j)] * w;
            double cosa = std::abs(dot(x.tangent, y.tangent));
            if (cosa < 0.05) {
                // integrable log singularity: integrate |log cos| over the
                // cell with the density frozen at the node
                const auto& c = domain.curves()[std::size_t(y.curve_index)];
                double hu = 1.0 / solver.panels();
                auto cell = integrate_adaptive(
                    [&](double u) {
                        return log_cos_from_tangents(x.tangent, c.unit_tangent(wrap_unit(u))) *
                               c.speed(wrap_unit(u));
                    },
                    y.u - hu / 2, y.u + hu / 2, 1e-10, 30);
                s += cell.value * rho;
                continue;
            }
            val = lc * rho;
        }
        s += val * w;
    }
    return {s, e};
}

std::pair<double, double> cross_term_nystrom(const Domain& domain, const HarmonicMeasure& hm,
                                             const QuadConfig& cfg) {
    const NystromSolver& solver = *hm.solver();
    double band = 8.0 * domain.boundary_length() /
                  (double(solver.panels()) * double(domain.curves().size()));
    band = std::min(band, 0.5 * domain.feature_size());
    double delta0 = cfg.nystrom_delta0;

    auto outer = [&](int n) {
        double s = 0.0, e = 0.0;
        for (int ci = 0; ci < int(domain.curves().size()); ++ci) {
            const auto& c = domain.curves()[std::size_t(ci)];
            for (int i = 0; i < n; ++i) {
                double u = double(i) / n;
                BoundaryPoint x = domain.boundary_point(ci, u);
                std::vector<double> omega = solver.boundary_density_nodes(x, delta0);
                auto [inner, inner_err] = inner_integral_nystrom(
                    domain, solver, x, omega, solver.last_error_nodes(), band);
                s += inner * c.speed(u) / n;
                e += inner_err * c.speed(u) / n;
            }
        }
        return std::pair<double, double>{s, e};
    };
    auto [coarse, coarse_err] = outer(cfg.outer_nodes / 2);
    auto [fine, density_err] = outer(cfg.outer_nodes);
    (void)coarse_err;
    // the near-diagonal asymptotic band contributes an O(band^2) model error
    double band_err = 0.0;
    for (const auto& c : domain.curves())
        for (int i = 0; i < 16; ++i) {
            double nu = c.signed_curvature(i / 16.0);
            band_err = std::max(band_err, nu * nu * band * band);
        }
    double err = std::abs(fine - coarse) + band_err + density_err;
    return {fine, err};
}

} // namespace

std::pair<double, double> cross_term(const Domain& domain, const HarmonicMeasure& hm,
                                     const QuadConfig& cfg) {
    switch (hm.backend()) {
        case HarmonicMeasure::Backend::Exact:
            return cross_term_exact(domain, hm, cfg);
        case HarmonicMeasure::Backend::Nystrom:
            return cross_term_nystrom(domain, hm, cfg);
        case HarmonicMeasure::Backend::WosMc:
            throw ConfigError(
                "cross_term needs the exact or nystrom backend; the MC backend is for "
                "pointwise cross-validation");
    }
    return {};
}

LyapunovReport lambda_report(const Domain& domain, const HarmonicMeasure& hm,
                             const QuadConfig& cfg) {
    LyapunovReport r;
    auto [curv, curv_err] = domain.curvature_integral();
    r.curvature_term = curv;
    r.err_curv = curv_err;
    auto [cross, cross_err] = cross_term(domain, hm, cfg);
    r.cross_term = cross;
    r.err_cross = cross_err;
    r.lambda = r.curvature_term + r.cross_term;
    r.holes = domain.hole_count();
    r.chi_gap = std::abs(r.curvature_term - kTwoPi * domain.euler_char());
    r.chi_ok = r.chi_gap < 1e-6;
    if (domain.is_exterior()) {
        r.area = std::numeric_limits<double>::infinity();
    } else {
        r.area = domain.area();
        r.decay_rate = -r.lambda / (2.0 * r.area);
    }
    r.backend = hm.backend_name();
    r.nodes = cfg.outer_nodes;
    return r;
}

std::pair<double, double> disc_exterior_half_range_integrals(double tol) {
    // kernel 1/(4 pi sin^2(D/2)); the integrand is finite at D = 0 (limit
    // 1/(2 pi)) and has an integrable log singularity at D = pi/2
    auto f = [](double d) {
        double lc;
        if (d < 1e-4) {
            double d2 = d * d;
            lc = d2 / 2.0 + d2 * d2 / 12.0;
        } else {
            lc = std::abs(std::log(std::abs(std::cos(d))));
        }
        double s = std::sin(d / 2.0);
        return lc / (4.0 * kPi * s * s);
    };
    double near = 2.0 * kTwoPi * integrate_adaptive(f, 1e-13, kPi / 2.0, tol).value;
    double far = 2.0 * kTwoPi * integrate_adaptive(f, kPi / 2.0, kPi, tol).value;
    return {near, far};
}

double ellipse_pullback_inner_closed_form(double a, double t) {
    std::complex<double> y = std::polar(1.0, t);
    return (1.0 - a * a) / std::norm(1.0 - a * y * y);
}

double ellipse_exterior_cross_term(double a, const QuadConfig& cfg) {
    if (a <= 0.0 || a >= 1.0) throw DomainError("map parameter a must lie in (0,1)");
    using cplx = std::complex<double>;
    auto gp = [a](cplx z) { return 1.0 - a / (z * z); };

    // |log cos alpha(g(x), g(y))| / |x - y|^2 with x = e^{is}, y = e^{it};
    // cos alpha = |Re( x g'(x)/|g'(x)| * |g'(y)| / (y g'(y)) )|
    auto integrand = [&](double s, double t) {
        cplx x = std::polar(1.0, s), y = std::polar(1.0, t);
        cplx tx = x * gp(x), ty = y * gp(y);
        double re = (tx / std::abs(tx) * (std::abs(ty) / ty)).real();
        double im = (tx / std::abs(tx) * (std::abs(ty) / ty)).imag();
        double alpha = std::atan2(std::abs(im), std::abs(re));
        double lc;
        if (alpha < 1e-4) {
            double a2 = alpha * alpha;
            lc = a2 / 2.0 + a2 * a2 / 12.0;
        } else {
            lc = -std::log(std::max(std::cos(alpha), 1e-300));
        }
        double d2 = std::norm(x - y);
        if (d2 < 1e-28) {
            // diagonal limit: alpha ~ kappa(t) |s-t| in the pullback metric
            // handled by continuity; the cell is negligible at this width
            return 0.0;
        }
        return lc / d2;
    };

    auto inner = [&](double t) {
        auto f = [&](double s) { return integrand(s, t); };
        // split at the diagonal and at the perpendicular-tangent angles
        std::vector<double> splits{t};
        int scan = 512;
        double prev = 0.0;
        bool have_prev = false;
        for (int i = 0; i <= scan; ++i) {
            double s = t + kTwoPi * double(i) / scan;
            if (param_gap((s - t) / kTwoPi, 0.0) < 1e-9) continue;
            cplx x = std::polar(1.0, s), y = std::polar(1.0, t);
            cplx tx = x * gp(x), ty = y * gp(y);
            double re = (tx / std::abs(tx) * (std::abs(ty) / ty)).real();
            if (have_prev && (prev < 0.0) != (re < 0.0))
                splits.push_back(t + kTwoPi * (double(i) - 0.5) / scan);
            prev = re;
            have_prev = true;
        }
        return integrate_adaptive_split(f, t, t + kTwoPi, splits, cfg.inner_tol).value;
    };

    // spectral in n; 256 resolves the a -> 1 boundary layer well past 1e-9
    int n = std::max(cfg.outer_nodes, 256);
    double total = trapezoid_periodic(n, [&](double u) { return inner(kTwoPi * u); }) * kTwoPi;
    return total / kPi;
}

LyapunovReport lambda_ellipse_exterior(double a, const QuadConfig& cfg) {
    Domain d = Domain::ellipse_exterior(a);
    LyapunovReport r;
    auto [curv, curv_err] = d.curvature_integral();
    r.curvature_term = curv;
    r.err_curv = curv_err;
    r.cross_term = ellipse_exterior_cross_term(a, cfg);
    r.err_cross = cfg.inner_tol * kTwoPi + 1e-9;
    r.lambda = r.curvature_term + r.cross_term;
    r.holes = 0;
    r.chi_gap = std::abs(r.curvature_term - kTwoPi * d.euler_char());
    r.chi_ok = r.chi_gap < 1e-6;
    r.area = std::numeric_limits<double>::infinity();
    r.backend = "ellipse-pullback";
    r.nodes = cfg.outer_nodes;
    return r;
}

ScalingCheck scaling_invariance_check(const Domain& domain, double scale,
                                      HarmonicMeasure::Backend backend, const QuadConfig& cfg) {
    Domain scaled = domain.scaled(scale);
    auto make = [&](const Domain& d) {
        switch (backend) {
            case HarmonicMeasure::Backend::Exact: return HarmonicMeasure::exact(d);
            case HarmonicMeasure::Backend::Nystrom:
                return HarmonicMeasure::nystrom(d, cfg.nystrom_panels);
            default: throw ConfigError("scaling check supports exact/nystrom backends");
        }
    };
    HarmonicMeasure hm_base = make(domain);
    HarmonicMeasure hm_scaled = make(scaled);
    LyapunovReport base = lambda_report(domain, hm_base, cfg);
    LyapunovReport sc = lambda_report(scaled, hm_scaled, cfg);
    ScalingCheck out;
    out.lambda_base = base.lambda;
    out.lambda_scaled = sc.lambda;
    out.difference = std::abs(base.lambda - sc.lambda);
    out.combined_error =
        base.err_curv + base.err_cross + sc.err_curv + sc.err_cross + 1e-12;
    return out;
}

std::vector<SweepRow> hole_sweep(double outer_radius, const std::vector<HoleSpec>& holes,
                                 const QuadConfig& cfg) {
    // geometry validator: small, well separated holes
    double max_diam = 0.0;
    for (const auto& h : holes) max_diam = std::max(max_diam, 2.0 * h.radius);
    for (std::size_t i = 0; i < holes.size(); ++i) {
        double to_outer = outer_radius - (holes[i].center.norm() + holes[i].radius);
        if (to_outer < 10.0 * max_diam)
            throw ConfigError("hole too close to the outer boundary (gap < 10x max diameter)");
        for (std::size_t j = i + 1; j < holes.size(); ++j) {
            double gap = dist(holes[i].center, holes[j].center) - holes[i].radius -
                         holes[j].radius;
            if (gap < 10.0 * max_diam)
                throw ConfigError("holes too close together (gap < 10x max diameter)");
        }
    }

    std::vector<SweepRow> rows;
    for (std::size_t k = 0; k <= holes.size(); ++k) {
        std::vector<Vec2> centers;
        std::vector<double> radii;
        for (std::size_t i = 0; i < k; ++i) {
            centers.push_back(holes[i].center);
            radii.push_back(holes[i].radius);
        }
        Domain d = Domain::disc_with_holes(outer_radius, centers, radii);
        SweepRow row;
        if (k == 0) {
            HarmonicMeasure hm = HarmonicMeasure::exact(d);
            row.report = lambda_report(d, hm, cfg);
        } else {
            HarmonicMeasure hm = HarmonicMeasure::nystrom(d, cfg.nystrom_panels);
            row.report = lambda_report(d, hm, cfg);
        }
        row.report.domain_id = "disc_with_holes:" + std::to_string(k);
        // separated-sum heuristic: disc component contributes 4 pi, each
        // small disc hole contributes the disc-exterior value 0
        row.separated_sum = 2.0 * kTwoPi;
        row.decomposition_gap = row.report.lambda - row.separated_sum;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace rbm
