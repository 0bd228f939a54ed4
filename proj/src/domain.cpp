#include "rbm/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rbm/errors.hpp"

namespace rbm {

namespace {
constexpr double kTwoPi = 6.283185307179586477;

double wrap_unit(double u) {
    u -= std::floor(u);
    return u;
}

// periodic trapezoid rule over [0,1)
template <class F>
double trapezoid(int n, F&& f) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += f(double(i) / n);
    return s / n;
}

double signed_enclosed_area(const BoundaryCurve& c) {
    int n = std::max(c.n_quad(), 256);
    return trapezoid(n, [&](double u) {
        return 0.5 * cross(c.position(u), c.derivative(u));
    });
}
} // namespace

double tangent_angle_alpha(const BoundaryPoint& x, const BoundaryPoint& y) {
    double c = std::abs(dot(x.tangent, y.tangent));
    return std::acos(std::clamp(c, 0.0, 1.0));
}

Domain Domain::disc(double radius, int n_quad) {
    Domain d;
    d.curves_.push_back(BoundaryCurve::circle({0, 0}, radius, true, n_quad));
    return d;
}

Domain Domain::ellipse(double semi_a, double semi_b, int n_quad) {
    Domain d;
    d.curves_.push_back(BoundaryCurve::ellipse({0, 0}, semi_a, semi_b, true, n_quad));
    return d;
}

Domain Domain::annulus(double r_inner, double r_outer, int n_quad) {
    if (!(0.0 < r_inner && r_inner < r_outer))
        throw ConfigError("annulus needs 0 < r_inner < r_outer");
    Domain d;
    d.curves_.push_back(BoundaryCurve::circle({0, 0}, r_outer, true, n_quad));
    d.curves_.push_back(BoundaryCurve::circle({0, 0}, r_inner, false, n_quad));
    return d;
}

Domain Domain::disc_exterior(double radius, int n_quad) {
    Domain d;
    d.curves_.push_back(BoundaryCurve::circle({0, 0}, radius, false, n_quad));
    d.exterior_ = Exterior::Disc;
    d.exterior_param_ = radius;
    return d;
}

Domain Domain::ellipse_exterior(double a, int n_quad) {
    Domain d;
    d.curves_.push_back(BoundaryCurve::mapped_ellipse_exterior(a, n_quad));
    d.exterior_ = Exterior::Ellipse;
    d.exterior_param_ = a;
    return d;
}

Domain Domain::from_curves(std::vector<BoundaryCurve> curves) {
    if (curves.empty()) throw ConfigError("domain needs at least one curve");
    Domain d;
    d.curves_ = std::move(curves);
    for (const auto& c : d.curves_) c.validate();
    // holes strictly inside the outer curve and pairwise disjoint
    const auto& outer = d.curves_.front();
    for (std::size_t i = 1; i < d.curves_.size(); ++i) {
        int n = 64;
        for (int k = 0; k < n; ++k) {
            Vec2 p = d.curves_[i].position(double(k) / n);
            if (!d.inside_curve(outer, p))
                throw ConfigError("hole curve is not inside the outer curve");
            for (std::size_t j = 1; j < i; ++j)
                if (d.inside_curve(d.curves_[j], p))
                    throw ConfigError("hole curves overlap");
        }
    }
    if (d.area() <= 0.0) throw ConfigError("domain has non-positive area");
    return d;
}

Domain Domain::disc_with_holes(double outer_radius, const std::vector<Vec2>& hole_centers,
                               const std::vector<double>& hole_radii, int n_quad) {
    if (hole_centers.size() != hole_radii.size())
        throw ConfigError("hole centers/radii length mismatch");
    std::vector<BoundaryCurve> cs;
    cs.push_back(BoundaryCurve::circle({0, 0}, outer_radius, true, n_quad));
    for (std::size_t i = 0; i < hole_centers.size(); ++i)
        cs.push_back(BoundaryCurve::circle(hole_centers[i], hole_radii[i], false, n_quad));
    return from_curves(std::move(cs));
}

Domain Domain::scaled(double a) const {
    if (a <= 0.0) throw ConfigError("scale factor must be positive");
    if (is_exterior()) throw DomainError("scaling is supported for bounded domains only");
    Domain d;
    d.exterior_ = Exterior::None;
    for (const auto& c : curves_) {
        switch (c.kind()) {
            case BoundaryCurve::Kind::Circle: {
                // reconstruct center/radius from the parametrization
                Vec2 p0 = c.position(0.0), p2 = c.position(0.5);
                Vec2 center = (p0 + p2) / 2.0;
                double r = dist(p0, p2) / 2.0;
                d.curves_.push_back(
                    BoundaryCurve::circle(center * a, r * a, c.interior_on_left(), c.n_quad()));
                break;
            }
            case BoundaryCurve::Kind::Ellipse: {
                Vec2 p0 = c.position(0.0), p2 = c.position(0.5), p1 = c.position(0.25);
                Vec2 center = (p0 + p2) / 2.0;
                double sa = dist(p0, p2) / 2.0;
                double sb = dist(p1, center);
                d.curves_.push_back(BoundaryCurve::ellipse(center * a, sa * a, sb * a,
                                                           c.interior_on_left(), c.n_quad()));
                break;
            }
            default:
                throw DomainError("scaling implemented for circle/ellipse curves only");
        }
    }
    return d;
}

int Domain::hole_count() const {
    return is_exterior() ? 0 : int(curves_.size()) - 1;
}

int Domain::euler_char() const {
    // bounded: 1 - holes. For exteriors the convention -1 makes the
    // Gauss-Bonnet identity hold with the inward-of-domain curvature sign.
    return is_exterior() ? -1 : 1 - hole_count();
}

double Domain::area() const {
    if (is_exterior()) throw DomainError("exterior domain has infinite area");
    double a = 0.0;
    for (const auto& c : curves_) {
        double sa = signed_enclosed_area(c);
        a += c.interior_on_left() ? sa : -sa;
    }
    return a;
}

double Domain::boundary_length() const {
    double len = 0.0;
    for (const auto& c : curves_) {
        int n = std::max(c.n_quad(), 256);
        len += trapezoid(n, [&](double u) { return c.speed(u); });
    }
    return len;
}

double Domain::diameter() const {
    if (cached_diameter_ > 0.0) return cached_diameter_;
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (const auto& c : curves_)
        for (int i = 0; i < 256; ++i) {
            Vec2 p = c.position(i / 256.0);
            lo_x = std::min(lo_x, p.x);
            hi_x = std::max(hi_x, p.x);
            lo_y = std::min(lo_y, p.y);
            hi_y = std::max(hi_y, p.y);
        }
    cached_diameter_ = std::hypot(hi_x - lo_x, hi_y - lo_y);
    return cached_diameter_;
}

double Domain::feature_size() const {
    if (cached_feature_ > 0.0) return cached_feature_;
    double f = diameter();
    const int n = 256;
    for (const auto& c : curves_)
        for (int i = 0; i < n; ++i) {
            double nu = c.signed_curvature(double(i) / n);
            if (std::abs(nu) > 1e-12) f = std::min(f, 1.0 / std::abs(nu));
        }
    // gaps between distinct boundary components
    for (std::size_t a = 0; a < curves_.size(); ++a)
        for (std::size_t b = a + 1; b < curves_.size(); ++b)
            for (int i = 0; i < n; ++i) {
                Vec2 p = curves_[a].position(double(i) / n);
                auto [u, dst] = project_to_curve(curves_[b], p);
                (void)u;
                f = std::min(f, dst);
            }
    cached_feature_ = f;
    return f;
}

BoundaryPoint Domain::boundary_point(int curve_index, double u) const {
    const auto& c = curves_.at(std::size_t(curve_index));
    u = wrap_unit(u);
    BoundaryPoint p;
    p.curve_index = curve_index;
    p.u = u;
    p.position = c.position(u);
    p.tangent = c.unit_tangent(u);
    p.inward_normal = c.inward_normal(u);
    p.curvature = c.signed_curvature(u);
    return p;
}

std::pair<double, double> Domain::curvature_integral() const {
    auto eval = [&](int mult) {
        double s = 0.0;
        for (const auto& c : curves_) {
            int n = std::max(c.n_quad() * mult, 64);
            s += trapezoid(n, [&](double u) { return c.signed_curvature(u) * c.speed(u); });
        }
        return s;
    };
    double coarse = eval(1);
    double fine = eval(2);
    return {fine, std::abs(fine - coarse)};
}

bool Domain::inside_curve(const BoundaryCurve& c, Vec2 z) const {
    switch (c.kind()) {
        case BoundaryCurve::Kind::Circle: {
            Vec2 p0 = c.position(0.0), p2 = c.position(0.5);
            Vec2 center = (p0 + p2) / 2.0;
            double r = dist(p0, p2) / 2.0;
            return dist(z, center) < r;
        }
        case BoundaryCurve::Kind::Ellipse:
        case BoundaryCurve::Kind::MappedEllipseExterior: {
            Vec2 p0 = c.position(0.0), p2 = c.position(0.5), p1 = c.position(0.25);
            Vec2 center = (p0 + p2) / 2.0;
            double sa = dist(p0, p2) / 2.0;
            double sb = dist(p1, center);
            Vec2 w = z - center;
            return (w.x / sa) * (w.x / sa) + (w.y / sb) * (w.y / sb) < 1.0;
        }
        case BoundaryCurve::Kind::Fourier: {
            // winding number of a dense polygon, ray-crossing form
            int n = std::max(4 * c.n_quad(), 512);
            int winding = 0;
            Vec2 prev = c.position(0.0);
            for (int i = 1; i <= n; ++i) {
                Vec2 cur = c.position(double(i % n) / n);
                if ((prev.y <= z.y) != (cur.y <= z.y)) {
                    double t = (z.y - prev.y) / (cur.y - prev.y);
                    double xc = prev.x + t * (cur.x - prev.x);
                    if (xc > z.x) winding += (cur.y > prev.y) ? 1 : -1;
                }
                prev = cur;
            }
            return winding != 0;
        }
    }
    return false;
}

Location Domain::classify(Vec2 z) const {
    if (!std::isfinite(z.x) || !std::isfinite(z.y))
        throw DomainError("point is not finite");
    if (distance_to_boundary(z) < boundary_tolerance()) return Location::Boundary;
    bool in;
    if (is_exterior()) {
        in = !inside_curve(curves_.front(), z);
    } else {
        in = inside_curve(curves_.front(), z);
        for (std::size_t i = 1; in && i < curves_.size(); ++i)
            if (inside_curve(curves_[i], z)) in = false;
    }
    return in ? Location::Inside : Location::Outside;
}

std::pair<double, double> Domain::project_to_curve(const BoundaryCurve& c, Vec2 z) const {
    if (c.kind() == BoundaryCurve::Kind::Circle) {
        Vec2 p0 = c.position(0.0), p2 = c.position(0.5);
        Vec2 center = (p0 + p2) / 2.0;
        double r = dist(p0, p2) / 2.0;
        Vec2 w = z - center;
        double wn = w.norm();
        if (wn < 1e-300) return {0.0, r}; // full symmetry: tie-break at u = 0
        double u = wrap_unit(std::atan2(w.y, w.x) / kTwoPi);
        return {u, std::abs(wn - r)};
    }

    int n = std::max(c.n_quad(), 128);
    double best_u = 0.0, best_d2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        double u = double(i) / n;
        double d2 = (z - c.position(u)).norm2();
        if (d2 < best_d2) {
            best_d2 = d2;
            best_u = u;
        }
    }
    // Newton on the stationarity condition <z - p(u), p'(u)> = 0
    double u = best_u;
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
        Vec2 p = c.position(u), d1 = c.derivative(u), d2v = c.second_derivative(u);
        double g = dot(z - p, d1);
        double gp = -d1.norm2() + dot(z - p, d2v);
        if (std::abs(gp) < 1e-300) break;
        double step = g / gp;
        if (std::abs(step) > 1.0 / n) step = std::copysign(1.0 / n, step); // stay near the seed
        u = wrap_unit(u - step);
        if (std::abs(step) < 1e-12) {
            converged = true;
            break;
        }
    }
    if (!converged || (z - c.position(u)).norm2() > best_d2 + 1e-300) {
        // golden-section fallback on the bracketing interval around the scan seed
        double lo = best_u - 1.0 / n, hi = best_u + 1.0 / n;
        const double phi = 0.6180339887498949;
        double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
        double fa = (z - c.position(wrap_unit(a))).norm2();
        double fb = (z - c.position(wrap_unit(b))).norm2();
        for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
            if (fa < fb) {
                hi = b; b = a; fb = fa;
                a = hi - phi * (hi - lo);
                fa = (z - c.position(wrap_unit(a))).norm2();
            } else {
                lo = a; a = b; fa = fb;
                b = lo + phi * (hi - lo);
                fb = (z - c.position(wrap_unit(b))).norm2();
            }
        }
        double ug = wrap_unit((lo + hi) / 2.0);
        if ((z - c.position(ug)).norm2() < (z - c.position(u)).norm2()) u = ug;
    }
    return {u, dist(z, c.position(u))};
}

ProjectionResult Domain::project_to_boundary(Vec2 z) const {
    if (!std::isfinite(z.x) || !std::isfinite(z.y))
        throw DomainError("point is not finite");
    int best_curve = -1;
    double best_u = 0.0, best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < curves_.size(); ++i) {
        auto [u, d] = project_to_curve(curves_[i], z);
        // ties broken by lowest curve index then lowest parameter
        if (d < best_d || (d == best_d && int(i) == best_curve && u < best_u)) {
            best_curve = int(i);
            best_u = u;
            best_d = d;
        }
    }
    if (best_curve < 0) throw NumericalError("projection failed: no curves");
    ProjectionResult r;
    r.point = boundary_point(best_curve, best_u);
    r.distance = best_d;
    return r;
}

double Domain::distance_to_boundary(Vec2 z) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& c : curves_) d = std::min(d, project_to_curve(c, z).second);
    return d;
}

} // namespace rbm
