#include "doctest.h"

#include <cmath>

#include "rbm/domain.hpp"
#include "rbm/errors.hpp"
#include "rbm/quadrature.hpp"

using namespace rbm;

namespace {
constexpr double kPi = 3.141592653589793238;

// finite-difference curvature magnitude from positions only
double fd_curvature(const BoundaryCurve& c, double u) {
    const double h = 1e-5;
    Vec2 rp = (c.position(u + h) - c.position(u - h)) / (2 * h);
    Vec2 rpp = (c.position(u + h) - 2 * c.position(u) + c.position(u - h)) / (h * h);
    return std::abs(cross(rp, rpp)) / std::pow(rp.norm(), 3);
}

// nearest-point distance by dense parameter scan + local refinement
double scan_distance(const Domain& dom, Vec2 z) {
    double best = 1e300;
    for (const auto& c : dom.curves()) {
        double bu = 0.0;
        for (int j = 0; j < 4096; ++j) {
            double u = j / 4096.0;
            double d = dist(c.position(u), z);
            if (d < best) { best = d; bu = u; }
        }
        for (double w = 1.0 / 4096; w > 1e-13; w *= 0.5) {
            for (double u : {bu - w, bu + w}) {
                double d = dist(c.position(u), z);
                if (d < best) { best = d; bu = u; }
            }
        }
    }
    return best;
}

BoundaryPoint with_tangent(double angle) {
    BoundaryPoint p;
    p.tangent = {std::cos(angle), std::sin(angle)};
    return p;
}
} // namespace

TEST_SUITE("geometry") {

TEST_CASE("curvature matches a finite-difference oracle") {
    Domain e = Domain::ellipse(2.0, 1.0);
    const auto& c = e.curves()[0];
    for (double u : {0.0, 0.13, 0.25, 0.4, 0.77}) {
        CHECK(std::abs(c.signed_curvature(u)) == doctest::Approx(fd_curvature(c, u)).epsilon(1e-5));
    }
    // convexity sign: nearby boundary points lie on the inward side when nu > 0
    for (double u : {0.1, 0.6}) {
        BoundaryPoint p = e.boundary_point(0, u);
        Vec2 q = c.position(u + 1e-3);
        CHECK(p.curvature > 0.0);
        CHECK(dot(q - p.position, p.inward_normal) > 0.0);
    }
}

TEST_CASE("annulus hole curve has negative curvature toward the domain") {
    Domain a = Domain::annulus(0.5, 1.0);
    BoundaryPoint inner = a.boundary_point(1, 0.3);
    CHECK(inner.curvature == doctest::Approx(-2.0).epsilon(1e-10));
    // inward normal points into the annulus on both components
    for (int ci : {0, 1}) {
        BoundaryPoint p = a.boundary_point(ci, 0.3);
        CHECK(a.contains(p.position + p.inward_normal * 1e-6));
        CHECK(!a.contains(p.position - p.inward_normal * 1e-6));
    }
}

TEST_CASE("areas and boundary lengths") {
    CHECK(Domain::disc(1.5).area() == doctest::Approx(kPi * 2.25).epsilon(1e-12));
    CHECK(Domain::annulus(0.5, 1.0).area() == doctest::Approx(kPi * 0.75).epsilon(1e-12));
    Domain holes = Domain::disc_with_holes(2.0, {{0.9, 0.0}, {-0.9, 0.0}}, {0.05, 0.05});
    CHECK(holes.area() == doctest::Approx(kPi * (4.0 - 2 * 0.0025)).epsilon(1e-12));
    CHECK(Domain::disc(1.0).boundary_length() == doctest::Approx(2 * kPi).epsilon(1e-12));

    // ellipse perimeter against an independent quadrature of the speed
    Domain e = Domain::ellipse(2.0, 1.0);
    const auto& c = e.curves()[0];
    QuadResult q = integrate_adaptive([&](double u) { return c.speed(u); }, 0.0, 1.0, 1e-12);
    CHECK(e.boundary_length() == doctest::Approx(q.value).epsilon(1e-10));
    CHECK(q.value == doctest::Approx(9.688448).epsilon(1e-6));
}

TEST_CASE("curvature integral obeys Gauss-Bonnet") {
    struct Case { Domain d; double chi; };
    Case cases[] = {
        {Domain::disc(1.0, 512), 1.0},
        {Domain::ellipse(2.0, 1.0, 512), 1.0},
        {Domain::annulus(0.5, 1.0, 512), 0.0},
        {Domain::disc_with_holes(2.0, {{0.9, 0.0}, {-0.9, 0.0}}, {0.05, 0.05}, 512), -1.0},
        {Domain::disc_exterior(1.0, 512), -1.0},
    };
    for (const auto& cs : cases) {
        auto [val, err] = cs.d.curvature_integral();
        CHECK(std::abs(val - 2 * kPi * cs.chi) < 1e-8);
        CHECK(std::abs(val - 2 * kPi * cs.chi) <= std::max(err, 1e-10));
        CHECK(cs.d.euler_char() == doctest::Approx(cs.chi));
    }
}

TEST_CASE("point classification") {
    Domain a = Domain::annulus(0.5, 1.0);
    CHECK(a.classify({0.75, 0.0}) == Location::Inside);
    CHECK(a.classify({0.0, 0.0}) == Location::Outside);  // inside the hole
    CHECK(a.classify({1.5, 0.0}) == Location::Outside);
    CHECK(a.classify({1.0, 0.0}) == Location::Boundary);
    CHECK(a.classify({0.0, 0.5}) == Location::Boundary);

    Domain ext = Domain::disc_exterior(1.0);
    CHECK(ext.contains({2.0, 0.0}));
    CHECK(!ext.contains({0.5, 0.0}));
    CHECK_THROWS_AS((void)ext.area(), DomainError);
}

TEST_CASE("projection matches a dense-scan oracle") {
    Domain e = Domain::ellipse(2.0, 1.0);
    Domain a = Domain::annulus(0.5, 1.0);
    Vec2 pts_e[] = {{0.3, 0.2}, {1.7, 0.1}, {-1.2, -0.6}, {0.0, 0.9}, {2.3, 0.0}};
    for (Vec2 z : pts_e) {
        ProjectionResult pr = e.project_to_boundary(z);
        CHECK(pr.distance == doctest::Approx(scan_distance(e, z)).epsilon(1e-9));
        CHECK(dist(pr.point.position, z) == doctest::Approx(pr.distance).epsilon(1e-12));
    }
    Vec2 pts_a[] = {{0.6, 0.0}, {0.0, 0.93}, {-0.52, 0.1}, {0.3, 0.3}};
    for (Vec2 z : pts_a) {
        ProjectionResult pr = a.project_to_boundary(z);
        CHECK(pr.distance == doctest::Approx(scan_distance(a, z)).epsilon(1e-9));
    }
}

TEST_CASE("tangent angle folds into [0, pi/2]") {
    BoundaryPoint x = with_tangent(0.0);
    // symmetric, sign-of-tangent invariant, supplement folded back
    CHECK(tangent_angle_alpha(x, with_tangent(0.3)) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(tangent_angle_alpha(with_tangent(0.3), x) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(tangent_angle_alpha(x, with_tangent(kPi - 0.3)) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(tangent_angle_alpha(x, with_tangent(-0.3)) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(tangent_angle_alpha(x, with_tangent(kPi / 2)) == doctest::Approx(kPi / 2));
    CHECK(tangent_angle_alpha(x, x) == doctest::Approx(0.0));
    for (double t : {0.1, 1.2, 2.9, 4.4}) {
        double alpha = tangent_angle_alpha(x, with_tangent(t));
        CHECK(alpha >= 0.0);
        CHECK(alpha <= kPi / 2 + 1e-15);
    }
}

TEST_CASE("scaling") {
    Domain a = Domain::annulus(0.5, 1.0, 512);
    Domain a2 = a.scaled(2.0);
    CHECK(a2.area() == doctest::Approx(4.0 * a.area()).epsilon(1e-12));
    CHECK(a2.boundary_length() == doctest::Approx(2.0 * a.boundary_length()).epsilon(1e-10));
    // curvature integral is scale invariant
    CHECK(a2.curvature_integral().first ==
          doctest::Approx(a.curvature_integral().first).epsilon(1e-10));
    CHECK(a2.feature_size() == doctest::Approx(2.0 * a.feature_size()).epsilon(1e-10));
}

TEST_CASE("degenerate curves are rejected") {
    BoundaryCurve::Series x, y;
    x.c0 = 0.0;
    x.ck = {1.0};
    y.c0 = 0.0;
    y.ck = {1.0}; // x(u) == y(u): a segment, not a simple closed curve
    CHECK_THROWS(BoundaryCurve::fourier(x, y, true).validate());
    CHECK_THROWS_AS(Domain::disc(-1.0), ConfigError);
    CHECK_THROWS_AS(Domain::annulus(1.0, 0.5), ConfigError);
    CHECK_THROWS_AS(Domain::ellipse_exterior(1.5), ConfigError);
}

} // TEST_SUITE
