#include "rbm/curve.hpp"

#include <cmath>
#include <algorithm>

#include "rbm/errors.hpp"

namespace rbm {

namespace {
constexpr double kTwoPi = 6.283185307179586477;
}

BoundaryCurve BoundaryCurve::circle(Vec2 center, double radius, bool interior_on_left,
                                    int n_quad) {
    if (radius <= 0.0) throw ConfigError("circle radius must be positive");
    BoundaryCurve c;
    c.kind_ = Kind::Circle;
    c.center_ = center;
    c.semi_a_ = radius;
    c.semi_b_ = radius;
    c.interior_on_left_ = interior_on_left;
    c.n_quad_ = n_quad;
    return c;
}

BoundaryCurve BoundaryCurve::ellipse(Vec2 center, double semi_a, double semi_b,
                                     bool interior_on_left, int n_quad) {
    if (semi_a <= 0.0 || semi_b <= 0.0) throw ConfigError("ellipse semi-axes must be positive");
    BoundaryCurve c;
    c.kind_ = Kind::Ellipse;
    c.center_ = center;
    c.semi_a_ = semi_a;
    c.semi_b_ = semi_b;
    c.interior_on_left_ = interior_on_left;
    c.n_quad_ = n_quad;
    return c;
}

BoundaryCurve BoundaryCurve::fourier(Series x_series, Series y_series,
                                     bool interior_on_left, int n_quad) {
    BoundaryCurve c;
    c.kind_ = Kind::Fourier;
    c.xs_ = std::move(x_series);
    c.ys_ = std::move(y_series);
    // cosine and sine coefficient lists may come in with different lengths
    for (Series* s : {&c.xs_, &c.ys_}) {
        std::size_t n = std::max(s->ck.size(), s->sk.size());
        s->ck.resize(n, 0.0);
        s->sk.resize(n, 0.0);
    }
    c.interior_on_left_ = interior_on_left;
    c.n_quad_ = n_quad;
    c.validate();
    return c;
}

BoundaryCurve BoundaryCurve::mapped_ellipse_exterior(double a, int n_quad) {
    if (a <= 0.0 || a >= 1.0) throw ConfigError("map parameter a must lie in (0,1)");
    BoundaryCurve c;
    c.kind_ = Kind::MappedEllipseExterior;
    c.map_a_ = a;
    // domain is the exterior, traversed counterclockwise => interior on the right
    c.interior_on_left_ = false;
    c.n_quad_ = n_quad;
    return c;
}

Vec2 BoundaryCurve::position(double u) const {
    double t = kTwoPi * u;
    switch (kind_) {
        case Kind::Circle:
            return center_ + Vec2{semi_a_ * std::cos(t), semi_a_ * std::sin(t)};
        case Kind::Ellipse:
            return center_ + Vec2{semi_a_ * std::cos(t), semi_b_ * std::sin(t)};
        case Kind::MappedEllipseExterior:
            // g(e^{it}) = (1+a) cos t + i (1-a) sin t
            return {(1.0 + map_a_) * std::cos(t), (1.0 - map_a_) * std::sin(t)};
        case Kind::Fourier: {
            Vec2 p{xs_.c0, ys_.c0};
            for (std::size_t k = 0; k < xs_.ck.size(); ++k) {
                double a = kTwoPi * double(k + 1) * u;
                p.x += xs_.ck[k] * std::cos(a) + xs_.sk[k] * std::sin(a);
            }
            for (std::size_t k = 0; k < ys_.ck.size(); ++k) {
                double a = kTwoPi * double(k + 1) * u;
                p.y += ys_.ck[k] * std::cos(a) + ys_.sk[k] * std::sin(a);
            }
            return p;
        }
    }
    return {};
}

Vec2 BoundaryCurve::derivative(double u) const {
    double t = kTwoPi * u;
    switch (kind_) {
        case Kind::Circle:
            return Vec2{-semi_a_ * std::sin(t), semi_a_ * std::cos(t)} * kTwoPi;
        case Kind::Ellipse:
            return Vec2{-semi_a_ * std::sin(t), semi_b_ * std::cos(t)} * kTwoPi;
        case Kind::MappedEllipseExterior:
            return Vec2{-(1.0 + map_a_) * std::sin(t), (1.0 - map_a_) * std::cos(t)} * kTwoPi;
        case Kind::Fourier: {
            Vec2 p{0, 0};
            for (std::size_t k = 0; k < xs_.ck.size(); ++k) {
                double w = kTwoPi * double(k + 1);
                p.x += w * (-xs_.ck[k] * std::sin(w * u) + xs_.sk[k] * std::cos(w * u));
            }
            for (std::size_t k = 0; k < ys_.ck.size(); ++k) {
                double w = kTwoPi * double(k + 1);
                p.y += w * (-ys_.ck[k] * std::sin(w * u) + ys_.sk[k] * std::cos(w * u));
            }
            return p;
        }
    }
    return {};
}

Vec2 BoundaryCurve::second_derivative(double u) const {
    double t = kTwoPi * u;
    double w2 = kTwoPi * kTwoPi;
    switch (kind_) {
        case Kind::Circle:
            return Vec2{-semi_a_ * std::cos(t), -semi_a_ * std::sin(t)} * w2;
        case Kind::Ellipse:
            return Vec2{-semi_a_ * std::cos(t), -semi_b_ * std::sin(t)} * w2;
        case Kind::MappedEllipseExterior:
            return Vec2{-(1.0 + map_a_) * std::cos(t), -(1.0 - map_a_) * std::sin(t)} * w2;
        case Kind::Fourier: {
            Vec2 p{0, 0};
            for (std::size_t k = 0; k < xs_.ck.size(); ++k) {
                double w = kTwoPi * double(k + 1);
                p.x -= w * w * (xs_.ck[k] * std::cos(w * u) + xs_.sk[k] * std::sin(w * u));
            }
            for (std::size_t k = 0; k < ys_.ck.size(); ++k) {
                double w = kTwoPi * double(k + 1);
                p.y -= w * w * (ys_.ck[k] * std::cos(w * u) + ys_.sk[k] * std::sin(w * u));
            }
            return p;
        }
    }
    return {};
}

Vec2 BoundaryCurve::inward_normal(double u) const {
    Vec2 t = unit_tangent(u);
    // left normal is tangent rotated by +90 degrees
    return interior_on_left_ ? t.perp() : -t.perp();
}

double BoundaryCurve::signed_curvature(double u) const {
    Vec2 d1 = derivative(u);
    Vec2 d2 = second_derivative(u);
    double sp = d1.norm();
    if (sp <= 0.0) throw NumericalError("non-regular parameter: zero speed");
    double k_left = cross(d1, d2) / (sp * sp * sp);
    return interior_on_left_ ? k_left : -k_left;
}

std::string BoundaryCurve::kind_name() const {
    switch (kind_) {
        case Kind::Circle: return "circle";
        case Kind::Ellipse: return "ellipse";
        case Kind::Fourier: return "fourier";
        case Kind::MappedEllipseExterior: return "mapped-ellipse-exterior";
    }
    return "?";
}

void BoundaryCurve::validate() const {
    if (n_quad_ < 64) throw ConfigError("n_quad must be >= 64");
    int n = std::max(n_quad_, 256);
    if ((position(0.0) - position(1.0 - 1e-13)).norm() > 1e-9)
        throw ConfigError("curve is not periodic");
    std::vector<Vec2> pts(n);
    double min_speed = 1e300, max_speed = 0.0;
    for (int i = 0; i < n; ++i) {
        double u = double(i) / n;
        pts[i] = position(u);
        double sp = speed(u);
        min_speed = std::min(min_speed, sp);
        max_speed = std::max(max_speed, sp);
    }
    if (min_speed <= 1e-12 * max_speed)
        throw ConfigError("curve is not regular: vanishing speed");
    // simplicity on the dense sample: non-adjacent nodes must stay apart
    double h = max_speed / n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (dist(pts[i], pts[j]) < 0.5 * h)
                throw ConfigError("curve self-intersects on a dense sample");
        }
}

} // namespace rbm
