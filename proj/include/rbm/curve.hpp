#pragma once

#include <string>
#include <vector>

#include "rbm/vec2.hpp"

namespace rbm {

// Smooth closed parametric curve, u in [0,1). Analytic kinds carry their
// shape parameters; "fourier" carries truncated trigonometric series for
// each coordinate (spectrally accurate under the periodic trapezoid rule).
class BoundaryCurve {
  public:
    enum class Kind { Circle, Ellipse, Fourier, MappedEllipseExterior };

    // Trig series for one coordinate: c0 + sum_k (ck[k] cos(2pi(k+1)u) + sk[k] sin(2pi(k+1)u)).
    struct Series {
        double c0 = 0.0;
        std::vector<double> ck, sk;
    };

    static BoundaryCurve circle(Vec2 center, double radius, bool interior_on_left,
                                int n_quad = 256);
    static BoundaryCurve ellipse(Vec2 center, double semi_a, double semi_b,
                                 bool interior_on_left, int n_quad = 256);
    static BoundaryCurve fourier(Series x_series, Series y_series,
                                 bool interior_on_left, int n_quad = 256);
    // Image of the unit circle under g(z) = z + a/z, 0 < a < 1; an ellipse
    // with semi-axes 1+a, 1-a, used as the boundary of an ellipse exterior.
    static BoundaryCurve mapped_ellipse_exterior(double a, int n_quad = 256);

    Vec2 position(double u) const;
    Vec2 derivative(double u) const;
    Vec2 second_derivative(double u) const;

    double speed(double u) const { return derivative(u).norm(); }
    Vec2 unit_tangent(double u) const { return derivative(u).normalized(); }
    // unit normal pointing into the domain this curve bounds
    Vec2 inward_normal(double u) const;
    // signed curvature, sign fixed by the domain: in the frame where the
    // inward normal is (0,1), the boundary is the graph (1/2) nu t^2 + O(t^3)
    double signed_curvature(double u) const;

    Kind kind() const { return kind_; }
    bool interior_on_left() const { return interior_on_left_; }
    int n_quad() const { return n_quad_; }
    std::string kind_name() const;

    // validation per the type invariants: periodicity, regularity, simplicity
    void validate() const;

  private:
    BoundaryCurve() = default;

    Kind kind_ = Kind::Circle;
    bool interior_on_left_ = true;
    int n_quad_ = 256;

    Vec2 center_{0, 0};
    double semi_a_ = 1.0, semi_b_ = 1.0; // circle uses semi_a_ as radius
    double map_a_ = 0.0;
    Series xs_, ys_;
};

} // namespace rbm
