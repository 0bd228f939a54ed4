#pragma once

#include <optional>
#include <vector>

#include "rbm/curve.hpp"
#include "rbm/vec2.hpp"

namespace rbm {

// A point on the boundary of a domain together with the local frame.
struct BoundaryPoint {
    int curve_index = 0;
    double u = 0.0;
    Vec2 position{0, 0};
    Vec2 inward_normal{0, 1};
    Vec2 tangent{1, 0}; // unit, defined up to sign
    double curvature = 0.0;
};

// Angle between the tangent lines at two boundary points, folded into [0, pi/2].
double tangent_angle_alpha(const BoundaryPoint& x, const BoundaryPoint& y);

enum class Location { Inside, Outside, Boundary };

struct ProjectionResult {
    BoundaryPoint point;
    double distance = 0.0;
};

// Planar domain bounded by smooth curves: an outer curve plus hole curves,
// or the exterior of a single analytic shape (disc / ellipse via g(z)=z+a/z).
class Domain {
  public:
    enum class Exterior { None, Disc, Ellipse };

    static Domain disc(double radius, int n_quad = 256);
    static Domain ellipse(double semi_a, double semi_b, int n_quad = 256);
    static Domain annulus(double r_inner, double r_outer, int n_quad = 256);
    static Domain disc_exterior(double radius, int n_quad = 256);
    // exterior of the image of the unit disc under g(z) = z + a/z, a in (0,1)
    static Domain ellipse_exterior(double a, int n_quad = 256);
    static Domain from_curves(std::vector<BoundaryCurve> curves);
    // disc of radius `outer_radius` with circular holes
    static Domain disc_with_holes(double outer_radius,
                                  const std::vector<Vec2>& hole_centers,
                                  const std::vector<double>& hole_radii, int n_quad = 256);
    // scaled copy a*D (bounded domains built from circles and ellipses)
    Domain scaled(double a) const;

    const std::vector<BoundaryCurve>& curves() const { return curves_; }
    Exterior exterior() const { return exterior_; }
    bool is_exterior() const { return exterior_ != Exterior::None; }
    int hole_count() const;
    int euler_char() const;

    double area() const;            // throws DomainError on exterior domains
    double boundary_length() const;
    double diameter() const;        // of the boundary curve set
    // min(curvature radius, gap between boundary components); step guards use it
    double feature_size() const;
    double boundary_tolerance() const { return 1e-12 * diameter(); }

    BoundaryPoint boundary_point(int curve_index, double u) const;
    double curvature(const BoundaryPoint& p) const { return p.curvature; }
    // arc-length quadrature of the signed curvature over all components,
    // with a node-halving error estimate
    std::pair<double, double> curvature_integral() const;

    Location classify(Vec2 z) const;
    bool contains(Vec2 z) const { return classify(z) == Location::Inside; }
    ProjectionResult project_to_boundary(Vec2 z) const;
    double distance_to_boundary(Vec2 z) const;

  private:
    Domain() = default;
    bool inside_curve(const BoundaryCurve& c, Vec2 z) const; // left of the oriented curve
    std::pair<double, double> project_to_curve(const BoundaryCurve& c, Vec2 z) const; // (u, dist)

    std::vector<BoundaryCurve> curves_;
    Exterior exterior_ = Exterior::None;
    double exterior_param_ = 0.0;
    mutable double cached_diameter_ = -1.0;
    mutable double cached_feature_ = -1.0;
};

// The upper half-plane {y > 0}; reflection oracle for the half-plane
// identities and a drop-in geometry for the Skorokhod transform.
struct HalfPlane {
    bool contains(Vec2 z) const { return z.y > 0.0; }
    ProjectionResult project_to_boundary(Vec2 z) const {
        ProjectionResult r;
        r.point.position = {z.x, 0.0};
        r.point.inward_normal = {0.0, 1.0};
        r.point.tangent = {1.0, 0.0};
        r.point.curvature = 0.0;
        r.distance = std::abs(z.y);
        return r;
    }
    double feature_size() const { return 1e300; }
    double boundary_tolerance() const { return 1e-12; }
};

} // namespace rbm
