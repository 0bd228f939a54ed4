#pragma once

#include <vector>

#include "rbm/domain.hpp"
#include "rbm/errors.hpp"

namespace rbm {

// Geometry concept for the reflection scheme: membership plus nearest-point
// projection with the inward normal. Domain and HalfPlane both satisfy it.
template <class G>
concept ReflectingGeometry = requires(const G& g, Vec2 z) {
    { g.contains(z) } -> std::convertible_to<bool>;
    { g.project_to_boundary(z) } -> std::convertible_to<ProjectionResult>;
    { g.feature_size() } -> std::convertible_to<double>;
    { g.boundary_tolerance() } -> std::convertible_to<double>;
};

struct StepResult {
    Vec2 position;
    double local_time_increment = 0.0; // push distance along the inward normal
    Vec2 push{0, 0};
    bool on_boundary = false;
    BoundaryPoint contact; // valid when local_time_increment > 0
};

// One explicit Euler substep of the reflection: propose x + db; if the
// proposal leaves the closed domain, pull it back to the nearest boundary
// point and count the pull distance as local time.
template <ReflectingGeometry G>
StepResult reflected_step(const G& geom, Vec2 x, Vec2 db) {
    // A proposal starting in the closed domain exits by at most |db|, so the
    // nearest-point projection stays unique as long as |db| is below the
    // boundary reach (~ feature size). The cap sits just under the
    // projection-reach guard so that rare large Gaussian increments at a
    // legitimate step size do not abort a long run.
    if (db.norm() > 0.45 * geom.feature_size())
        throw NumericalError("step too large for the projection scheme; shrink h_max");
    StepResult out;
    Vec2 proposal = x + db;
    if (geom.contains(proposal)) {
        out.position = proposal;
        return out;
    }
    ProjectionResult proj = geom.project_to_boundary(proposal);
    if (proj.distance > 0.5 * geom.feature_size())
        throw NumericalError("proposal escaped beyond projection reach; shrink h_max");
    out.position = proj.point.position;
    out.local_time_increment = proj.distance;
    out.push = proj.point.position - proposal;
    out.on_boundary = true;
    out.contact = proj.point;
    return out;
}

// Piecewise-linear driving path (t_k, gamma(t_k)).
struct DrivingPath {
    std::vector<double> t;
    std::vector<Vec2> gamma;
    void validate() const;
};

struct ReflectedPath {
    std::vector<double> t;
    std::vector<Vec2> beta;
    std::vector<double> local_time; // cumulative
    std::vector<Vec2> push;         // per recorded step
};

// Deterministic Skorokhod transform of a polyline driving path; each segment
// is refined into substeps of duration at most h_max before the projection
// scheme is applied.
template <ReflectingGeometry G>
ReflectedPath skorokhod_transform(const G& geom, const DrivingPath& path, double h_max) {
    path.validate();
    if (h_max <= 0.0) throw ConfigError("h_max must be positive");
    ReflectedPath out;
    out.t.push_back(path.t.front());
    out.beta.push_back(path.gamma.front());
    out.local_time.push_back(0.0);
    out.push.push_back({0, 0});
    if (!geom.contains(path.gamma.front())) {
        // gamma(0) must lie in the closed domain; a boundary start is fine
        ProjectionResult pr = geom.project_to_boundary(path.gamma.front());
        if (pr.distance > geom.boundary_tolerance())
            throw ConfigError("driving path must start in the closed domain");
    }
    Vec2 x = path.gamma.front();
    double ell = 0.0;
    for (std::size_t k = 0; k + 1 < path.t.size(); ++k) {
        double dt = path.t[k + 1] - path.t[k];
        int substeps = std::max(1, int(std::ceil(dt / h_max)));
        Vec2 dg = (path.gamma[k + 1] - path.gamma[k]) / double(substeps);
        for (int s = 0; s < substeps; ++s) {
            StepResult r = reflected_step(geom, x, dg);
            x = r.position;
            ell += r.local_time_increment;
            out.t.push_back(path.t[k] + dt * double(s + 1) / double(substeps));
            out.beta.push_back(x);
            out.local_time.push_back(ell);
            out.push.push_back(r.push);
        }
    }
    return out;
}

struct VariationGap {
    double driving_variation = 0.0;
    double reflected_variation = 0.0;
    double gap = 0.0;
};

// Total variations of gamma and beta over the refined grid and their gap;
// the discrete contraction makes the gap non-negative for every input.
template <ReflectingGeometry G>
VariationGap variation_gap_check(const G& geom, const DrivingPath& path, double h_max) {
    ReflectedPath rp = skorokhod_transform(geom, path, h_max);
    VariationGap v;
    // Per-substep comparison of the driving increment dg against the realized
    // increment dg + push. Interior steps have push = 0 and cancel exactly.
    // Projecting onto a convex set shortens the step; on the half-plane the
    // projection only shrinks the y-component, and sqrt(x^2 + y^2) is monotone
    // in |y|, so every gap term is >= 0 even in floating point.
    auto norm = [](Vec2 w) { return std::sqrt(w.x * w.x + w.y * w.y); };
    std::size_t idx = 1;
    for (std::size_t k = 0; k + 1 < path.t.size(); ++k) {
        double dt = path.t[k + 1] - path.t[k];
        int substeps = std::max(1, int(std::ceil(dt / h_max)));
        Vec2 dg = (path.gamma[k + 1] - path.gamma[k]) / double(substeps);
        double dg_norm = norm(dg);
        for (int s = 0; s < substeps; ++s, ++idx) {
            double step_norm = norm(dg + rp.push[idx]);
            v.driving_variation += dg_norm;
            v.reflected_variation += step_norm;
            v.gap += dg_norm - step_norm;
        }
    }
    return v;
}

// CSV path files with columns t,x,y (see the transform CLI subcommand)
DrivingPath read_path_csv(const std::string& filename);
void write_reflected_csv(const std::string& filename, const ReflectedPath& path);

} // namespace rbm
