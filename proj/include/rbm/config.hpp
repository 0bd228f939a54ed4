#pragma once

#include <string>
#include <vector>

#include "rbm/coupling.hpp"
#include "rbm/domain.hpp"
#include "rbm/harmonic.hpp"
#include "rbm/lyapunov.hpp"

namespace rbm {

// Domain description as it appears in config files and on the command line.
// The CLI shorthand is "kind" or "kind:p1,p2,..." (e.g. "annulus:0.5,1").
struct DomainSpec {
    std::string kind = "disc";
    double radius = 1.0;            // disc, disc_exterior
    double semi_a = 2.0, semi_b = 1.0; // ellipse
    double r_inner = 0.5, r_outer = 1.0; // annulus
    double map_a = 0.5;             // ellipse_exterior: g(z) = z + a/z
    BoundaryCurve::Series fx, fy;   // fourier
    std::vector<Vec2> hole_centers; // disc_with_holes
    std::vector<double> hole_radii;
    int n_quad = 256;

    static DomainSpec parse(const std::string& text);
    Domain build() const;
    std::string id() const;
    int expected_holes() const;
};

struct HmSpec {
    std::string backend = "exact"; // exact | nystrom | wos
    int panels = 512;
    double delta0 = 1e-2; // standoff relative to the feature size
    WosConfig wos;

    HarmonicMeasure build(const Domain& domain) const;
};

struct ExperimentConfig {
    DomainSpec domain;
    HmSpec hm;
    QuadConfig quad;
    SimConfig sim;
    int sim_seeds = 5;      // replicas, seeds sim.seed .. sim.seed + sim_seeds - 1
    double burn_in = 0.1;   // slope-fit burn-in fraction
    double sweep_outer_radius = 1.0;
    std::vector<HoleSpec> sweep_holes;
    std::string output_dir = "out";
    int workers = 1;

    // Strict parse: unknown keys anywhere in the document are rejected.
    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_file(const std::string& path);
    // Resolved config echo with stable key order.
    std::string to_json_text() const;
};

} // namespace rbm
