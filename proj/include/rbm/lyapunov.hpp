#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rbm/domain.hpp"
#include "rbm/harmonic.hpp"

namespace rbm {

struct QuadConfig {
    int outer_nodes = 128;    // outer trapezoid nodes per curve
    double inner_tol = 1e-9;  // absolute tolerance of the adaptive inner integral
    int nystrom_panels = 512;
    double nystrom_delta0 = 0.0; // 0 = choose from the node spacing
};

struct LyapunovReport {
    std::string domain_id;
    int holes = 0;
    double curvature_term = 0.0; // integral of the signed curvature
    double cross_term = 0.0;     // double integral of |log cos alpha| d omega
    double lambda = 0.0;         // sum of the two
    double chi_gap = 0.0;        // |curvature_term - 2 pi chi|
    bool chi_ok = true;
    double area = 0.0; // +inf for exterior domains
    std::optional<double> decay_rate;
    double err_curv = 0.0;
    double err_cross = 0.0;
    std::string backend;
    int nodes = 0;
    std::uint64_t seed = 0;
};

// Value of the cross-term integrand on the diagonal: |log cos alpha| omega_x
// stays bounded as y -> x and tends to nu(x)^2 / (2 pi).
double diagonal_limit_value(const BoundaryPoint& x);

// accurate |log cos alpha(x,y)| from the two tangents (series near alpha=0)
double abs_log_cos_alpha(const BoundaryPoint& x, const BoundaryPoint& y);

std::pair<double, double> cross_term(const Domain& domain, const HarmonicMeasure& hm,
                                     const QuadConfig& cfg);

LyapunovReport lambda_report(const Domain& domain, const HarmonicMeasure& hm,
                             const QuadConfig& cfg);

// Disc-exterior cross term split at alpha = pi/2: the contribution of angle
// gaps |theta - theta'| < pi/2 (= pi + 2 log 2) and of the far range
// (= pi - 2 log 2); the two sum to 2 pi.
std::pair<double, double> disc_exterior_half_range_integrals(double tol = 1e-10);

// Double integral of the ellipse-exterior formula pulled back to the unit
// circle through g(z) = z + a/z; equals 2 pi for every a in (0,1).
double ellipse_exterior_cross_term(double a, const QuadConfig& cfg = {});
// Closed-form inner integral of the pullback at base angle t: (1-a^2)/|1-a y^2|^2,
// y = e^{it}; used as an oracle for the inner quadrature.
double ellipse_pullback_inner_closed_form(double a, double t);

// Lambda for the exterior of the g(z)=z+a/z ellipse (curvature term by
// quadrature, cross term by the circle pullback).
LyapunovReport lambda_ellipse_exterior(double a, const QuadConfig& cfg = {});

struct ScalingCheck {
    double lambda_base = 0.0;
    double lambda_scaled = 0.0;
    double difference = 0.0;
    double combined_error = 0.0;
};

ScalingCheck scaling_invariance_check(const Domain& domain, double scale,
                                      HarmonicMeasure::Backend backend, const QuadConfig& cfg);

struct HoleSpec {
    Vec2 center;
    double radius = 0.0;
};

struct SweepRow {
    LyapunovReport report;
    double separated_sum = 0.0;  // sum of per-component closed-form values
    double decomposition_gap = 0.0;
};

// Lambda for the disc of radius `outer_radius` with the first k holes
// attached, k = 0..holes.size(). Hole geometry is validated: pairwise gaps
// and the gap to the outer boundary must exceed 10x the largest hole diameter.
std::vector<SweepRow> hole_sweep(double outer_radius, const std::vector<HoleSpec>& holes,
                                 const QuadConfig& cfg);

} // namespace rbm
