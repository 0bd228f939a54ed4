#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "rbm/domain.hpp"
#include "rbm/rng.hpp"

namespace rbm {

class NystromSolver;

// ---- exact kernels -------------------------------------------------------

// Boundary harmonic measure density on the exterior of the unit disc,
// 1 / (4 pi sin^2((theta - theta')/2)).
double density_exact_disc_exterior(double theta, double theta_prime);

// Unit-disc interior: 1 / (pi d(x,y)^2) with d the chord distance. The same
// closed form holds for discs of any radius, interior and exterior, because
// the normalization pi d^2 rho -> 1 fixes the scale.
double density_exact_disc_interior(const BoundaryPoint& x, const BoundaryPoint& y);
double density_exact_disc_chord(double chord);

// Half-plane boundary-to-boundary density 1 / (pi y^2).
double density_half_plane(double y_offset);
// Mass of the half-plane density outside [-a, a]: 2 / (pi a).
double half_plane_tail_mass(double a);

// Excursion-law height statistics on the half-plane: probability (under the
// excursion law from the origin) of reaching height a before returning, = 1/a.
double excursion_height_law_halfplane(double a);
// Void probability of a Poisson count with rate int_0^1 da/(1+a) over one
// unit of local time, evaluated by quadrature; equals 1/2.
double excursion_poisson_void_probability();

// ---- walk-on-spheres -----------------------------------------------------

struct WosConfig {
    long walkers = 100000;
    double eps_abs = -1.0; // < 0: use 1e-6 * diam(D)
    int max_steps = 1000000;
    std::uint64_t seed = 1;
    int workers = 1;
};

struct WosSample {
    BoundaryPoint point;
    int steps = 0;
};

// One walk-on-spheres trajectory from `start` to an absorbed boundary point.
WosSample sample_hitting_point(const Domain& domain, Vec2 start, const WosConfig& cfg,
                               CounterRng& rng);

struct HitFraction {
    double probability = 0.0;
    double std_error = 0.0;
    long non_converged = 0;
};

// Fraction of walkers from `start` absorbed on curve `curve_index` within the
// parameter arc [u0, u1] (mod 1; pass u0=0, u1=1 for the whole curve).
// Deterministic for a fixed (seed, walkers) regardless of worker count.
HitFraction wos_hit_fraction(const Domain& domain, Vec2 start, int curve_index, double u0,
                             double u1, const WosConfig& cfg);

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

// Harmonic-measure mass of the arc [u0,u1] on curve `curve_index` as seen
// from boundary point x: (1/delta) P^{x + delta n(x)}(absorb in arc),
// Richardson-extrapolated over the standoff sequence delta0 * 2^{-j}, j=0..3.
McEstimate density_boundary_mc(const Domain& domain, const BoundaryPoint& x, int curve_index,
                               double u0, double u1, double delta0, const WosConfig& cfg);

// Arc length of [u0,u1] (mod 1) on one curve.
double arc_length(const Domain& domain, int curve_index, double u0, double u1);

// ---- unified evaluator ----------------------------------------------------

// Evaluator for the boundary density (normalized so pi d^2 rho -> 1 on the
// diagonal), tagged by backend.
class HarmonicMeasure {
  public:
    enum class Backend { Exact, Nystrom, WosMc };

    // Exact closed-form kernel; valid for disc interiors and disc exteriors.
    static HarmonicMeasure exact(const Domain& domain);
    // Boundary-integral (double layer + Nystrom) backend for bounded domains.
    static HarmonicMeasure nystrom(const Domain& domain, int panels_per_curve = 256,
                                   double delta0_rel = 1e-2);
    // Walk-on-spheres Monte Carlo backend for bounded domains.
    static HarmonicMeasure wos(const Domain& domain, WosConfig cfg);

    struct Value {
        double density = 0.0;
        double error = 0.0;
    };

    Value density(const BoundaryPoint& x, const BoundaryPoint& y) const;
    Backend backend() const { return backend_; }
    std::string backend_name() const;
    const Domain& domain() const { return *domain_; }
    const NystromSolver* solver() const { return solver_.get(); }
    double delta0() const;
    const WosConfig& wos_config() const { return wos_cfg_; }

  private:
    HarmonicMeasure() = default;

    Backend backend_ = Backend::Exact;
    const Domain* domain_ = nullptr;
    std::shared_ptr<NystromSolver> solver_;
    double delta0_rel_ = 1e-2;
    WosConfig wos_cfg_;
};

} // namespace rbm
