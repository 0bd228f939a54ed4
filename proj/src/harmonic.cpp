#include "rbm/harmonic.hpp"

#include <cmath>
#include <vector>

#include "rbm/errors.hpp"
#include "rbm/nystrom.hpp"
#include "rbm/parallel.hpp"
#include "rbm/quadrature.hpp"

namespace rbm {

namespace {
constexpr double kPi = 3.141592653589793238;
constexpr double kTwoPi = 6.283185307179586477;
constexpr long kChunk = 1024; // walkers per RNG chunk; fixed so results do not depend on workers

bool in_arc(double u, double u0, double u1) {
    if (u1 - u0 >= 1.0) return true; // full curve
    u -= std::floor(u);
    u0 -= std::floor(u0);
    u1 -= std::floor(u1);
    if (u0 <= u1) return u >= u0 && u <= u1;
    return u >= u0 || u <= u1; // wrapping arc
}
} // namespace

double density_exact_disc_exterior(double theta, double theta_prime) {
    double s = std::sin(0.5 * (theta - theta_prime));
    if (s == 0.0) throw DomainError("coincident angles: kernel is singular");
    return 1.0 / (4.0 * kPi * s * s);
}

double density_exact_disc_chord(double chord) {
    if (chord <= 0.0) throw DomainError("coincident points: kernel is singular");
    return 1.0 / (kPi * chord * chord);
}

double density_exact_disc_interior(const BoundaryPoint& x, const BoundaryPoint& y) {
    return density_exact_disc_chord(dist(x.position, y.position));
}

double density_half_plane(double y_offset) {
    if (y_offset == 0.0) throw DomainError("zero offset: kernel is singular");
    return 1.0 / (kPi * y_offset * y_offset);
}

double half_plane_tail_mass(double a) {
    if (a <= 0.0) throw DomainError("tail cutoff must be positive");
    return 2.0 / (kPi * a);
}

double excursion_height_law_halfplane(double a) {
    if (a <= 0.0) throw DomainError("height must be positive");
    return 1.0 / a;
}

double excursion_poisson_void_probability() {
    auto rate = integrate_adaptive([](double a) { return 1.0 / (1.0 + a); }, 0.0, 1.0, 1e-14);
    return std::exp(-rate.value);
}

WosSample sample_hitting_point(const Domain& domain, Vec2 start, const WosConfig& cfg,
                               CounterRng& rng) {
    double eps = cfg.eps_abs > 0.0 ? cfg.eps_abs : 1e-6 * domain.diameter();
    Vec2 z = start;
    for (int step = 0; step < cfg.max_steps; ++step) {
        auto proj = domain.project_to_boundary(z);
        if (proj.distance < eps) {
            // project onto the true boundary; removes the O(eps) placement bias
            return {proj.point, step};
        }
        double phi = kTwoPi * rng.uniform();
        z += Vec2{std::cos(phi), std::sin(phi)} * proj.distance;
    }
    throw NumericalError("walk-on-spheres exceeded the step cap");
}

HitFraction wos_hit_fraction(const Domain& domain, Vec2 start, int curve_index, double u0,
                             double u1, const WosConfig& cfg) {
    if (domain.is_exterior()) throw DomainError("walk-on-spheres needs a bounded domain");
    if (!domain.contains(start)) throw DomainError("start point is not inside the domain");
    long n_chunks = (cfg.walkers + kChunk - 1) / kChunk;
    std::vector<long> hits(std::size_t(n_chunks), 0), fails(std::size_t(n_chunks), 0);
    parallel_chunks(n_chunks, cfg.workers, [&](long c) {
        CounterRng rng(cfg.seed, std::uint64_t(c));
        long lo = c * kChunk, hi = std::min(cfg.walkers, lo + kChunk);
        long h = 0, f = 0;
        for (long w = lo; w < hi; ++w) {
            try {
                WosSample s = sample_hitting_point(domain, start, cfg, rng);
                if (s.point.curve_index == curve_index && in_arc(s.point.u, u0, u1)) ++h;
            } catch (const NumericalError&) {
                ++f;
            }
        }
        hits[std::size_t(c)] = h;
        fails[std::size_t(c)] = f;
    });
    long h = 0, f = 0;
    for (long c = 0; c < n_chunks; ++c) {
        h += hits[std::size_t(c)];
        f += fails[std::size_t(c)];
    }
    double n = double(cfg.walkers - f);
    double p = h / n;
    return {p, std::sqrt(std::max(p * (1.0 - p), 1.0 / n) / n), f};
}

McEstimate density_boundary_mc(const Domain& domain, const BoundaryPoint& x, int curve_index,
                               double u0, double u1, double delta0, const WosConfig& cfg) {
    // standoff sequence delta_j = delta0 * 2^-j, first-order Richardson on the
    // last two levels
    double est[4], se[4];
    for (int j = 0; j < 4; ++j) {
        double delta = delta0 * std::pow(2.0, -j);
        Vec2 w = x.position + x.inward_normal * delta;
        if (!domain.contains(w))
            throw DomainError("standoff too large: x + delta n(x) leaves the domain");
        WosConfig sub = cfg;
        sub.seed = cfg.seed + std::uint64_t(j) * 0x9e3779b9ULL;
        HitFraction hf = wos_hit_fraction(domain, w, curve_index, u0, u1, sub);
        est[j] = hf.probability / delta;
        se[j] = hf.std_error / delta;
    }
    McEstimate out;
    out.estimate = 2.0 * est[3] - est[2];
    out.std_error = std::sqrt(4.0 * se[3] * se[3] + se[2] * se[2]);
    return out;
}

double arc_length(const Domain& domain, int curve_index, double u0, double u1) {
    const auto& c = domain.curves().at(std::size_t(curve_index));
    u0 -= std::floor(u0);
    u1 -= std::floor(u1);
    double span = u1 - u0;
    if (span <= 0.0) span += 1.0;
    auto r = integrate_adaptive([&](double t) { return c.speed(u0 + t * span) * span; }, 0.0,
                                1.0, 1e-12);
    return r.value;
}

HarmonicMeasure HarmonicMeasure::exact(const Domain& domain) {
    bool disc_like = domain.curves().size() == 1 &&
                     domain.curves().front().kind() == BoundaryCurve::Kind::Circle;
    if (!disc_like)
        throw ConfigError("exact harmonic-measure backend covers disc interiors/exteriors only");
    HarmonicMeasure hm;
    hm.backend_ = Backend::Exact;
    hm.domain_ = &domain;
    return hm;
}

HarmonicMeasure HarmonicMeasure::nystrom(const Domain& domain, int panels_per_curve,
                                         double delta0_rel) {
    if (domain.is_exterior())
        throw ConfigError("Nystrom backend needs a bounded domain");
    HarmonicMeasure hm;
    hm.backend_ = Backend::Nystrom;
    hm.domain_ = &domain;
    hm.solver_ = std::make_shared<NystromSolver>(domain, panels_per_curve);
    hm.delta0_rel_ = delta0_rel;
    return hm;
}

HarmonicMeasure HarmonicMeasure::wos(const Domain& domain, WosConfig cfg) {
    if (domain.is_exterior())
        throw ConfigError("walk-on-spheres backend needs a bounded domain");
    HarmonicMeasure hm;
    hm.backend_ = Backend::WosMc;
    hm.domain_ = &domain;
    hm.wos_cfg_ = cfg;
    return hm;
}

double HarmonicMeasure::delta0() const {
    return delta0_rel_ * domain_->feature_size();
}

HarmonicMeasure::Value HarmonicMeasure::density(const BoundaryPoint& x,
                                                const BoundaryPoint& y) const {
    switch (backend_) {
        case Backend::Exact:
            return {density_exact_disc_interior(x, y), 0.0};
        case Backend::Nystrom:
            return {solver_->boundary_density(x, y, delta0()), solver_->last_error_estimate()};
        case Backend::WosMc: {
            // pointwise density from a short arc centered on y
            const auto& c = domain_->curves().at(std::size_t(y.curve_index));
            double half = 0.05; // parameter half-width
            double len = arc_length(*domain_, y.curve_index, y.u - half, y.u + half);
            double delta0 = 1e-2 * domain_->feature_size();
            McEstimate m = density_boundary_mc(*domain_, x, y.curve_index, y.u - half,
                                               y.u + half, delta0, wos_cfg_);
            (void)c;
            return {m.estimate / len, m.std_error / len};
        }
    }
    return {};
}

std::string HarmonicMeasure::backend_name() const {
    switch (backend_) {
        case Backend::Exact: return "exact";
        case Backend::Nystrom: return "nystrom";
        case Backend::WosMc: return "wos";
    }
    return "?";
}

} // namespace rbm
