#include "doctest.h"

#include <cmath>

#include "rbm/domain.hpp"
#include "rbm/errors.hpp"
#include "rbm/harmonic.hpp"
#include "rbm/nystrom.hpp"
#include "rbm/quadrature.hpp"

using namespace rbm;

namespace {
constexpr double kPi = 3.141592653589793238;
}

TEST_SUITE("harmonic") {

TEST_CASE("exact disc kernels are consistent") {
    // exterior angle form vs the chord form: chord = 2 sin(|dtheta|/2)
    for (double d : {0.3, 1.0, 2.5}) {
        double chord = 2.0 * std::sin(d / 2.0);
        CHECK(density_exact_disc_exterior(0.0, d) ==
              doctest::Approx(density_exact_disc_chord(chord)).epsilon(1e-13));
    }
    // normalization: pi d^2 rho -> 1 on the diagonal
    Domain disc = Domain::disc(1.0);
    BoundaryPoint x = disc.boundary_point(0, 0.0);
    BoundaryPoint y = disc.boundary_point(0, 1e-4);
    double d2 = (x.position - y.position).norm2();
    CHECK(kPi * d2 * density_exact_disc_interior(x, y) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(density_exact_disc_chord(0.0), DomainError);
}

TEST_CASE("half-plane identities") {
    CHECK(density_half_plane(2.0) == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-14));
    // tail mass against its quadrature
    for (double a : {0.5, 1.0, 3.0}) {
        QuadResult q = integrate_adaptive([](double y) { return 1.0 / (kPi * y * y); }, a, 1e6,
                                          1e-10);
        CHECK(half_plane_tail_mass(a) == doctest::Approx(2.0 * q.value).epsilon(1e-5));
        CHECK(half_plane_tail_mass(a) == doctest::Approx(2.0 / (kPi * a)).epsilon(1e-14));
    }
    CHECK(excursion_height_law_halfplane(4.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(excursion_poisson_void_probability() == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("Nystrom interior density matches the Poisson kernel") {
    Domain disc = Domain::disc(1.0);
    NystromSolver solver(disc, 128);
    Vec2 w{0.3, 0.2};
    std::vector<double> dens = solver.interior_density(w);
    for (int i = 0; i < solver.node_count(); i += 7) {
        Vec2 y = solver.node_position(i);
        double poisson = (1.0 - w.norm2()) / (2.0 * kPi * (y - w).norm2());
        CHECK(dens[std::size_t(i)] == doctest::Approx(poisson).epsilon(1e-10));
    }
}

TEST_CASE("Nystrom boundary density matches the exact disc kernel") {
    Domain disc = Domain::disc(1.0);
    HarmonicMeasure hm = HarmonicMeasure::nystrom(disc, 512);
    BoundaryPoint x = disc.boundary_point(0, 0.0);
    for (double u : {0.1, 0.25, 0.4, 0.5}) {
        BoundaryPoint y = disc.boundary_point(0, u);
        double exact = density_exact_disc_interior(x, y);
        HarmonicMeasure::Value v = hm.density(x, y);
        CHECK(std::abs(v.density - exact) < 1e-3);
    }
}

TEST_CASE("walk-on-spheres arcs") {
    Domain disc = Domain::disc(1.0);
    WosConfig cfg;
    cfg.walkers = 20000;
    cfg.seed = 7;

    // full boundary: probability one, zero variance
    HitFraction full = wos_hit_fraction(disc, {0.2, 0.1}, 0, 0.0, 1.0, cfg);
    CHECK(full.probability == doctest::Approx(1.0));

    // from the center every arc is uniform
    HitFraction half = wos_hit_fraction(disc, {0.0, 0.0}, 0, 0.0, 0.5, cfg);
    CHECK(std::abs(half.probability - 0.5) < 3.0 * half.std_error);

    // off-center start against the Poisson-kernel arc mass
    Vec2 start{0.5, 0.0};
    QuadResult mass = integrate_adaptive(
        [&](double u) {
            BoundaryPoint y = disc.boundary_point(0, u);
            return (1.0 - start.norm2()) / (2.0 * kPi * (y.position - start).norm2()) * 2.0 * kPi;
        },
        -0.1, 0.1, 1e-10);
    HitFraction arc = wos_hit_fraction(disc, start, 0, 0.9, 0.1, cfg);
    CHECK(std::abs(arc.probability - mass.value) < 3.0 * arc.std_error);
}

TEST_CASE("walk-on-spheres is worker-count independent") {
    Domain a = Domain::annulus(0.5, 1.0);
    WosConfig c1, c4;
    c1.walkers = c4.walkers = 4096;
    c1.seed = c4.seed = 42;
    c1.workers = 1;
    c4.workers = 4;
    HitFraction f1 = wos_hit_fraction(a, {0.75, 0.0}, 1, 0.0, 1.0, c1);
    HitFraction f4 = wos_hit_fraction(a, {0.75, 0.0}, 1, 0.0, 1.0, c4);
    CHECK(f1.probability == f4.probability);
    CHECK(f1.std_error == f4.std_error);
}

TEST_CASE("backend guards") {
    Domain ext = Domain::disc_exterior(1.0);
    CHECK_THROWS_AS(HarmonicMeasure::nystrom(ext, 64), ConfigError);
    Domain a = Domain::annulus(0.5, 1.0);
    CHECK_THROWS_AS(HarmonicMeasure::exact(a), ConfigError);
}

} // TEST_SUITE
