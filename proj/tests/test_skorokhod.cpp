#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <vector>

#include "rbm/domain.hpp"
#include "rbm/errors.hpp"
#include "rbm/rng.hpp"
#include "rbm/skorokhod.hpp"

using namespace rbm;

namespace {

DrivingPath random_polyline(std::uint64_t seed, int n, double y0) {
    CounterRng rng(seed);
    DrivingPath p;
    p.t.push_back(0.0);
    p.gamma.push_back({0.0, y0});
    for (int k = 1; k <= n; ++k) {
        p.t.push_back(k * 0.01);
        double g1, g2;
        rng.normal_pair(g1, g2);
        p.gamma.push_back(p.gamma.back() + Vec2{g1, g2} * 0.1);
    }
    return p;
}

// scaled-down walk starting near the unit circle, so the boundary is hit
DrivingPath disc_polyline(std::uint64_t seed, int n) {
    CounterRng rng(seed);
    DrivingPath p;
    p.t.push_back(0.0);
    p.gamma.push_back({0.98, 0.0});
    for (int k = 1; k <= n; ++k) {
        p.t.push_back(k * 0.01);
        double g1, g2;
        rng.normal_pair(g1, g2);
        p.gamma.push_back(p.gamma.back() + Vec2{g1, g2} * 0.03);
    }
    return p;
}

// closed form on the half-plane evaluated on the same refined grid
void check_half_plane_closed_form(const DrivingPath& path, double h_max) {
    HalfPlane hp;
    ReflectedPath rp = skorokhod_transform(hp, path, h_max);
    // rebuild the refined driving polyline
    std::vector<Vec2> gamma{path.gamma.front()};
    for (std::size_t k = 0; k + 1 < path.t.size(); ++k) {
        double dt = path.t[k + 1] - path.t[k];
        int substeps = std::max(1, int(std::ceil(dt / h_max)));
        Vec2 dg = (path.gamma[k + 1] - path.gamma[k]) / double(substeps);
        for (int s = 0; s < substeps; ++s) gamma.push_back(gamma.back() + dg);
    }
    REQUIRE(gamma.size() == rp.beta.size());
    double running_min = 0.0;
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        running_min = std::min(running_min, gamma[i].y);
        double ell = -running_min; // = max(0, max(-gamma_y))
        CHECK(std::abs(rp.beta[i].x - gamma[i].x) < 1e-12);
        CHECK(std::abs(rp.beta[i].y - (gamma[i].y + ell)) < 1e-12);
        CHECK(std::abs(rp.local_time[i] - ell) < 1e-12);
    }
}

} // namespace

TEST_SUITE("skorokhod") {

TEST_CASE("half-plane transform matches the reflection closed form") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
        check_half_plane_closed_form(random_polyline(seed, 200, 0.5), 0.01);
    // coarser polyline refined into substeps
    DrivingPath p = random_polyline(99, 40, 0.2);
    check_half_plane_closed_form(p, 0.003);
}

TEST_CASE("contraction gap is non-negative") {
    HalfPlane hp;
    Domain disc = Domain::disc(1.0);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        VariationGap vh = variation_gap_check(hp, random_polyline(seed, 200, 0.5), 0.01);
        CHECK(vh.gap >= 0.0);
        CHECK(vh.driving_variation >= vh.reflected_variation);

        VariationGap vd = variation_gap_check(disc, disc_polyline(seed + 100, 200), 0.002);
        CHECK(vd.gap >= 0.0);
    }
}

TEST_CASE("local time grows only at the boundary and the path stays inside") {
    Domain disc = Domain::disc(1.0);
    DrivingPath p = disc_polyline(5, 400);
    ReflectedPath rp = skorokhod_transform(disc, p, 0.002);
    for (std::size_t i = 1; i < rp.beta.size(); ++i) {
        CHECK(disc.classify(rp.beta[i]) != Location::Outside);
        double dl = rp.local_time[i] - rp.local_time[i - 1];
        CHECK(dl >= 0.0);
        if (dl > 0.0)
            CHECK(std::abs(rp.beta[i].norm() - 1.0) < 1e-9); // push ends on the circle
    }
    CHECK(rp.local_time.back() > 0.0); // this path does reach the boundary
}

TEST_CASE("step guards") {
    Domain disc = Domain::disc(1.0);
    CHECK_THROWS_AS(reflected_step(disc, Vec2{0.0, 0.0}, Vec2{0.5, 0.0}), NumericalError);
    DrivingPath p;
    p.t = {0.0, 1.0};
    p.gamma = {{5.0, 0.0}, {5.1, 0.0}}; // starts outside
    CHECK_THROWS_AS(skorokhod_transform(disc, p, 0.01), ConfigError);
    DrivingPath bad;
    bad.t = {0.0, -1.0};
    bad.gamma = {{0.0, 0.0}, {0.1, 0.0}};
    CHECK_THROWS(skorokhod_transform(disc, bad, 0.01));
}

TEST_CASE("path CSV roundtrip") {
    DrivingPath p = random_polyline(3, 25, 1.0);
    std::string file = "test_path_roundtrip.csv";
    {
        // write via the reflected-path writer's sibling format: t,x,y
        FILE* f = std::fopen(file.c_str(), "w");
        REQUIRE(f);
        std::fprintf(f, "t,x,y\n");
        for (std::size_t i = 0; i < p.t.size(); ++i)
            std::fprintf(f, "%.17g,%.17g,%.17g\n", p.t[i], p.gamma[i].x, p.gamma[i].y);
        std::fclose(f);
    }
    DrivingPath q = read_path_csv(file);
    REQUIRE(q.t.size() == p.t.size());
    for (std::size_t i = 0; i < p.t.size(); ++i) {
        CHECK(q.t[i] == p.t[i]);
        CHECK(q.gamma[i].x == p.gamma[i].x);
        CHECK(q.gamma[i].y == p.gamma[i].y);
    }
    std::remove(file.c_str());
}

} // TEST_SUITE
