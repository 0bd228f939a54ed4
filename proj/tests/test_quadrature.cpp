#include "doctest.h"

#include <cmath>

#include "rbm/quadrature.hpp"

using namespace rbm;

namespace {
constexpr double kPi = 3.141592653589793238;
}

TEST_SUITE("quadrature") {

TEST_CASE("polynomials and smooth integrands") {
    QuadResult q = integrate_adaptive([](double x) { return x * x * x; }, 0.0, 2.0, 1e-12);
    CHECK(q.value == doctest::Approx(4.0).epsilon(1e-13));
    q = integrate_adaptive([](double x) { return std::exp(x); }, -1.0, 1.0, 1e-12);
    CHECK(q.value == doctest::Approx(std::exp(1.0) - std::exp(-1.0)).epsilon(1e-13));
    CHECK(std::abs(q.value - (std::exp(1.0) - std::exp(-1.0))) <= std::max(q.error, 1e-14));
}

TEST_CASE("oscillatory integrand") {
    QuadResult q = integrate_adaptive([](double x) { return std::cos(50 * kPi * x); }, 0.0, 1.0,
                                      1e-11);
    CHECK(std::abs(q.value) < 1e-11);
}

TEST_CASE("endpoint log singularity") {
    QuadResult q = integrate_adaptive([](double x) { return std::log(x); }, 0.0, 1.0, 1e-10);
    CHECK(q.value == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(std::abs(q.value + 1.0) <= std::max(q.error, 1e-12));
}

TEST_CASE("interior singularity with an explicit split") {
    QuadResult q = integrate_adaptive_split([](double x) { return std::log(std::abs(x)); }, -1.0,
                                            1.0, {0.0}, 1e-10);
    CHECK(q.value == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("log-cosine integral (half-range oracle building block)") {
    // int_0^{pi/2} -log(cos t) dt = (pi/2) log 2
    QuadResult q = integrate_adaptive([](double t) { return -std::log(std::cos(t)); }, 0.0,
                                      kPi / 2, 1e-10);
    CHECK(q.value == doctest::Approx(kPi / 2 * std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("error estimate brackets the true error") {
    auto f = [](double x) { return 1.0 / std::sqrt(x); };
    QuadResult q = integrate_adaptive(f, 0.0, 1.0, 1e-8);
    CHECK(std::abs(q.value - 2.0) <= std::max(q.error, 1e-10));
}

TEST_CASE("periodic trapezoid rule is spectrally accurate") {
    // int_0^1 exp(cos 2 pi u) du = I_0(1)
    double v = trapezoid_periodic(32, [](double u) { return std::exp(std::cos(2 * kPi * u)); });
    CHECK(v == doctest::Approx(std::cyl_bessel_i(0.0, 1.0)).epsilon(1e-14));
    double c = trapezoid_periodic(16, [](double u) { return std::cos(2 * kPi * u); });
    CHECK(std::abs(c) < 1e-15);
}

} // TEST_SUITE
