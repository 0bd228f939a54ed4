#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rbm/domain.hpp"

namespace rbm {

struct SimConfig {
    double h = 1e-4;  // time step
    double T = 50.0;  // horizon
    Vec2 x0{0.5, 0.0};
    Vec2 y0{0.5, 0.01};
    std::uint64_t seed = 1;
    int thin_stride = 100;   // storage stride; accumulators stay un-thinned
    double d_exc = -1.0;     // excursion displacement threshold; <0: 50*sqrt(h)
    double d_floor = 1e-12;  // slope-fit floor before rounding noise dominates

    double excursion_threshold() const;
};

struct ExcursionRecord {
    BoundaryPoint start;
    BoundaryPoint end;
    double t_start = 0.0;
    double t_end = 0.0;
    double alpha = 0.0;
    double abs_log_cos = 0.0;
};

// boundary function registered for the ergodic functional (1/t) int phi dL^X
struct FunctionalSpec {
    std::string name;
    std::function<double(const BoundaryPoint&)> phi;
};

struct CouplingStats {
    SimConfig config;
    bool degenerate = false; // x0 == y0: distance identically zero, no slope

    // thinned series
    std::vector<double> t;
    std::vector<double> d;
    std::vector<double> lx;
    std::vector<double> ly;
    std::vector<std::string> functional_names;
    std::vector<std::vector<double>> functional_running; // (1/t) int phi dL^X
    std::vector<double> excursion_running;               // (1/u) sum |log cos alpha|

    std::vector<ExcursionRecord> excursions;
    double excursion_log_cos_sum = 0.0;

    Vec2 final_x{0, 0}, final_y{0, 0};
    double final_lx = 0.0, final_ly = 0.0;
    long steps = 0;
};

// Synchronous coupling: two reflected Euler recursions driven by the same
// Gaussian increments. Deterministic given (seed, h, T).
CouplingStats simulate_coupling(const Domain& domain, const SimConfig& cfg,
                                const std::vector<FunctionalSpec>& functionals = {});

struct SlopeFit {
    double slope = 0.0;
    double std_error = 0.0; // random-walk-noise model: sqrt(1.2 sigma^2 / W)
    long points = 0;
};

// OLS of log d against t on the post-burn-in window, stopped at the d_floor.
SlopeFit estimate_decay_rate(const CouplingStats& stats, double burn_in_fraction = 0.1);
SlopeFit fit_log_slope(const std::vector<double>& t, const std::vector<double>& logd);

// first grid time at which L crosses the level (left-continuous at grid scale)
double inverse_local_time(const std::vector<double>& t, const std::vector<double>& local_time,
                          double level);

// quadrature target (1/(2|D|)) int phi dy for comparing with the running
// functional (bounded domains)
double functional_target(const Domain& domain,
                         const std::function<double(const BoundaryPoint&)>& phi);

} // namespace rbm
