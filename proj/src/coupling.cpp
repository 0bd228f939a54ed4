#include "rbm/coupling.hpp"

#include <algorithm>
#include <cmath>

#include "rbm/errors.hpp"
#include "rbm/lyapunov.hpp"
#include "rbm/rng.hpp"
#include "rbm/skorokhod.hpp"

namespace rbm {

double SimConfig::excursion_threshold() const {
    return d_exc > 0.0 ? d_exc : 50.0 * std::sqrt(h);
}

CouplingStats simulate_coupling(const Domain& domain, const SimConfig& cfg,
                                const std::vector<FunctionalSpec>& functionals) {
    if (cfg.h <= 0.0 || cfg.T <= 0.0) throw ConfigError("h and T must be positive");
    if (cfg.thin_stride < 1) throw ConfigError("thin_stride must be >= 1");
    if (!domain.contains(cfg.x0) || !domain.contains(cfg.y0))
        throw ConfigError("both starting points must lie inside the domain");
    double feature = domain.feature_size();
    if (std::sqrt(cfg.h) > 0.05 * feature)
        throw ConfigError("sqrt(h) exceeds 5% of the feature size; shrink h");

    CouplingStats st;
    st.config = cfg;
    st.degenerate = (cfg.x0 - cfg.y0).norm() == 0.0;
    for (const auto& f : functionals) st.functional_names.push_back(f.name);
    st.functional_running.resize(functionals.size());

    long n_steps = long(std::ceil(cfg.T / cfg.h - 1e-9));
    double sqrt_h = std::sqrt(cfg.h);
    CounterRng rng(cfg.seed, 0);

    Vec2 x = cfg.x0, y = cfg.y0;
    double lx = 0.0, ly = 0.0;
    std::vector<double> fsum(functionals.size(), 0.0);

    // excursion bookkeeping for X
    const double d_exc = cfg.excursion_threshold();
    bool have_contact = false;
    BoundaryPoint last_contact;
    double t_last_contact = 0.0;
    double max_disp = 0.0;

    auto record = [&](double t) {
        st.t.push_back(t);
        st.d.push_back((x - y).norm());
        st.lx.push_back(lx);
        st.ly.push_back(ly);
        for (std::size_t i = 0; i < fsum.size(); ++i)
            st.functional_running[i].push_back(t > 0.0 ? fsum[i] / t : 0.0);
        st.excursion_running.push_back(t > 0.0 ? st.excursion_log_cos_sum / t : 0.0);
    };
    record(0.0);

    for (long k = 0; k < n_steps; ++k) {
        double g1, g2;
        rng.normal_pair(g1, g2);
        Vec2 db{g1 * sqrt_h, g2 * sqrt_h};
        double t = double(k + 1) * cfg.h;

        StepResult rx = reflected_step(domain, x, db);
        x = rx.position;
        lx += rx.local_time_increment;
        if (rx.on_boundary) {
            for (std::size_t i = 0; i < functionals.size(); ++i)
                fsum[i] += functionals[i].phi(rx.contact) * rx.local_time_increment;
            if (have_contact && max_disp > d_exc) {
                ExcursionRecord e;
                e.start = last_contact;
                e.end = rx.contact;
                e.t_start = t_last_contact;
                e.t_end = t;
                e.alpha = tangent_angle_alpha(e.start, e.end);
                e.abs_log_cos = abs_log_cos_alpha(e.start, e.end);
                st.excursion_log_cos_sum += e.abs_log_cos;
                st.excursions.push_back(e);
            }
            have_contact = true;
            last_contact = rx.contact;
            t_last_contact = t;
            max_disp = 0.0;
        } else if (have_contact) {
            max_disp = std::max(max_disp, (x - last_contact.position).norm());
        }

        StepResult ry = reflected_step(domain, y, db);
        y = ry.position;
        ly += ry.local_time_increment;

        if ((k + 1) % cfg.thin_stride == 0 || k + 1 == n_steps) record(t);
    }

    st.final_x = x;
    st.final_y = y;
    st.final_lx = lx;
    st.final_ly = ly;
    st.steps = n_steps;
    return st;
}

SlopeFit fit_log_slope(const std::vector<double>& t, const std::vector<double>& logd) {
    long n = long(t.size());
    if (n < 100) throw NumericalError("insufficient data for the slope fit (<100 points)");
    double tbar = 0.0, ybar = 0.0;
    for (long i = 0; i < n; ++i) { tbar += t[i]; ybar += logd[i]; }
    tbar /= double(n);
    ybar /= double(n);
    double sxx = 0.0, sxy = 0.0;
    for (long i = 0; i < n; ++i) {
        sxx += (t[i] - tbar) * (t[i] - tbar);
        sxy += (t[i] - tbar) * (logd[i] - ybar);
    }
    if (sxx <= 0.0) throw NumericalError("degenerate time grid in the slope fit");
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.points = n;

    // The deviation of log d from its trend is an integrated jump process
    // (each boundary excursion contributes a |log cos alpha| jump), i.e. a
    // random walk in t, not stationary noise around the line. Residual-based
    // iid or HAC formulas assume the latter and underestimate the error by an
    // order of magnitude. For a trend plus Brownian-like noise of per-time
    // variance sigma^2, Var(OLS slope) = (6/5) sigma^2 / W with W the window
    // span. sigma^2 is a Bartlett-weighted long-run variance of the
    // increments so that short-range jump clustering (excursions bunch while
    // the particle stays near the boundary) is absorbed.
    long m = n - 1;
    double span = t.back() - t.front();
    double dt = span / double(m);
    std::vector<double> inc(static_cast<std::size_t>(m));
    double ibar = 0.0;
    for (long i = 0; i < m; ++i) {
        inc[std::size_t(i)] = logd[i + 1] - logd[i];
        ibar += inc[std::size_t(i)];
    }
    ibar /= double(m);
    for (double& v : inc) v -= ibar;
    long L = std::clamp(dt > 0.0 ? long(std::ceil(1.0 / dt)) : 1L, 1L, m / 3);
    double s_lr = 0.0;
    for (long i = 0; i < m; ++i) s_lr += inc[std::size_t(i)] * inc[std::size_t(i)];
    for (long l = 1; l <= L; ++l) {
        double w = 1.0 - double(l) / double(L + 1);
        double c = 0.0;
        for (long i = 0; i + l < m; ++i) c += inc[std::size_t(i)] * inc[std::size_t(i + l)];
        s_lr += 2.0 * w * c;
    }
    double sigma2 = std::max(0.0, s_lr) / span;
    fit.std_error = std::sqrt(1.2 * sigma2 / span);
    return fit;
}

SlopeFit estimate_decay_rate(const CouplingStats& stats, double burn_in_fraction) {
    if (stats.degenerate)
        throw NumericalError("coupled paths coincide; the distance is identically zero");
    if (burn_in_fraction < 0.0 || burn_in_fraction >= 1.0)
        throw ConfigError("burn-in fraction must lie in [0, 1)");
    // The fit window ends where d reaches the rounding floor, which is usually
    // long before T, so the burn-in is a fraction of the usable window rather
    // than of the horizon.
    double t_end = stats.t.back();
    for (std::size_t i = 0; i < stats.t.size(); ++i) {
        if (!(stats.d[i] > stats.config.d_floor)) { t_end = stats.t[i]; break; }
    }
    double t_min = burn_in_fraction * t_end;
    std::vector<double> tt, yy;
    for (std::size_t i = 0; i < stats.t.size(); ++i) {
        if (stats.t[i] < t_min) continue;
        if (!(stats.d[i] > stats.config.d_floor)) break; // rounding-noise regime
        tt.push_back(stats.t[i]);
        yy.push_back(std::log(stats.d[i]));
    }
    return fit_log_slope(tt, yy);
}

double inverse_local_time(const std::vector<double>& t, const std::vector<double>& local_time,
                          double level) {
    if (t.size() != local_time.size() || t.empty())
        throw ConfigError("time and local-time series must have equal nonzero length");
    if (level < 0.0) throw ConfigError("local-time level must be non-negative");
    auto it = std::lower_bound(local_time.begin(), local_time.end(), level);
    if (it == local_time.end())
        throw NumericalError("local time never reaches the requested level");
    return t[std::size_t(it - local_time.begin())];
}

double functional_target(const Domain& domain,
                         const std::function<double(const BoundaryPoint&)>& phi) {
    if (domain.is_exterior()) throw DomainError("ergodic target needs a bounded domain");
    double integral = 0.0;
    const int n = 4096;
    for (int ci = 0; ci < int(domain.curves().size()); ++ci) {
        const auto& c = domain.curves()[std::size_t(ci)];
        for (int j = 0; j < n; ++j) {
            double u = double(j) / n;
            integral += phi(domain.boundary_point(ci, u)) * c.derivative(u).norm() / n;
        }
    }
    return integral / (2.0 * domain.area());
}

} // namespace rbm
