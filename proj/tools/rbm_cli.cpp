// Command-line front end: lambda, simulate, sweep, transform, validate.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "rbm/config.hpp"
#include "rbm/coupling.hpp"
#include "rbm/errors.hpp"
#include "rbm/harmonic.hpp"
#include "rbm/lyapunov.hpp"
#include "rbm/parallel.hpp"
#include "rbm/report.hpp"
#include "rbm/skorokhod.hpp"

namespace fs = std::filesystem;
using namespace rbm;

namespace {

constexpr double kPi = 3.141592653589793238;

struct Flags {
    std::string config_path;
    std::optional<std::string> domain;
    std::optional<std::string> hm;
    std::optional<std::string> out_dir;
    std::optional<int> workers;
    std::optional<int> outer_nodes;
    std::optional<double> inner_tol;
    std::optional<int> panels;
    std::optional<double> delta0;
    std::optional<long> wos_n;
    std::optional<double> T, h;
    std::optional<std::uint64_t> seed;
    std::optional<int> seeds;
    std::optional<std::vector<double>> x0, y0;
    std::optional<double> d_exc;
    std::optional<double> burn_in;
    std::optional<int> thin;
    // transform
    std::string input_path;
    double h_max = 1e-3;
    // sweep
    std::optional<double> outer_radius;
    std::optional<std::string> holes; // "cx,cy,r;cx,cy,r;..."
    bool quick = false;
};

std::vector<HoleSpec> parse_holes(const std::string& text) {
    std::vector<HoleSpec> out;
    std::istringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        if (group.empty()) continue;
        std::istringstream cells(group);
        std::string cell;
        std::vector<double> v;
        while (std::getline(cells, cell, ',')) v.push_back(std::stod(cell));
        if (v.size() != 3) throw ConfigError("each hole is cx,cy,r; got '" + group + "'");
        out.push_back({{v[0], v[1]}, v[2]});
    }
    return out;
}

ExperimentConfig resolve(const Flags& f) {
    ExperimentConfig cfg = f.config_path.empty() ? ExperimentConfig{}
                                                 : ExperimentConfig::from_file(f.config_path);
    if (f.domain) cfg.domain = DomainSpec::parse(*f.domain);
    if (f.hm) cfg.hm.backend = *f.hm;
    if (f.out_dir) cfg.output_dir = *f.out_dir;
    if (f.workers) cfg.workers = *f.workers;
    if (f.outer_nodes) cfg.quad.outer_nodes = *f.outer_nodes;
    if (f.inner_tol) cfg.quad.inner_tol = *f.inner_tol;
    if (f.panels) { cfg.hm.panels = *f.panels; cfg.quad.nystrom_panels = *f.panels; }
    if (f.delta0) { cfg.hm.delta0 = *f.delta0; cfg.quad.nystrom_delta0 = *f.delta0; }
    if (f.wos_n) cfg.hm.wos.walkers = *f.wos_n;
    if (f.T) cfg.sim.T = *f.T;
    if (f.h) cfg.sim.h = *f.h;
    if (f.seed) { cfg.sim.seed = *f.seed; cfg.hm.wos.seed = *f.seed; }
    if (f.seeds) cfg.sim_seeds = *f.seeds;
    if (f.x0) {
        if (f.x0->size() != 2) throw ConfigError("--x0 wants two numbers");
        cfg.sim.x0 = {(*f.x0)[0], (*f.x0)[1]};
    }
    if (f.y0) {
        if (f.y0->size() != 2) throw ConfigError("--y0 wants two numbers");
        cfg.sim.y0 = {(*f.y0)[0], (*f.y0)[1]};
    }
    if (f.d_exc) cfg.sim.d_exc = *f.d_exc;
    if (f.burn_in) cfg.burn_in = *f.burn_in;
    if (f.thin) cfg.sim.thin_stride = *f.thin;
    if (f.outer_radius) cfg.sweep_outer_radius = *f.outer_radius;
    if (f.holes) cfg.sweep_holes = parse_holes(*f.holes);
    cfg.hm.wos.workers = cfg.workers;
    return cfg;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.output_dir);
    return (fs::path(cfg.output_dir) / name).string();
}

int cmd_lambda(const Flags& flags) {
    Timer timer;
    ExperimentConfig cfg = resolve(flags);
    LyapunovReport report;
    if (cfg.domain.kind == "ellipse_exterior") {
        report = lambda_ellipse_exterior(cfg.domain.map_a, cfg.quad);
    } else {
        Domain domain = cfg.domain.build();
        HarmonicMeasure hm = cfg.hm.build(domain);
        report = lambda_report(domain, hm, cfg.quad);
        if (cfg.hm.backend == "wos") report.seed = cfg.hm.wos.seed;
    }
    report.domain_id = cfg.domain.id();

    std::string csv = out_path(cfg, "lambda.csv");
    std::string summary = out_path(cfg, "summary.json");
    write_lambda_csv(csv, {report});
    std::ofstream(summary) << lambda_summary_json({report});

    RunManifest m;
    m.command = "lambda";
    m.config_json = cfg.to_json_text();
    m.seeds = {report.seed};
    m.wall_seconds = timer.seconds();
    m.error_estimates = {{"curvature_term", report.err_curv}, {"cross_term", report.err_cross}};
    m.output_files = {csv, summary};
    m.write(out_path(cfg, "manifest.json"));

    std::cout << "domain " << report.domain_id << ": lambda = " << report.lambda
              << " (curvature " << report.curvature_term << ", cross " << report.cross_term
              << ")";
    if (report.decay_rate) std::cout << ", decay rate " << *report.decay_rate;
    std::cout << "\n";
    return 0;
}

int cmd_simulate(const Flags& flags) {
    Timer timer;
    ExperimentConfig cfg = resolve(flags);
    Domain domain = cfg.domain.build();
    if (domain.is_exterior()) throw ConfigError("simulate needs a bounded domain");

    std::vector<FunctionalSpec> funcs{
        {"one", [](const BoundaryPoint&) { return 1.0; }},
        {"nu", [](const BoundaryPoint& p) { return p.curvature; }},
    };

    int n = cfg.sim_seeds;
    std::vector<CouplingStats> runs;
    runs.resize(std::size_t(n));
    std::vector<std::string> failures;
    failures.resize(std::size_t(n));
    parallel_chunks(n, cfg.workers, [&](long k) {
        SimConfig sc = cfg.sim;
        sc.seed = cfg.sim.seed + std::uint64_t(k);
        try {
            runs[std::size_t(k)] = simulate_coupling(domain, sc, funcs);
        } catch (const std::exception& e) {
            failures[std::size_t(k)] = e.what();
        }
    });
    for (const auto& msg : failures)
        if (!msg.empty()) throw NumericalError("replica failed: " + msg);

    std::vector<SlopeRow> slopes;
    std::vector<std::string> files;
    std::vector<std::uint64_t> seeds;
    for (const auto& run : runs) {
        std::string series =
            out_path(cfg, "series_seed" + std::to_string(run.config.seed) + ".csv");
        write_sim_series_csv(series, run);
        files.push_back(series);
        seeds.push_back(run.config.seed);
        SlopeRow row;
        row.seed = run.config.seed;
        row.degenerate = run.degenerate;
        if (!run.degenerate) row.fit = estimate_decay_rate(run, cfg.burn_in);
        slopes.push_back(row);
    }

    double target = std::numeric_limits<double>::quiet_NaN();
    if (cfg.domain.kind == "disc") {
        // both Lambda terms equal 2 pi on a disc and Lambda is scale invariant
        target = -2.0 * kPi / domain.area();
    }

    std::string slopes_csv = out_path(cfg, "slopes.csv");
    std::string summary = out_path(cfg, "summary.json");
    write_slopes_csv(slopes_csv, slopes);
    std::ofstream(summary) << simulate_summary_json(slopes, target, cfg.to_json_text());
    files.push_back(slopes_csv);
    files.push_back(summary);

    RunManifest m;
    m.command = "simulate";
    m.config_json = cfg.to_json_text();
    m.seeds = seeds;
    m.wall_seconds = timer.seconds();
    m.output_files = files;
    m.write(out_path(cfg, "manifest.json"));

    double mean = 0.0;
    long cnt = 0;
    for (const auto& s : slopes)
        if (!s.degenerate) { mean += s.fit.slope; ++cnt; }
    if (cnt > 0)
        std::cout << "mean slope over " << cnt << " replicas: " << mean / double(cnt)
                  << (std::isnan(target) ? std::string()
                                         : " (target " + std::to_string(target) + ")")
                  << "\n";
    else
        std::cout << "all replicas degenerate (x0 = y0); no slope\n";
    return 0;
}

int cmd_sweep(const Flags& flags) {
    Timer timer;
    ExperimentConfig cfg = resolve(flags);
    std::vector<SweepRow> rows = hole_sweep(cfg.sweep_outer_radius, cfg.sweep_holes, cfg.quad);

    std::string csv = out_path(cfg, "sweep.csv");
    write_sweep_csv(csv, rows);

    RunManifest m;
    m.command = "sweep";
    m.config_json = cfg.to_json_text();
    m.wall_seconds = timer.seconds();
    for (const auto& row : rows)
        m.error_estimates.push_back(
            {row.report.domain_id, row.report.err_curv + row.report.err_cross});
    m.output_files = {csv};
    m.write(out_path(cfg, "manifest.json"));

    for (const auto& row : rows)
        std::cout << row.report.domain_id << ": lambda = " << row.report.lambda << "\n";
    return 0;
}

int cmd_transform(const Flags& flags) {
    Timer timer;
    ExperimentConfig cfg = resolve(flags);
    DrivingPath path = read_path_csv(flags.input_path);
    ReflectedPath reflected;
    if (flags.domain && *flags.domain == "half_plane") {
        reflected = skorokhod_transform(HalfPlane{}, path, flags.h_max);
    } else {
        Domain domain = cfg.domain.build();
        if (domain.is_exterior()) throw ConfigError("transform needs a bounded domain");
        reflected = skorokhod_transform(domain, path, flags.h_max);
    }
    std::string out = out_path(cfg, "reflected.csv");
    write_reflected_csv(out, reflected);

    RunManifest m;
    m.command = "transform";
    m.config_json = cfg.to_json_text();
    m.wall_seconds = timer.seconds();
    m.output_files = {out};
    m.write(out_path(cfg, "manifest.json"));

    std::cout << "reflected " << path.t.size() << " input samples into " << reflected.t.size()
              << " steps; final local time " << reflected.local_time.back() << "\n";
    return 0;
}

// ---- validate --------------------------------------------------------------

struct Validator {
    bool all_ok = true;
    void check(const std::string& name, bool ok, const std::string& detail) {
        all_ok = all_ok && ok;
        std::cout << (ok ? "PASS " : "FAIL ") << name << "  (" << detail << ")\n";
    }
    void near(const std::string& name, double got, double want, double tol) {
        std::ostringstream os;
        os << "got " << got << ", want " << want << " +- " << tol;
        check(name, std::abs(got - want) <= tol, os.str());
    }
};

void validate_quick(Validator& v) {
    // Gauss-Bonnet across the catalog at n_quad = 512
    struct { const char* name; Domain d; double want; } gb[] = {
        {"gauss_bonnet_disc", Domain::disc(1.0, 512), 2 * kPi},
        {"gauss_bonnet_ellipse", Domain::ellipse(2.0, 1.0, 512), 2 * kPi},
        {"gauss_bonnet_annulus", Domain::annulus(0.5, 1.0, 512), 0.0},
        {"gauss_bonnet_two_holes",
         Domain::disc_with_holes(1.0, {{-0.4, 0.0}, {0.4, 0.0}}, {0.1, 0.1}, 512), -2 * kPi},
        {"gauss_bonnet_disc_exterior", Domain::disc_exterior(1.0, 512), -2 * kPi},
    };
    for (const auto& row : gb) v.near(row.name, row.d.curvature_integral().first, row.want, 1e-8);

    // disc exterior: cross term 2 pi, half-range split pi +- 2 log 2, Lambda 0
    Domain ext = Domain::disc_exterior(1.0, 512);
    HarmonicMeasure hm = HarmonicMeasure::exact(ext);
    QuadConfig quick_cfg;
    quick_cfg.outer_nodes = 64;
    LyapunovReport r = lambda_report(ext, hm, quick_cfg);
    v.near("disc_exterior_cross_term", r.cross_term, 2 * kPi, 1e-6);
    v.near("disc_exterior_lambda", r.lambda, 0.0, 1e-6);
    auto [near_half, far_half] = disc_exterior_half_range_integrals();
    v.near("disc_exterior_half_near", near_half, kPi + 2 * std::log(2.0), 1e-6);
    v.near("disc_exterior_half_far", far_half, kPi - 2 * std::log(2.0), 1e-6);

    // half-plane identities
    v.near("halfplane_density", density_half_plane(0.5), 1.0 / (kPi * 0.25), 1e-12);
    v.near("halfplane_tail_mass", half_plane_tail_mass(2.0), 1.0 / kPi, 1e-12);
    v.near("excursion_height_law", excursion_height_law_halfplane(4.0), 0.25, 1e-12);
    v.near("excursion_void_probability", excursion_poisson_void_probability(), 0.5, 1e-9);

    // Skorokhod transform against the half-plane running-minimum formula
    HalfPlane hp;
    CounterRng rng(20260823, 0);
    double worst = 0.0, worst_gap = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        DrivingPath path;
        double y = 0.5 + rng.uniform();
        double x = 0.0, t = 0.0;
        path.t.push_back(0.0);
        path.gamma.push_back({x, y});
        int segments = 5 + int(rng.uniform() * 20);
        for (int s = 0; s < segments; ++s) {
            t += 0.05 + 0.2 * rng.uniform();
            x += rng.normal() * 0.3;
            y += rng.normal() * 0.6;
            path.t.push_back(t);
            path.gamma.push_back({x, y});
        }
        double h_max = 0.01;
        ReflectedPath rp = skorokhod_transform(hp, path, h_max);
        // closed form on the same refined grid: beta2 = gamma2 - min(0, min gamma2),
        // ell = -min(0, min gamma2); beta1 tracks gamma1 exactly
        double run_min = 0.0;
        std::size_t idx = 1;
        for (std::size_t k = 0; k + 1 < path.t.size(); ++k) {
            double dt = path.t[k + 1] - path.t[k];
            int sub = std::max(1, int(std::ceil(dt / h_max)));
            for (int s = 0; s < sub; ++s, ++idx) {
                double frac = double(s + 1) / sub;
                Vec2 g = path.gamma[k] + frac * (path.gamma[k + 1] - path.gamma[k]);
                run_min = std::min(run_min, g.y);
                double ell = -std::min(0.0, run_min);
                worst = std::max(worst, std::abs(rp.beta[idx].y - (g.y + ell)));
                worst = std::max(worst, std::abs(rp.beta[idx].x - g.x));
                worst = std::max(worst, std::abs(rp.local_time[idx] - ell));
            }
        }
        VariationGap gap = variation_gap_check(hp, path, h_max);
        worst_gap = std::min(worst_gap, gap.gap);
    }
    v.near("skorokhod_halfplane_oracle", worst, 0.0, 1e-12);
    v.check("skorokhod_contraction_gap", worst_gap >= 0.0,
            "min gap " + std::to_string(worst_gap));
}

void validate_full(Validator& v, int workers) {
    for (double a : {0.2, 0.5, 0.8}) {
        LyapunovReport r = lambda_ellipse_exterior(a);
        v.near("ellipse_exterior_cross_a" + std::to_string(a).substr(0, 3), r.cross_term,
               2 * kPi, 1e-6);
        v.near("ellipse_exterior_lambda_a" + std::to_string(a).substr(0, 3), r.lambda, 0.0,
               1e-6);
    }

    QuadConfig cfg;
    cfg.outer_nodes = 64;
    for (double a : {0.5, 2.0}) {
        ScalingCheck sc = scaling_invariance_check(Domain::disc(1.0), a,
                                                   HarmonicMeasure::Backend::Exact, cfg);
        v.near("scaling_disc_a" + std::to_string(a).substr(0, 3), sc.difference, 0.0, 1e-6);
    }

    // WoS annulus hitting probability from (0.75, 0)
    Domain ann = Domain::annulus(0.5, 1.0);
    WosConfig wos;
    wos.walkers = 100000;
    wos.seed = 7;
    wos.workers = workers;
    HitFraction hit = wos_hit_fraction(ann, {0.75, 0.0}, 1, 0.0, 1.0, wos);
    double want = std::log(4.0 / 3.0) / std::log(2.0);
    v.near("wos_annulus_hit_probability", hit.probability, want,
           3.0 * hit.std_error + 1e-12);

    // Nystrom kernel against the exact unit-disc law at a few pairs
    Domain disc = Domain::disc(1.0);
    HarmonicMeasure ny = HarmonicMeasure::nystrom(disc, 256);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        BoundaryPoint x = disc.boundary_point(0, 0.13 + 0.11 * i);
        BoundaryPoint y = disc.boundary_point(0, 0.55 + 0.07 * i);
        double exact = density_exact_disc_interior(x, y);
        worst = std::max(worst, std::abs(ny.density(x, y).density - exact));
    }
    v.near("nystrom_disc_kernel", worst, 0.0, 1e-3);
}

int cmd_validate(const Flags& flags) {
    ExperimentConfig cfg = resolve(flags);
    Validator v;
    validate_quick(v);
    if (!flags.quick) validate_full(v, cfg.workers);
    std::cout << (v.all_ok ? "all checks passed\n" : "some checks FAILED\n");
    return v.all_ok ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lyapunov exponents and synchronous couplings of reflected "
                 "Brownian motions in smooth planar domains"};
    app.require_subcommand(1);
    Flags f;

    // free the short -h name for the step-size flag
    app.set_help_flag("--help", "print help");

    auto add_common = [&](CLI::App* sub) {
        sub->set_help_flag("--help", "print help");
        sub->add_option("--config", f.config_path, "JSON config file; flags override it");
        sub->add_option("--domain", f.domain, "domain, e.g. disc, annulus:0.5,1");
        sub->add_option("--out", f.out_dir, "output directory");
        sub->add_option("--workers", f.workers, "worker threads");
    };

    CLI::App* lambda = app.add_subcommand("lambda", "compute the Lyapunov exponent");
    add_common(lambda);
    lambda->add_option("--hm", f.hm, "harmonic-measure backend: exact | nystrom | wos");
    lambda->add_option("--outer-nodes", f.outer_nodes, "outer quadrature nodes");
    lambda->add_option("--inner-tol", f.inner_tol, "inner quadrature tolerance");
    lambda->add_option("--panels", f.panels, "Nystrom panels per curve");
    lambda->add_option("--delta0", f.delta0, "Nystrom standoff (relative)");
    lambda->add_option("--wos-n", f.wos_n, "walk-on-spheres walkers");

    CLI::App* simulate = app.add_subcommand("simulate", "synchronous coupling runs");
    add_common(simulate);
    simulate->add_option("--T", f.T, "horizon");
    simulate->add_option("--h", f.h, "time step");
    simulate->add_option("--seed", f.seed, "base seed");
    simulate->add_option("--seeds", f.seeds, "number of replicas");
    simulate->add_option("--x0", f.x0, "start of X (two numbers)")->expected(2);
    simulate->add_option("--y0", f.y0, "start of Y (two numbers)")->expected(2);
    simulate->add_option("--d-exc", f.d_exc, "excursion displacement threshold");
    simulate->add_option("--burn-in", f.burn_in, "slope-fit burn-in fraction");
    simulate->add_option("--thin", f.thin, "storage stride");

    CLI::App* sweep = app.add_subcommand("sweep", "multi-hole domain sweep");
    add_common(sweep);
    sweep->add_option("--outer-radius", f.outer_radius, "outer disc radius");
    sweep->add_option("--holes", f.holes, "holes as cx,cy,r;cx,cy,r;...");
    sweep->add_option("--panels", f.panels, "Nystrom panels per curve");
    sweep->add_option("--outer-nodes", f.outer_nodes, "outer quadrature nodes");

    CLI::App* transform = app.add_subcommand("transform", "Skorokhod transform of a path file");
    add_common(transform);
    transform->add_option("--input", f.input_path, "CSV driving path (t,x,y)")->required();
    transform->add_option("--h-max", f.h_max, "max substep duration");

    CLI::App* validate = app.add_subcommand("validate", "closed-form identity checks");
    add_common(validate);
    validate->add_flag("--quick", f.quick, "exact-kernel checks only");

    try {
        app.parse(argc, argv);
        if (lambda->parsed()) return cmd_lambda(f);
        if (simulate->parsed()) return cmd_simulate(f);
        if (sweep->parsed()) return cmd_sweep(f);
        if (transform->parsed()) return cmd_transform(f);
        if (validate->parsed()) return cmd_validate(f);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
