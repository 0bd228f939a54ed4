#include "rbm/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rbm/errors.hpp"

namespace rbm {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

void reject_unknown(const json& obj, const char* where,
                    std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) { known = true; break; }
        if (!known)
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
}

double num(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ConfigError(std::string("key '") + key + "' must be a number");
    return obj[key].get<double>();
}

long integer(const json& obj, const char* key, long fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer())
        throw ConfigError(std::string("key '") + key + "' must be an integer");
    return obj[key].get<long>();
}

std::string str(const json& obj, const char* key, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_string()) throw ConfigError(std::string("key '") + key + "' must be a string");
    return obj[key].get<std::string>();
}

Vec2 vec(const json& v, const char* where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ConfigError(std::string(where) + " must be a [x, y] pair");
    return {v[0].get<double>(), v[1].get<double>()};
}

BoundaryCurve::Series series(const json& v, const char* where) {
    reject_unknown(v, where, {"c0", "cos", "sin"});
    BoundaryCurve::Series s;
    s.c0 = num(v, "c0", 0.0);
    for (const char* key : {"cos", "sin"}) {
        if (!v.contains(key)) continue;
        if (!v[key].is_array()) throw ConfigError(std::string(where) + "." + key + " must be an array");
        auto& dst = std::string(key) == "cos" ? s.ck : s.sk;
        for (const auto& c : v[key]) dst.push_back(c.get<double>());
    }
    return s;
}

DomainSpec domain_from_json(const json& d) {
    reject_unknown(d, "domain",
                   {"kind", "radius", "semi_a", "semi_b", "r_inner", "r_outer", "a", "x", "y",
                    "hole_centers", "hole_radii", "n_quad"});
    DomainSpec spec;
    spec.kind = str(d, "kind", "disc");
    spec.radius = num(d, "radius", spec.radius);
    spec.semi_a = num(d, "semi_a", spec.semi_a);
    spec.semi_b = num(d, "semi_b", spec.semi_b);
    spec.r_inner = num(d, "r_inner", spec.r_inner);
    spec.r_outer = num(d, "r_outer", spec.r_outer);
    spec.map_a = num(d, "a", spec.map_a);
    spec.n_quad = int(integer(d, "n_quad", spec.n_quad));
    if (d.contains("x")) spec.fx = series(d["x"], "domain.x");
    if (d.contains("y")) spec.fy = series(d["y"], "domain.y");
    if (d.contains("hole_centers"))
        for (const auto& c : d["hole_centers"]) spec.hole_centers.push_back(vec(c, "hole center"));
    if (d.contains("hole_radii"))
        for (const auto& r : d["hole_radii"]) spec.hole_radii.push_back(r.get<double>());
    return spec;
}

} // namespace

DomainSpec DomainSpec::parse(const std::string& text) {
    DomainSpec spec;
    auto colon = text.find(':');
    spec.kind = text.substr(0, colon);
    std::vector<double> p;
    if (colon != std::string::npos) {
        std::istringstream rest(text.substr(colon + 1));
        std::string cell;
        while (std::getline(rest, cell, ','))
            try {
                p.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ConfigError("bad number '" + cell + "' in domain '" + text + "'");
            }
    }
    auto want = [&](std::size_t lo, std::size_t hi) {
        if (p.size() < lo || p.size() > hi)
            throw ConfigError("domain '" + text + "': wrong number of parameters");
    };
    if (spec.kind == "disc" || spec.kind == "disc_exterior") {
        want(0, 1);
        if (!p.empty()) spec.radius = p[0];
    } else if (spec.kind == "ellipse") {
        want(0, 2);
        if (p.size() == 2) { spec.semi_a = p[0]; spec.semi_b = p[1]; }
        else if (p.size() == 1) throw ConfigError("ellipse needs both semi-axes");
    } else if (spec.kind == "annulus") {
        want(0, 2);
        if (p.size() == 2) { spec.r_inner = p[0]; spec.r_outer = p[1]; }
        else if (p.size() == 1) throw ConfigError("annulus needs both radii");
    } else if (spec.kind == "ellipse_exterior") {
        want(0, 1);
        if (!p.empty()) spec.map_a = p[0];
    } else if (spec.kind == "disc_with_holes") {
        // outer radius followed by (cx, cy, r) triples
        if (p.empty() || (p.size() - 1) % 3 != 0)
            throw ConfigError("disc_with_holes wants R,cx,cy,r[,cx,cy,r...]");
        spec.radius = p[0];
        for (std::size_t i = 1; i + 2 < p.size() + 1; i += 3) {
            spec.hole_centers.push_back({p[i], p[i + 1]});
            spec.hole_radii.push_back(p[i + 2]);
        }
    } else if (spec.kind == "fourier") {
        throw ConfigError("fourier domains need a config file (coefficient arrays)");
    } else {
        throw ConfigError("unknown domain kind '" + spec.kind + "'");
    }
    return spec;
}

Domain DomainSpec::build() const {
    if (kind == "disc") return Domain::disc(radius, n_quad);
    if (kind == "ellipse") return Domain::ellipse(semi_a, semi_b, n_quad);
    if (kind == "annulus") return Domain::annulus(r_inner, r_outer, n_quad);
    if (kind == "disc_exterior") return Domain::disc_exterior(radius, n_quad);
    if (kind == "ellipse_exterior") return Domain::ellipse_exterior(map_a, n_quad);
    if (kind == "disc_with_holes")
        return Domain::disc_with_holes(radius, hole_centers, hole_radii, n_quad);
    if (kind == "fourier")
        return Domain::from_curves({BoundaryCurve::fourier(fx, fy, true, n_quad)});
    throw ConfigError("unknown domain kind '" + kind + "'");
}

std::string DomainSpec::id() const {
    std::ostringstream os;
    os << kind;
    if (kind == "disc" || kind == "disc_exterior") os << ':' << radius;
    else if (kind == "ellipse") os << ':' << semi_a << ',' << semi_b;
    else if (kind == "annulus") os << ':' << r_inner << ',' << r_outer;
    else if (kind == "ellipse_exterior") os << ':' << map_a;
    else if (kind == "disc_with_holes") os << ':' << radius << "+h" << hole_radii.size();
    return os.str();
}

int DomainSpec::expected_holes() const {
    if (kind == "annulus") return 1;
    if (kind == "disc_with_holes") return int(hole_radii.size());
    return 0;
}

HarmonicMeasure HmSpec::build(const Domain& domain) const {
    if (backend == "exact") return HarmonicMeasure::exact(domain);
    if (backend == "nystrom") return HarmonicMeasure::nystrom(domain, panels, delta0);
    if (backend == "wos") return HarmonicMeasure::wos(domain, wos);
    throw ConfigError("unknown harmonic-measure backend '" + backend + "'");
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(doc, "config",
                   {"domain", "hm", "quad", "sim", "sweep", "output", "workers"});
    ExperimentConfig cfg;
    if (doc.contains("domain")) cfg.domain = domain_from_json(doc["domain"]);
    if (doc.contains("hm")) {
        const json& h = doc["hm"];
        reject_unknown(h, "hm", {"backend", "panels", "delta0", "walkers", "eps", "max_steps",
                                 "seed", "workers"});
        cfg.hm.backend = str(h, "backend", cfg.hm.backend);
        cfg.hm.panels = int(integer(h, "panels", cfg.hm.panels));
        cfg.hm.delta0 = num(h, "delta0", cfg.hm.delta0);
        cfg.hm.wos.walkers = integer(h, "walkers", cfg.hm.wos.walkers);
        cfg.hm.wos.eps_abs = num(h, "eps", cfg.hm.wos.eps_abs);
        cfg.hm.wos.max_steps = int(integer(h, "max_steps", cfg.hm.wos.max_steps));
        cfg.hm.wos.seed = std::uint64_t(integer(h, "seed", long(cfg.hm.wos.seed)));
        cfg.hm.wos.workers = int(integer(h, "workers", cfg.hm.wos.workers));
    }
    if (doc.contains("quad")) {
        const json& q = doc["quad"];
        reject_unknown(q, "quad", {"outer_nodes", "inner_tol", "nystrom_panels", "nystrom_delta0"});
        cfg.quad.outer_nodes = int(integer(q, "outer_nodes", cfg.quad.outer_nodes));
        cfg.quad.inner_tol = num(q, "inner_tol", cfg.quad.inner_tol);
        cfg.quad.nystrom_panels = int(integer(q, "nystrom_panels", cfg.quad.nystrom_panels));
        cfg.quad.nystrom_delta0 = num(q, "nystrom_delta0", cfg.quad.nystrom_delta0);
    }
    if (doc.contains("sim")) {
        const json& s = doc["sim"];
        reject_unknown(s, "sim", {"h", "T", "x0", "y0", "seed", "seeds", "thin_stride", "d_exc",
                                  "burn_in"});
        cfg.sim.h = num(s, "h", cfg.sim.h);
        cfg.sim.T = num(s, "T", cfg.sim.T);
        if (s.contains("x0")) cfg.sim.x0 = vec(s["x0"], "sim.x0");
        if (s.contains("y0")) cfg.sim.y0 = vec(s["y0"], "sim.y0");
        cfg.sim.seed = std::uint64_t(integer(s, "seed", long(cfg.sim.seed)));
        cfg.sim_seeds = int(integer(s, "seeds", cfg.sim_seeds));
        cfg.sim.thin_stride = int(integer(s, "thin_stride", cfg.sim.thin_stride));
        cfg.sim.d_exc = num(s, "d_exc", cfg.sim.d_exc);
        cfg.burn_in = num(s, "burn_in", cfg.burn_in);
    }
    if (doc.contains("sweep")) {
        const json& w = doc["sweep"];
        reject_unknown(w, "sweep", {"outer_radius", "holes"});
        cfg.sweep_outer_radius = num(w, "outer_radius", cfg.sweep_outer_radius);
        if (w.contains("holes")) {
            if (!w["holes"].is_array()) throw ConfigError("sweep.holes must be an array");
            for (const auto& h : w["holes"]) {
                reject_unknown(h, "sweep hole", {"center", "radius"});
                HoleSpec hs;
                hs.center = vec(h.at("center"), "hole center");
                hs.radius = h.at("radius").get<double>();
                cfg.sweep_holes.push_back(hs);
            }
        }
    }
    if (doc.contains("output")) {
        const json& o = doc["output"];
        reject_unknown(o, "output", {"dir"});
        cfg.output_dir = str(o, "dir", cfg.output_dir);
    }
    cfg.workers = int(integer(doc, "workers", cfg.workers));
    if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
    if (cfg.sim_seeds < 1) throw ConfigError("sim.seeds must be >= 1");
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string ExperimentConfig::to_json_text() const {
    ojson d;
    d["kind"] = domain.kind;
    if (domain.kind == "disc" || domain.kind == "disc_exterior" ||
        domain.kind == "disc_with_holes")
        d["radius"] = domain.radius;
    if (domain.kind == "ellipse") { d["semi_a"] = domain.semi_a; d["semi_b"] = domain.semi_b; }
    if (domain.kind == "annulus") { d["r_inner"] = domain.r_inner; d["r_outer"] = domain.r_outer; }
    if (domain.kind == "ellipse_exterior") d["a"] = domain.map_a;
    if (domain.kind == "disc_with_holes") {
        ojson centers = ojson::array(), radii = ojson::array();
        for (auto c : domain.hole_centers) centers.push_back({c.x, c.y});
        for (double r : domain.hole_radii) radii.push_back(r);
        d["hole_centers"] = centers;
        d["hole_radii"] = radii;
    }
    if (domain.kind == "fourier") {
        auto dump = [](const BoundaryCurve::Series& s) {
            ojson j;
            j["c0"] = s.c0;
            j["cos"] = s.ck;
            j["sin"] = s.sk;
            return j;
        };
        d["x"] = dump(domain.fx);
        d["y"] = dump(domain.fy);
    }
    d["n_quad"] = domain.n_quad;

    ojson out;
    out["domain"] = d;
    out["hm"] = {{"backend", hm.backend},
                 {"panels", hm.panels},
                 {"delta0", hm.delta0},
                 {"walkers", hm.wos.walkers},
                 {"eps", hm.wos.eps_abs},
                 {"max_steps", hm.wos.max_steps},
                 {"seed", hm.wos.seed},
                 {"workers", hm.wos.workers}};
    out["quad"] = {{"outer_nodes", quad.outer_nodes},
                   {"inner_tol", quad.inner_tol},
                   {"nystrom_panels", quad.nystrom_panels},
                   {"nystrom_delta0", quad.nystrom_delta0}};
    out["sim"] = {{"h", sim.h},
                  {"T", sim.T},
                  {"x0", {sim.x0.x, sim.x0.y}},
                  {"y0", {sim.y0.x, sim.y0.y}},
                  {"seed", sim.seed},
                  {"seeds", sim_seeds},
                  {"thin_stride", sim.thin_stride},
                  {"d_exc", sim.d_exc},
                  {"burn_in", burn_in}};
    ojson holes = ojson::array();
    for (const auto& h : sweep_holes)
        holes.push_back({{"center", {h.center.x, h.center.y}}, {"radius", h.radius}});
    out["sweep"] = {{"outer_radius", sweep_outer_radius}, {"holes", holes}};
    out["output"] = {{"dir", output_dir}};
    out["workers"] = workers;
    return out.dump(2) + "\n";
}

} // namespace rbm
