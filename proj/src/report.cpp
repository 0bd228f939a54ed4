#include "rbm/report.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "rbm/errors.hpp"

namespace rbm {

using ojson = nlohmann::ordered_json;

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr))
        throw NumericalError("sha256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string sha256_hex_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open for digest: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return sha256_hex(buf.str());
}

namespace {

// shortest round-trip decimal
std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    std::ostringstream os;
    os.precision(17);
    os << v;
    std::string s = os.str();
    std::ostringstream shorter;
    shorter.precision(15);
    shorter << v;
    if (std::stod(shorter.str()) == v) return shorter.str();
    return s;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write: " + path);
    out << text;
    if (!out) throw ConfigError("short write: " + path);
}

} // namespace

std::string lambda_csv_header() {
    return "domain_id,holes,curvature_term,cross_term,lambda,area,decay_rate,"
           "err_curv,err_cross,backend,nodes,seed\n";
}

std::string lambda_csv_row(const LyapunovReport& r) {
    std::ostringstream os;
    os << r.domain_id << ',' << r.holes << ',' << fmt(r.curvature_term) << ','
       << fmt(r.cross_term) << ',' << fmt(r.lambda) << ','
       << (std::isinf(r.area) ? "inf" : fmt(r.area)) << ','
       << (r.decay_rate ? fmt(*r.decay_rate) : "") << ',' << fmt(r.err_curv) << ','
       << fmt(r.err_cross) << ',' << r.backend << ',' << r.nodes << ',' << r.seed << '\n';
    return os.str();
}

void write_lambda_csv(const std::string& path, const std::vector<LyapunovReport>& rows) {
    std::string text = lambda_csv_header();
    for (const auto& r : rows) text += lambda_csv_row(r);
    write_text(path, text);
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::string text = "domain_id,holes,curvature_term,cross_term,lambda,lambda_sign,area,"
                       "err_curv,err_cross,separated_sum,decomposition_gap,backend,nodes\n";
    for (const auto& row : rows) {
        const auto& r = row.report;
        std::ostringstream os;
        os << r.domain_id << ',' << r.holes << ',' << fmt(r.curvature_term) << ','
           << fmt(r.cross_term) << ',' << fmt(r.lambda) << ','
           << (r.lambda > 0 ? "+" : (r.lambda < 0 ? "-" : "0")) << ',' << fmt(r.area) << ','
           << fmt(r.err_curv) << ',' << fmt(r.err_cross) << ',' << fmt(row.separated_sum) << ','
           << fmt(row.decomposition_gap) << ',' << r.backend << ',' << r.nodes << '\n';
        text += os.str();
    }
    write_text(path, text);
}

void write_sim_series_csv(const std::string& path, const CouplingStats& stats) {
    std::ostringstream os;
    os << "t,d,LX,LY";
    for (const auto& name : stats.functional_names) os << ",func_" << name;
    os << ",excursion_rate\n";
    for (std::size_t i = 0; i < stats.t.size(); ++i) {
        os << fmt(stats.t[i]) << ',' << fmt(stats.d[i]) << ',' << fmt(stats.lx[i]) << ','
           << fmt(stats.ly[i]);
        for (const auto& f : stats.functional_running) os << ',' << fmt(f[i]);
        os << ',' << fmt(stats.excursion_running[i]) << '\n';
    }
    write_text(path, os.str());
}

void write_slopes_csv(const std::string& path, const std::vector<SlopeRow>& rows) {
    std::string text = "seed,slope,std_error,points,degenerate\n";
    for (const auto& r : rows) {
        std::ostringstream os;
        os << r.seed << ',';
        if (r.degenerate)
            os << ",,0,1\n";
        else
            os << fmt(r.fit.slope) << ',' << fmt(r.fit.std_error) << ',' << r.fit.points << ",0\n";
        text += os.str();
    }
    write_text(path, text);
}

void RunManifest::write(const std::string& path) const {
    ojson m;
    m["tool_version"] = kToolVersion;
    m["csv_schema_version"] = kCsvSchemaVersion;
    m["command"] = command;
    m["config"] = ojson::parse(config_json);
    m["seeds"] = seeds;
    m["wall_seconds"] = wall_seconds;
    ojson errs = ojson::object();
    for (const auto& [name, value] : error_estimates) errs[name] = value;
    m["error_estimates"] = errs;
    ojson outs = ojson::array();
    for (const auto& file : output_files)
        outs.push_back({{"path", file}, {"sha256", sha256_hex_file(file)}});
    m["outputs"] = outs;
    write_text(path, m.dump(2) + "\n");
}

std::string lambda_summary_json(const std::vector<LyapunovReport>& rows) {
    ojson arr = ojson::array();
    for (const auto& r : rows) {
        ojson j;
        j["domain_id"] = r.domain_id;
        j["holes"] = r.holes;
        j["curvature_term"] = r.curvature_term;
        j["cross_term"] = r.cross_term;
        j["lambda"] = r.lambda;
        j["chi_gap"] = r.chi_gap;
        j["chi_ok"] = r.chi_ok;
        j["area"] = std::isinf(r.area) ? ojson("inf") : ojson(r.area);
        if (r.decay_rate) j["decay_rate"] = *r.decay_rate;
        j["err_curv"] = r.err_curv;
        j["err_cross"] = r.err_cross;
        j["backend"] = r.backend;
        j["nodes"] = r.nodes;
        j["seed"] = r.seed;
        arr.push_back(j);
    }
    ojson top;
    top["reports"] = arr;
    return top.dump(2) + "\n";
}

std::string simulate_summary_json(const std::vector<SlopeRow>& rows, double target_slope,
                                  const std::string& config_json) {
    ojson arr = ojson::array();
    double sum = 0.0;
    long n = 0;
    for (const auto& r : rows) {
        ojson j;
        j["seed"] = r.seed;
        j["degenerate"] = r.degenerate;
        if (!r.degenerate) {
            j["slope"] = r.fit.slope;
            j["std_error"] = r.fit.std_error;
            j["points"] = r.fit.points;
            sum += r.fit.slope;
            ++n;
        }
        arr.push_back(j);
    }
    ojson top;
    top["target_slope"] = target_slope;
    top["mean_slope"] = n > 0 ? ojson(sum / double(n)) : ojson();
    top["replicas"] = arr;
    top["config"] = ojson::parse(config_json);
    return top.dump(2) + "\n";
}

} // namespace rbm
