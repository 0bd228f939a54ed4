#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rbm/coupling.hpp"
#include "rbm/lyapunov.hpp"

namespace rbm {

inline constexpr const char* kToolVersion = "0.1.0";
// bump when any CSV column order changes
inline constexpr const char* kCsvSchemaVersion = "1";

std::string sha256_hex(const std::string& bytes);
std::string sha256_hex_file(const std::string& path);

// lambda/sweep row in the frozen column order
std::string lambda_csv_header();
std::string lambda_csv_row(const LyapunovReport& r);
void write_lambda_csv(const std::string& path, const std::vector<LyapunovReport>& rows);

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

// per-run series: t, d, LX, LY, then one column per running functional
void write_sim_series_csv(const std::string& path, const CouplingStats& stats);

struct SlopeRow {
    std::uint64_t seed = 0;
    bool degenerate = false;
    SlopeFit fit; // meaningful when !degenerate
};
void write_slopes_csv(const std::string& path, const std::vector<SlopeRow>& rows);

struct RunManifest {
    std::string command;          // subcommand name
    std::string config_json;      // resolved config echo
    std::vector<std::uint64_t> seeds;
    double wall_seconds = 0.0;
    std::vector<std::pair<std::string, double>> error_estimates;
    std::vector<std::string> output_files; // digests computed at write time

    void write(const std::string& path) const;
};

std::string lambda_summary_json(const std::vector<LyapunovReport>& rows);
std::string simulate_summary_json(const std::vector<SlopeRow>& rows, double target_slope,
                                  const std::string& config_json);

} // namespace rbm
