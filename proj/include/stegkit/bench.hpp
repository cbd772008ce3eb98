#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "stegkit/metrics.hpp"

namespace stegkit {

// Declarative cover x secret x scheme grid.
struct ExperimentConfig {
    std::vector<std::filesystem::path> cover_paths;
    std::vector<std::filesystem::path> secret_paths;
    std::vector<std::string> schemes;  // ids, each "233" or "332"
    std::filesystem::path output_dir;
    bool emit_stego = false;
};

// Parses the flat key-value config format (see README). Relative paths are
// resolved against the config file's directory. Throws ConfigError.
ExperimentConfig parse_experiment_config(const std::filesystem::path& config_path);

// One grid cell. A row is valid when error is empty and the inline
// re-extraction matched the original secret bit-exactly.
struct ResultRow {
    std::string cover_name;
    std::string secret_name;
    std::string scheme_id;
    bool round_trip_ok = false;
    MetricReport metrics;
    std::array<double, 3> mse_channels{};
    std::uint64_t payload_bits = 0;
    std::uint64_t capacity_bits = 0;
    double utilization = 0.0;
    double embed_ms = 0.0;
    double extract_ms = 0.0;
    std::string error;  // empty = ok; otherwise why the cell failed/was skipped

    bool valid() const { return error.empty() && round_trip_ok; }
};

// Runs the grid (cells in parallel, STEGKIT_THREADS caps the worker count)
// and returns rows in deterministic config order: cover, then secret, then
// scheme. Per-cell failures are recorded in the row, never thrown.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

// "233" and "332" rows paired up per (cover, secret); deltas are 332 - 233.
struct ComparisonRow {
    std::string cover_name;
    std::string secret_name;
    MetricReport scheme233;
    MetricReport scheme332;

    double delta_mse() const { return scheme332.mse - scheme233.mse; }
    double delta_psnr() const { return scheme332.psnr - scheme233.psnr; }
    double delta_nae() const { return scheme332.nae - scheme233.nae; }
    double delta_ssim() const { return scheme332.ssim - scheme233.ssim; }
};

// Pairs valid rows of the two schemes per (cover, secret). Throws
// MissingCounterpart when no pair has both schemes.
std::vector<ComparisonRow> compare_schemes(const std::vector<ResultRow>& rows);

// "3.7532"-style fixed formatting used by every CSV writer: 4 decimals,
// IEEE round-half-even, "inf" for infinities.
std::string format_fixed(double value, int decimals = 4);

// UTF-8 CSVs, header row first, floats at 4 decimals, stable column order
// (documented in the README). Byte-identical across re-runs of the same
// config: wall-times are deliberately not emitted. Throws IoFailure.
void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& destination);
void emit_csv(const std::vector<ComparisonRow>& table, const std::filesystem::path& destination);

// Grouped-bar-chart data: pair label, metric (mse|psnr), scheme, value —
// copied from the comparison table, never recomputed. Throws IoFailure on
// write errors and ConfigError on an empty table.
void emit_plot_data(const std::vector<ComparisonRow>& table,
                    const std::filesystem::path& destination);

}  // namespace stegkit
