// stegkit: hide an RGB image inside the low bits of another, recover it,
// and measure what the embedding did to the cover.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stegkit/bench.hpp"
#include "stegkit/errors.hpp"
#include "stegkit/image_io.hpp"
#include "stegkit/metrics.hpp"
#include "stegkit/payload.hpp"
#include "stegkit/scheme.hpp"
#include "stegkit/stego.hpp"

namespace {

using namespace stegkit;

std::optional<ImageFormat> format_override(bool bmp) {
    if (bmp) return ImageFormat::bmp;
    return std::nullopt;
}

int cmd_embed(const std::string& cover_path, const std::string& secret_path,
              const std::string& out_path, const std::string& scheme_id, bool bmp) {
    const EmbeddingScheme& scheme = *find_scheme(scheme_id);
    const RasterImage cover = load_image(cover_path);
    const RasterImage secret = load_image(secret_path);

    const std::vector<std::uint8_t> payload = serialize_payload(build_payload(secret, scheme));
    const RasterImage stego = embed_stream(cover, payload, scheme);
    save_lossless(stego, out_path, format_override(bmp));

    const std::uint64_t payload_bits = static_cast<std::uint64_t>(payload.size()) * 8;
    const std::uint64_t capacity = capacity_bits(cover.width, cover.height, scheme);
    const double percent = 100.0 * static_cast<double>(payload_bits) / static_cast<double>(capacity);
    std::cout << "payload " << payload_bits << "/" << capacity << " bits ("
              << format_fixed(percent, 1) << "%)\n";
    std::cout << "psnr=" << format_fixed(psnr(mse(cover, stego))) << "\n";
    return 0;
}

int cmd_extract(const std::string& stego_path, const std::string& out_path,
                const std::string& scheme_id, bool bmp) {
    const EmbeddingScheme& scheme = *find_scheme(scheme_id);
    const RasterImage stego = load_image(stego_path);
    const RasterImage secret = extract_stream(stego, scheme);
    save_lossless(secret, out_path, format_override(bmp));
    std::cout << "recovered " << secret.width << "x" << secret.height << "\n";
    return 0;
}

int cmd_metrics(const std::string& ref_path, const std::string& test_path) {
    const RasterImage reference = load_image(ref_path);
    const RasterImage test = load_image(test_path);
    const MetricReport r = report(reference, test);
    std::cout << "mse=" << format_fixed(r.mse) << "\n";
    std::cout << "psnr=" << format_fixed(r.psnr) << "\n";
    std::cout << "nae=" << format_fixed(r.nae) << "\n";
    std::cout << "ssim=" << format_fixed(r.ssim) << "\n";
    return 0;
}

std::size_t line_count(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    std::size_t lines = 0;
    std::string line;
    while (std::getline(in, line)) ++lines;
    return lines;
}

int cmd_bench(const std::string& config_path) {
    const ExperimentConfig config = parse_experiment_config(config_path);
    const std::vector<ResultRow> rows = run_experiment(config);

    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) throw IoFailure("cannot create output directory " + config.output_dir.string());

    const std::filesystem::path results_csv = config.output_dir / "results.csv";
    emit_csv(rows, results_csv);

    bool any_ok = false;
    for (const ResultRow& row : rows) {
        std::cout << "cover=" << row.cover_name << " secret=" << row.secret_name
                  << " scheme=" << row.scheme_id;
        if (row.valid()) {
            any_ok = true;
            std::cout << " ok mse=" << format_fixed(row.metrics.mse)
                      << " psnr=" << format_fixed(row.metrics.psnr)
                      << " nae=" << format_fixed(row.metrics.nae)
                      << " ssim=" << format_fixed(row.metrics.ssim)
                      << " embed_ms=" << format_fixed(row.embed_ms, 2)
                      << " extract_ms=" << format_fixed(row.extract_ms, 2) << "\n";
        } else {
            std::cout << " FAILED: " << row.error << "\n";
        }
    }
    if (!any_ok) {
        std::cerr << "error: all grid cells failed\n";
        return 1;
    }

    const std::vector<ComparisonRow> table = compare_schemes(rows);
    const std::filesystem::path comparison_csv = config.output_dir / "comparison.csv";
    const std::filesystem::path plot_csv = config.output_dir / "plotdata.csv";
    emit_csv(table, comparison_csv);
    emit_plot_data(table, plot_csv);

    std::cout << "results.csv: " << line_count(results_csv) << " lines\n";
    std::cout << "comparison.csv: " << line_count(comparison_csv) << " lines\n";
    std::cout << "plotdata.csv: " << line_count(plot_csv) << " lines\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hide an RGB image in the low bits of a cover image and get it back"};
    app.require_subcommand(1);

    std::string cover, secret, out, stego, ref, test, config;
    std::string scheme = "233";
    bool bmp = false;
    const auto scheme_values = CLI::IsMember({"233", "332"});

    CLI::App* embed = app.add_subcommand("embed", "Write a secret image into a cover image");
    embed->add_option("--cover", cover, "Cover image (PNG, BMP or JPEG)")->required();
    embed->add_option("--secret", secret, "Secret image to hide")->required();
    embed->add_option("--out", out, "Output stego image (lossless: .png or .bmp)")->required();
    embed->add_option("--scheme", scheme, "Bits per R/G/B channel: 233 or 332")
        ->check(scheme_values);
    embed->add_flag("--bmp", bmp, "Write BMP instead of PNG");

    CLI::App* extract = app.add_subcommand("extract", "Recover the secret image from a stego image");
    extract->add_option("--stego", stego, "Stego image produced by embed")->required();
    extract->add_option("--out", out, "Output path for the recovered secret")->required();
    extract->add_option("--scheme", scheme, "Scheme the secret was embedded with")
        ->check(scheme_values);
    extract->add_flag("--bmp", bmp, "Write BMP instead of PNG");

    CLI::App* metrics = app.add_subcommand("metrics", "Compare two images (MSE, PSNR, NAE, SSIM)");
    metrics->add_option("--ref", ref, "Reference image")->required();
    metrics->add_option("--test", test, "Image to compare against the reference")->required();

    CLI::App* bench = app.add_subcommand("bench", "Run a cover x secret x scheme experiment grid");
    bench->add_option("--config", config, "Experiment config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(embed)) return cmd_embed(cover, secret, out, scheme, bmp);
        if (app.got_subcommand(extract)) return cmd_extract(stego, out, scheme, bmp);
        if (app.got_subcommand(metrics)) return cmd_metrics(ref, test);
        if (app.got_subcommand(bench)) return cmd_bench(config);
    } catch (const stegkit::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const stegkit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
