#include "stegkit/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "stegkit/errors.hpp"
#include "stegkit/image_io.hpp"
#include "stegkit/payload.hpp"
#include "stegkit/scheme.hpp"
#include "stegkit/stego.hpp"

namespace stegkit {

namespace {

std::string trimmed(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

std::filesystem::path resolve_against(const std::filesystem::path& base, const std::string& raw) {
    const std::filesystem::path p(raw);
    return p.is_relative() ? base / p : p;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::filesystem::path& config_path) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file " + config_path.string());
    const std::filesystem::path base = config_path.parent_path();

    ExperimentConfig config;
    bool saw_output_dir = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string entry = trimmed(line);
        if (entry.empty() || entry[0] == '#') continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + entry + "'");
        }
        const std::string key = trimmed(entry.substr(0, eq));
        const std::string value = trimmed(entry.substr(eq + 1));
        if (value.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty value for '" +
                              key + "'");
        }
        if (key == "cover") {
            config.cover_paths.push_back(resolve_against(base, value));
        } else if (key == "secret") {
            config.secret_paths.push_back(resolve_against(base, value));
        } else if (key == "schemes") {
            std::stringstream parts(value);
            std::string item;
            while (std::getline(parts, item, ',')) {
                const std::string id = trimmed(item);
                if (!find_scheme(id)) {
                    throw ConfigError("config line " + std::to_string(line_no) +
                                      ": unknown scheme '" + id + "' (expected 233 or 332)");
                }
                config.schemes.push_back(id);
            }
        } else if (key == "output_dir") {
            config.output_dir = resolve_against(base, value);
            saw_output_dir = true;
        } else if (key == "emit_stego") {
            if (value == "true") {
                config.emit_stego = true;
            } else if (value == "false") {
                config.emit_stego = false;
            } else {
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": emit_stego must be 'true' or 'false', got '" + value + "'");
            }
        } else {
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key +
                              "'");
        }
    }
    if (config.cover_paths.empty()) throw ConfigError("config lists no cover images");
    if (config.secret_paths.empty()) throw ConfigError("config lists no secret images");
    if (config.schemes.empty()) throw ConfigError("config lists no schemes");
    if (!saw_output_dir) throw ConfigError("config is missing output_dir");
    return config;
}

namespace {

struct LoadedImage {
    RasterImage image;
    std::string error;  // empty = loaded
};

unsigned worker_count(std::size_t cells) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("STEGKIT_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap >= 1 && static_cast<unsigned long>(cap) < n) {
            n = static_cast<unsigned>(cap);
        }
    }
    if (cells < n) n = static_cast<unsigned>(cells);
    return n == 0 ? 1 : n;
}

void run_cell(const ExperimentConfig& config, const LoadedImage& cover, const LoadedImage& secret,
              ResultRow& row) {
    if (!cover.error.empty()) {
        row.error = "cover: " + cover.error;
        return;
    }
    if (!secret.error.empty()) {
        row.error = "secret: " + secret.error;
        return;
    }
    const EmbeddingScheme& scheme = *find_scheme(row.scheme_id);
    try {
        const std::vector<std::uint8_t> payload = serialize_payload(build_payload(secret.image, scheme));
        row.payload_bits = static_cast<std::uint64_t>(payload.size()) * 8;
        row.capacity_bits = capacity_bits(cover.image.width, cover.image.height, scheme);
        row.utilization =
            static_cast<double>(row.payload_bits) / static_cast<double>(row.capacity_bits);

        using clock = std::chrono::steady_clock;
        const auto embed_start = clock::now();
        const RasterImage stego = embed_stream(cover.image, payload, scheme);
        const auto embed_end = clock::now();
        const RasterImage recovered = extract_stream(stego, scheme);
        const auto extract_end = clock::now();
        row.embed_ms = std::chrono::duration<double, std::milli>(embed_end - embed_start).count();
        row.extract_ms =
            std::chrono::duration<double, std::milli>(extract_end - embed_end).count();
        row.round_trip_ok = recovered == secret.image;
        if (!row.round_trip_ok) {
            row.error = "extracted secret differs from the original";
            return;
        }
        row.metrics = report(cover.image, stego);
        row.mse_channels = mse_per_channel(cover.image, stego);
        if (config.emit_stego) {
            const std::filesystem::path dest =
                config.output_dir /
                (row.cover_name + "__" + row.secret_name + "__" + row.scheme_id + ".png");
            save_lossless(stego, dest, ImageFormat::png);
        }
    } catch (const Error& e) {
        row.error = e.what();
    } catch (const std::exception& e) {
        row.error = std::string("unexpected failure: ") + e.what();
    }
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
    // Load every distinct file once, up front; decode failures become
    // per-cell error rows rather than aborting the grid.
    std::map<std::string, LoadedImage> cache;
    const auto preload = [&cache](const std::filesystem::path& path) {
        const std::string key = path.string();
        if (cache.contains(key)) return;
        LoadedImage slot;
        try {
            slot.image = load_image(path);
        } catch (const Error& e) {
            slot.error = e.what();
        }
        cache.emplace(key, std::move(slot));
    };
    for (const auto& path : config.cover_paths) preload(path);
    for (const auto& path : config.secret_paths) preload(path);

    if (config.emit_stego) {
        std::error_code ec;
        std::filesystem::create_directories(config.output_dir, ec);
        if (ec) throw IoFailure("cannot create output directory " + config.output_dir.string());
    }

    // Cells in config order: cover (outer), secret, scheme (inner).
    struct Cell {
        const LoadedImage* cover;
        const LoadedImage* secret;
    };
    std::vector<Cell> cells;
    std::vector<ResultRow> rows;
    for (const auto& cover_path : config.cover_paths) {
        for (const auto& secret_path : config.secret_paths) {
            for (const std::string& scheme_id : config.schemes) {
                ResultRow row;
                row.cover_name = cover_path.stem().string();
                row.secret_name = secret_path.stem().string();
                row.scheme_id = scheme_id;
                rows.push_back(std::move(row));
                cells.push_back(
                    {&cache.at(cover_path.string()), &cache.at(secret_path.string())});
            }
        }
    }

    // Independent cells, claimed off a shared counter; each worker writes
    // only its own row, and the preallocated vector keeps config order.
    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) break;
            run_cell(config, *cells[i].cover, *cells[i].secret, rows[i]);
        }
    };
    const unsigned workers = worker_count(cells.size());
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return rows;
}

std::vector<ComparisonRow> compare_schemes(const std::vector<ResultRow>& rows) {
    // Pair key in first-seen order, so output follows the result rows.
    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::pair<std::string, std::string>, std::pair<const ResultRow*, const ResultRow*>>
        by_pair;
    for (const ResultRow& row : rows) {
        if (!row.valid()) continue;
        const auto key = std::make_pair(row.cover_name, row.secret_name);
        auto [it, inserted] = by_pair.try_emplace(key, nullptr, nullptr);
        if (inserted) order.push_back(key);
        if (row.scheme_id == kScheme233.id) it->second.first = &row;
        if (row.scheme_id == kScheme332.id) it->second.second = &row;
    }

    std::vector<ComparisonRow> table;
    for (const auto& key : order) {
        const auto& [row233, row332] = by_pair.at(key);
        if (!row233 || !row332) continue;
        table.push_back({key.first, key.second, row233->metrics, row332->metrics});
    }
    if (table.empty()) {
        throw MissingCounterpart(
            "no (cover, secret) pair has valid rows for both schemes; run both 233 and 332");
    }
    return table;
}

std::string format_fixed(double value, int decimals) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
    return buffer;
}

namespace {

// Quote a CSV field only when it needs it (commas, quotes, newlines).
std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
    std::string quoted = "\"";
    for (const char c : raw) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::ofstream open_for_write(const std::filesystem::path& destination) {
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open " + destination.string() + " for writing");
    return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& destination) {
    out.flush();
    if (!out) throw IoFailure("write failed: " + destination.string());
}

}  // namespace

void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& destination) {
    std::ofstream out = open_for_write(destination);
    out << "cover,secret,scheme,round_trip_ok,mse,psnr,nae,ssim,mse_r,mse_g,mse_b,"
           "payload_bits,capacity_bits,utilization,error\n";
    for (const ResultRow& row : rows) {
        out << csv_field(row.cover_name) << ',' << csv_field(row.secret_name) << ','
            << row.scheme_id << ',' << (row.round_trip_ok ? "true" : "false") << ',';
        if (row.valid()) {
            out << format_fixed(row.metrics.mse) << ',' << format_fixed(row.metrics.psnr) << ','
                << format_fixed(row.metrics.nae) << ',' << format_fixed(row.metrics.ssim) << ','
                << format_fixed(row.mse_channels[0]) << ',' << format_fixed(row.mse_channels[1])
                << ',' << format_fixed(row.mse_channels[2]) << ',' << row.payload_bits << ','
                << row.capacity_bits << ',' << format_fixed(row.utilization);
        } else {
            out << ",,,,,,,,,";
        }
        out << ',' << csv_field(row.error) << '\n';
    }
    finish_write(out, destination);
}

void emit_csv(const std::vector<ComparisonRow>& table, const std::filesystem::path& destination) {
    std::ofstream out = open_for_write(destination);
    out << "cover,secret,mse_233,psnr_233,nae_233,ssim_233,mse_332,psnr_332,nae_332,ssim_332,"
           "delta_mse,delta_psnr,delta_nae,delta_ssim\n";
    for (const ComparisonRow& row : table) {
        out << csv_field(row.cover_name) << ',' << csv_field(row.secret_name) << ','
            << format_fixed(row.scheme233.mse) << ',' << format_fixed(row.scheme233.psnr) << ','
            << format_fixed(row.scheme233.nae) << ',' << format_fixed(row.scheme233.ssim) << ','
            << format_fixed(row.scheme332.mse) << ',' << format_fixed(row.scheme332.psnr) << ','
            << format_fixed(row.scheme332.nae) << ',' << format_fixed(row.scheme332.ssim) << ','
            << format_fixed(row.delta_mse()) << ',' << format_fixed(row.delta_psnr()) << ','
            << format_fixed(row.delta_nae()) << ',' << format_fixed(row.delta_ssim()) << '\n';
    }
    finish_write(out, destination);
}

void emit_plot_data(const std::vector<ComparisonRow>& table,
                    const std::filesystem::path& destination) {
    if (table.empty()) throw ConfigError("no comparison rows to plot");
    std::ofstream out = open_for_write(destination);
    out << "pair,metric,scheme,value\n";
    for (const ComparisonRow& row : table) {
        const std::string pair = csv_field(row.cover_name + "__" + row.secret_name);
        out << pair << ",mse,233," << format_fixed(row.scheme233.mse) << '\n';
        out << pair << ",mse,332," << format_fixed(row.scheme332.mse) << '\n';
        out << pair << ",psnr,233," << format_fixed(row.scheme233.psnr) << '\n';
        out << pair << ",psnr,332," << format_fixed(row.scheme332.psnr) << '\n';
    }
    finish_write(out, destination);
}

}  // namespace stegkit
