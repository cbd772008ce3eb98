#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "stegkit/bench.hpp"
#include "stegkit/errors.hpp"
#include "stegkit/image_io.hpp"
#include "stegkit/metrics.hpp"
#include "stegkit/stego.hpp"
#include "stegkit/synth.hpp"

using namespace stegkit;

namespace {

const std::filesystem::path& corpus_dir() {
    static const std::filesystem::path dir = [] {
        const auto root = std::filesystem::temp_directory_path() / "stegkit_bench_tests";
        std::filesystem::create_directories(root);
        save_lossless(synth_image(SynthKind::uniform_noise, 400, 400, 11), root / "noisecover.png");
        save_lossless(synth_image(SynthKind::gradient, 96, 96), root / "gradcover.png");
        save_lossless(synth_image(SynthKind::uniform_noise, 128, 128, 12), root / "noisesecret.png");
        save_lossless(synth_image(SynthKind::gradient, 16, 16), root / "gradsecret.png");
        save_lossless(synth_image(SynthKind::uniform_noise, 231, 231, 13), root / "bigsecret.png");
        return root;
    }();
    return dir;
}

std::filesystem::path write_config(const std::string& name, const std::string& body) {
    const auto path = corpus_dir() / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << body;
    return path;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// The demo-shaped grid: 2 covers x 2 secrets x 2 schemes.
std::filesystem::path full_grid_config() {
    static const auto path = write_config("grid.cfg",
                                          "# full grid\n"
                                          "cover = noisecover.png\n"
                                          "cover = gradcover.png\n"
                                          "secret = gradsecret.png\n"
                                          "secret = noisesecret.png\n"
                                          "schemes = 233,332\n"
                                          "output_dir = grid_out\n"
                                          "emit_stego = false\n");
    return path;
}

}  // namespace

TEST_SUITE("bench") {

TEST_CASE("config parser reads keys, comments, and relative paths") {
    const auto path = write_config("parse.cfg",
                                   "# a comment\n"
                                   "\n"
                                   "cover = noisecover.png\n"
                                   "  cover =  gradcover.png  \n"
                                   "secret = gradsecret.png\n"
                                   "schemes =  233 , 332 \n"
                                   "output_dir = out\n"
                                   "emit_stego = true\n");
    const ExperimentConfig config = parse_experiment_config(path);
    REQUIRE(config.cover_paths.size() == 2);
    CHECK(config.cover_paths[0] == corpus_dir() / "noisecover.png");
    CHECK(config.cover_paths[1] == corpus_dir() / "gradcover.png");
    REQUIRE(config.secret_paths.size() == 1);
    CHECK(config.schemes == std::vector<std::string>{"233", "332"});
    CHECK(config.output_dir == corpus_dir() / "out");
    CHECK(config.emit_stego == true);
}

TEST_CASE("config parser rejects malformed input") {
    CHECK_THROWS_AS(parse_experiment_config(corpus_dir() / "missing.cfg"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(write_config(
                        "bad1.cfg", "cover noisecover.png\n")),
                    ConfigError);  // no '='
    CHECK_THROWS_AS(parse_experiment_config(write_config(
                        "bad2.cfg", "cover = a.png\nsecret = b.png\nschemes = 999\n"
                                    "output_dir = out\n")),
                    ConfigError);  // unknown scheme
    CHECK_THROWS_AS(parse_experiment_config(write_config(
                        "bad3.cfg", "cover = a.png\nsecret = b.png\nschemes = 233\n"
                                    "output_dir = out\nemit_stego = maybe\n")),
                    ConfigError);  // bad boolean
    CHECK_THROWS_AS(parse_experiment_config(write_config(
                        "bad4.cfg", "cover = a.png\nsecret = b.png\nschemes = 233\n"
                                    "output_dir = out\nwhatever = 1\n")),
                    ConfigError);  // unknown key
    CHECK_THROWS_AS(parse_experiment_config(write_config(
                        "bad5.cfg", "cover = a.png\nschemes = 233\noutput_dir = out\n")),
                    ConfigError);  // no secrets
    CHECK_THROWS_AS(parse_experiment_config(write_config(
                        "bad6.cfg", "secret = b.png\nschemes = 233\noutput_dir = out\n")),
                    ConfigError);  // no covers
    CHECK_THROWS_AS(parse_experiment_config(write_config(
                        "bad7.cfg", "cover = a.png\nsecret = b.png\noutput_dir = out\n")),
                    ConfigError);  // no schemes
    CHECK_THROWS_AS(parse_experiment_config(write_config(
                        "bad8.cfg", "cover = a.png\nsecret = b.png\nschemes = 233\n")),
                    ConfigError);  // no output_dir
    CHECK_THROWS_AS(parse_experiment_config(write_config("bad9.cfg", "cover =\n")),
                    ConfigError);  // empty value
}

TEST_CASE("a 2x2x2 grid yields 8 rows in config order") {
    const auto rows = run_experiment(parse_experiment_config(full_grid_config()));
    REQUIRE(rows.size() == 8);
    // cover outer, secret middle, scheme inner
    const char* expected[8][3] = {
        {"noisecover", "gradsecret", "233"}, {"noisecover", "gradsecret", "332"},
        {"noisecover", "noisesecret", "233"}, {"noisecover", "noisesecret", "332"},
        {"gradcover", "gradsecret", "233"}, {"gradcover", "gradsecret", "332"},
        {"gradcover", "noisesecret", "233"}, {"gradcover", "noisesecret", "332"},
    };
    for (int i = 0; i < 8; ++i) {
        CHECK(rows[i].cover_name == expected[i][0]);
        CHECK(rows[i].secret_name == expected[i][1]);
        CHECK(rows[i].scheme_id == expected[i][2]);
    }
    // 128x128 secret does not fit the 96x96 cover; everything else must work.
    for (const auto& row : rows) {
        if (row.cover_name == "gradcover" && row.secret_name == "noisesecret") {
            CHECK_FALSE(row.valid());
            CHECK(row.error.find("capacity") != std::string::npos);
        } else {
            CHECK(row.valid());
            CHECK(row.round_trip_ok);
            CHECK(row.metrics.mse > 0.0);
            CHECK(row.utilization > 0.0);
            CHECK(row.utilization <= 1.0);
        }
    }
}

TEST_CASE("128x128 secret in a 400x400 cover reports utilization 0.3073") {
    const auto path = write_config("util.cfg",
                                   "cover = noisecover.png\n"
                                   "secret = noisesecret.png\n"
                                   "schemes = 233\n"
                                   "output_dir = util_out\n");
    const auto rows = run_experiment(parse_experiment_config(path));
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].valid());
    CHECK(rows[0].payload_bits == 393336);
    CHECK(rows[0].capacity_bits == 1'280'000);
    CHECK(rows[0].utilization == doctest::Approx(0.30729375).epsilon(1e-12));
    CHECK(format_fixed(rows[0].utilization) == "0.3073");
}

TEST_CASE("missing files and oversized secrets mark rows failed without aborting") {
    const auto path = write_config("partial.cfg",
                                   "cover = noisecover.png\n"
                                   "cover = no_such_file.png\n"
                                   "secret = gradsecret.png\n"
                                   "secret = bigsecret.png\n"
                                   "schemes = 233\n"
                                   "output_dir = partial_out\n");
    const auto rows = run_experiment(parse_experiment_config(path));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].valid());  // noisecover + gradsecret
    CHECK_FALSE(rows[1].valid());  // 231x231 secret: 160,098 bytes > 160,000 pixels
    CHECK(rows[1].error.find("insufficient capacity") != std::string::npos);
    CHECK_FALSE(rows[2].valid());  // missing cover
    CHECK(rows[2].error.find("cover") != std::string::npos);
    CHECK_FALSE(rows[3].valid());
}

TEST_CASE("emit_stego persists PNGs under cover__secret__scheme names") {
    const auto out_dir = corpus_dir() / "stego_out";
    std::filesystem::remove_all(out_dir);
    const auto path = write_config("emit.cfg",
                                   "cover = noisecover.png\n"
                                   "secret = gradsecret.png\n"
                                   "schemes = 233,332\n"
                                   "output_dir = stego_out\n"
                                   "emit_stego = true\n");
    const auto rows = run_experiment(parse_experiment_config(path));
    REQUIRE(rows.size() == 2);
    const auto stego233 = out_dir / "noisecover__gradsecret__233.png";
    const auto stego332 = out_dir / "noisecover__gradsecret__332.png";
    REQUIRE(std::filesystem::exists(stego233));
    REQUIRE(std::filesystem::exists(stego332));
    // The persisted stego still yields the secret.
    const RasterImage recovered = extract_stream(load_image(stego233), kScheme233);
    CHECK(recovered == load_image(corpus_dir() / "gradsecret.png"));
}

TEST_CASE("rows are identical whether the grid runs on one thread or many") {
    const ExperimentConfig config = parse_experiment_config(full_grid_config());
    setenv("STEGKIT_THREADS", "1", 1);
    const auto sequential = run_experiment(config);
    unsetenv("STEGKIT_THREADS");
    const auto parallel = run_experiment(config);
    REQUIRE(sequential.size() == parallel.size());
    for (std::size_t i = 0; i < sequential.size(); ++i) {
        CHECK(sequential[i].cover_name == parallel[i].cover_name);
        CHECK(sequential[i].secret_name == parallel[i].secret_name);
        CHECK(sequential[i].scheme_id == parallel[i].scheme_id);
        CHECK(sequential[i].round_trip_ok == parallel[i].round_trip_ok);
        CHECK(sequential[i].error == parallel[i].error);
        CHECK(sequential[i].metrics.mse == parallel[i].metrics.mse);
        CHECK(sequential[i].metrics.psnr == parallel[i].metrics.psnr);
        CHECK(sequential[i].metrics.nae == parallel[i].metrics.nae);
        CHECK(sequential[i].metrics.ssim == parallel[i].metrics.ssim);
        CHECK(sequential[i].payload_bits == parallel[i].payload_bits);
        CHECK(sequential[i].utilization == parallel[i].utilization);
    }
}

TEST_CASE("compare_schemes pairs the two schemes per cover/secret") {
    const auto rows = run_experiment(parse_experiment_config(full_grid_config()));
    const auto table = compare_schemes(rows);
    // 4 pairs in the grid, one of them entirely failed (capacity) -> 3.
    REQUIRE(table.size() == 3);
    CHECK(table[0].cover_name == "noisecover");
    CHECK(table[0].secret_name == "gradsecret");
    for (const auto& row : table) {
        CHECK(row.delta_mse() ==
              doctest::Approx(row.scheme332.mse - row.scheme233.mse).epsilon(1e-12));
        CHECK(row.delta_psnr() ==
              doctest::Approx(row.scheme332.psnr - row.scheme233.psnr).epsilon(1e-12));
    }
}

TEST_CASE("compare_schemes without a complete pair -> MissingCounterpart") {
    ResultRow row233;
    row233.cover_name = "c";
    row233.secret_name = "s";
    row233.scheme_id = "233";
    row233.round_trip_ok = true;
    CHECK_THROWS_AS(compare_schemes({row233}), MissingCounterpart);
    CHECK_THROWS_AS(compare_schemes({}), MissingCounterpart);

    // An invalid row of the counterpart scheme does not count as present.
    ResultRow bad332 = row233;
    bad332.scheme_id = "332";
    bad332.error = "boom";
    bad332.round_trip_ok = false;
    CHECK_THROWS_AS(compare_schemes({row233, bad332}), MissingCounterpart);
}

TEST_CASE("format_fixed prints four decimals, inf sentinels, negatives") {
    CHECK(format_fixed(3.75324999) == "3.7532");
    CHECK(format_fixed(2.0) == "2.0000");
    CHECK(format_fixed(0.30729375) == "0.3073");
    CHECK(format_fixed(-1.23456) == "-1.2346");
    CHECK(format_fixed(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_fixed(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_fixed(30.729375, 1) == "30.7");
}

TEST_CASE("results CSV: one header plus one line per row, byte-identical on re-runs") {
    const auto rows = run_experiment(parse_experiment_config(full_grid_config()));
    const auto csv_a = corpus_dir() / "results_a.csv";
    const auto csv_b = corpus_dir() / "results_b.csv";
    emit_csv(rows, csv_a);
    emit_csv(rows, csv_b);
    const std::string a = read_file(csv_a);
    CHECK(a == read_file(csv_b));

    std::size_t lines = 0;
    for (const char c : a) lines += (c == '\n');
    CHECK(lines == 9);  // header + 8 rows
    CHECK(a.rfind("cover,secret,scheme,round_trip_ok,mse,psnr,nae,ssim,mse_r,mse_g,mse_b,"
                  "payload_bits,capacity_bits,utilization,error\n",
                  0) == 0);

    // Re-running the whole experiment also reproduces the same bytes.
    const auto rows2 = run_experiment(parse_experiment_config(full_grid_config()));
    const auto csv_c = corpus_dir() / "results_c.csv";
    emit_csv(rows2, csv_c);
    CHECK(a == read_file(csv_c));
}

TEST_CASE("comparison CSV carries both schemes' metrics and the deltas") {
    const auto rows = run_experiment(parse_experiment_config(full_grid_config()));
    const auto table = compare_schemes(rows);
    const auto csv = corpus_dir() / "comparison.csv";
    emit_csv(table, csv);
    const std::string text = read_file(csv);
    CHECK(text.rfind("cover,secret,mse_233,psnr_233,nae_233,ssim_233,mse_332,psnr_332,nae_332,"
                     "ssim_332,delta_mse,delta_psnr,delta_nae,delta_ssim\n",
                     0) == 0);
    std::size_t lines = 0;
    for (const char c : text) lines += (c == '\n');
    CHECK(lines == 1 + table.size());
    CHECK(text.find(format_fixed(table[0].scheme233.mse)) != std::string::npos);
}

TEST_CASE("plot data: four lines per pair, values copied from the table") {
    const auto rows = run_experiment(parse_experiment_config(full_grid_config()));
    const auto table = compare_schemes(rows);
    const auto csv = corpus_dir() / "plotdata.csv";
    emit_plot_data(table, csv);
    const std::string text = read_file(csv);
    std::size_t lines = 0;
    for (const char c : text) lines += (c == '\n');
    CHECK(lines == 1 + 4 * table.size());
    CHECK(text.rfind("pair,metric,scheme,value\n", 0) == 0);
    const std::string first_pair = table[0].cover_name + "__" + table[0].secret_name;
    CHECK(text.find(first_pair + ",mse,233," + format_fixed(table[0].scheme233.mse)) !=
          std::string::npos);
    CHECK(text.find(first_pair + ",psnr,332," + format_fixed(table[0].scheme332.psnr)) !=
          std::string::npos);

    CHECK_THROWS_AS(emit_plot_data({}, corpus_dir() / "empty.csv"), ConfigError);
}

TEST_CASE("monte-carlo distortion matches the exhaustive enumeration oracle") {
    // Full utilization: every pixel of a 64x64 cover carries one random byte.
    const int trials = 48;
    const int side = 64;
    std::array<double, 3> means233{}, means332{};
    for (const char* id : {"233", "332"}) {
        const EmbeddingScheme& scheme = *find_scheme(id);
        std::array<double, 3> sums{0.0, 0.0, 0.0};
        SplitMix64 rng{std::string_view(id) == "233" ? 0xAAu : 0xBBu};
        for (int t = 0; t < trials; ++t) {
            const RasterImage cover =
                synth_image(SynthKind::uniform_noise, side, side, rng.next());
            std::vector<std::uint8_t> payload(static_cast<std::size_t>(side) * side);
            for (auto& b : payload) b = rng.next_byte();
            const RasterImage stego = embed_stream(cover, payload, scheme);
            const auto channels = mse_per_channel(cover, stego);
            for (int c = 0; c < 3; ++c) sums[c] += channels[c];
        }
        const auto expected = oracle::expected_sq_error(id);
        std::array<double, 3>& means =
            (std::string_view(id) == "233") ? means233 : means332;
        for (int c = 0; c < 3; ++c) {
            means[c] = sums[c] / trials;
            CHECK(means[c] == doctest::Approx(expected[c]).epsilon(0.02));
        }
    }

    // The enumeration oracle itself: exact per-channel values and the fact
    // that the two schemes share one total expected distortion.
    const auto e233 = oracle::expected_sq_error("233");
    const auto e332 = oracle::expected_sq_error("332");
    CHECK(e233[0] == 2.5);
    CHECK(e233[1] == 40.5);
    CHECK(e233[2] == 42.0);
    CHECK(e332[0] == 10.5);
    CHECK(e332[1] == 34.5);
    CHECK(e332[2] == 40.0);
    CHECK(e233[0] + e233[1] + e233[2] == 85.0);
    CHECK(e332[0] + e332[1] + e332[2] == 85.0);

    // And the Monte-Carlo totals agree with each other.
    const double total233 = means233[0] + means233[1] + means233[2];
    const double total332 = means332[0] + means332[1] + means332[2];
    CHECK(total233 == doctest::Approx(85.0).epsilon(0.02));
    CHECK(total332 == doctest::Approx(85.0).epsilon(0.02));
}

TEST_CASE("scheme 233 orders per-channel damage R < G < B with clear margins") {
    const int trials = 100;
    const int side = 64;
    std::array<double, 3> sums{0.0, 0.0, 0.0};
    SplitMix64 rng{0xCC};
    for (int t = 0; t < trials; ++t) {
        const RasterImage cover = synth_image(SynthKind::uniform_noise, side, side, rng.next());
        std::vector<std::uint8_t> payload(static_cast<std::size_t>(side) * side);
        for (auto& b : payload) b = rng.next_byte();
        const auto channels = mse_per_channel(cover, embed_stream(cover, payload, kScheme233));
        for (int c = 0; c < 3; ++c) sums[c] += channels[c];
    }
    const double r = sums[0] / trials, g = sums[1] / trials, b = sums[2] / trials;
    CHECK(r < g);
    CHECK(g < b);
    // Expected gaps are 38.0 and 1.5; demand at least half.
    CHECK(g - r > 19.0);
    CHECK(b - g > 0.75);
}

}  // TEST_SUITE
