// stegkit-mkcorpus: writes a deterministic synthetic image corpus plus a
// demo experiment config, so the bench harness runs without any external
// image files. Same invocation, same bytes, every time.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "stegkit/errors.hpp"
#include "stegkit/image_io.hpp"
#include "stegkit/synth.hpp"

namespace {

using namespace stegkit;

void write_png(const std::filesystem::path& path, const RasterImage& image) {
    save_lossless(image, path, ImageFormat::png);
    std::cout << "wrote " << path.string() << " (" << image.width << "x" << image.height << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: stegkit-mkcorpus <output-dir>\n";
        return 2;
    }
    const std::filesystem::path root = argv[1];
    try {
        std::filesystem::create_directories(root / "covers");
        std::filesystem::create_directories(root / "secrets");

        write_png(root / "covers" / "noise400.png",
                  synth_image(SynthKind::uniform_noise, 400, 400, 101));
        write_png(root / "covers" / "noise580.png",
                  synth_image(SynthKind::uniform_noise, 580, 580, 102));
        write_png(root / "covers" / "gradient400.png", synth_image(SynthKind::gradient, 400, 400));
        write_png(root / "covers" / "gradient580.png", synth_image(SynthKind::gradient, 580, 580));
        write_png(root / "covers" / "flat400.png",
                  synth_image(SynthKind::constant, 400, 400, 0, {200, 180, 160}));

        write_png(root / "secrets" / "noise128.png",
                  synth_image(SynthKind::uniform_noise, 128, 128, 201));
        write_png(root / "secrets" / "gradient128.png", synth_image(SynthKind::gradient, 128, 128));
        write_png(root / "secrets" / "flat128.png",
                  synth_image(SynthKind::constant, 128, 128, 0, {90, 140, 190}));

        const std::filesystem::path config = root / "bench.cfg";
        std::ofstream cfg(config, std::ios::binary | std::ios::trunc);
        cfg << "# demo experiment grid: 2 covers x 2 secrets x 2 schemes = 8 cells\n"
               "cover = covers/noise400.png\n"
               "cover = covers/gradient580.png\n"
               "secret = secrets/noise128.png\n"
               "secret = secrets/gradient128.png\n"
               "schemes = 233,332\n"
               "output_dir = out\n"
               "emit_stego = false\n";
        cfg.flush();
        if (!cfg) throw IoFailure("write failed: " + config.string());
        std::cout << "wrote " << config.string() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
