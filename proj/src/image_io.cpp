#include "stegkit/image_io.hpp"

#include <algorithm>
#include <cstdio>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <memory>

#include <jpeglib.h>
#include <png.h>

#include "stegkit/errors.hpp"

namespace stegkit {

namespace {

bool has_png_signature(std::span<const std::uint8_t> bytes) {
    static const std::uint8_t sig[8] = {0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a};
    return bytes.size() >= 8 && std::memcmp(bytes.data(), sig, 8) == 0;
}

bool has_jpeg_signature(std::span<const std::uint8_t> bytes) {
    return bytes.size() >= 3 && bytes[0] == 0xff && bytes[1] == 0xd8 && bytes[2] == 0xff;
}

bool has_bmp_signature(std::span<const std::uint8_t> bytes) {
    return bytes.size() >= 2 && bytes[0] == 'B' && bytes[1] == 'M';
}

// ---------------------------------------------------------------- PNG read

struct PngReadCtx {
    std::span<const std::uint8_t> input;
    std::size_t offset = 0;
    RasterImage image;
    std::vector<png_bytep> row_ptrs;
    bool alpha_dropped = false;
};

void png_read_from_span(png_structp png, png_bytep out, png_size_t count) {
    auto* ctx = static_cast<PngReadCtx*>(png_get_io_ptr(png));
    if (ctx->offset + count > ctx->input.size()) {
        png_error(png, "unexpected end of data");
    }
    std::memcpy(out, ctx->input.data() + ctx->offset, count);
    ctx->offset += count;
}

void png_silence_warning(png_structp, png_const_charp) {}

RasterImage decode_png(std::span<const std::uint8_t> bytes) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw CorruptFile("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw CorruptFile("libpng init failed");
    }

    // All mutable decode state lives behind a stable pointer so the error
    // longjmp (which lands back in this frame) leaves nothing indeterminate.
    auto ctx = std::make_unique<PngReadCtx>();
    ctx->input = bytes;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw CorruptFile("corrupt PNG data");
    }

    png_set_read_fn(png, ctx.get(), png_read_from_span);
    png_set_error_fn(png, png_get_error_ptr(png), nullptr, png_silence_warning);
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (bit_depth == 16) png_set_strip_16(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) {
        png_set_tRNS_to_alpha(png);
        ctx->alpha_dropped = true;
    }
    if (color_type & PNG_COLOR_MASK_ALPHA) ctx->alpha_dropped = true;
    png_set_strip_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
        png_set_gray_to_rgb(png);
    }
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    ctx->image.width = static_cast<int>(width);
    ctx->image.height = static_cast<int>(height);
    ctx->image.pixels.resize(static_cast<std::size_t>(width) * height * 3);
    ctx->row_ptrs.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) {
        ctx->row_ptrs[y] = ctx->image.pixels.data() + static_cast<std::size_t>(y) * width * 3;
    }
    png_read_image(png, ctx->row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    if (ctx->alpha_dropped) {
        std::fputs("stegkit: warning: alpha channel dropped on load\n", stderr);
    }
    return std::move(ctx->image);
}

// --------------------------------------------------------------- PNG write

struct PngWriteCtx {
    std::vector<std::uint8_t> output;
    std::vector<png_bytep> row_ptrs;
};

void png_write_to_vector(png_structp png, png_bytep data, png_size_t count) {
    auto* ctx = static_cast<PngWriteCtx*>(png_get_io_ptr(png));
    ctx->output.insert(ctx->output.end(), data, data + count);
}

void png_flush_noop(png_structp) {}

}  // namespace

std::vector<std::uint8_t> encode_png(const RasterImage& image) {
    if (image.width < 1 || image.height < 1) throw ZeroDimension("cannot encode an empty image");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoFailure("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoFailure("libpng init failed");
    }

    auto ctx = std::make_unique<PngWriteCtx>();

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoFailure("PNG encoding failed");
    }

    png_set_write_fn(png, ctx.get(), png_write_to_vector, png_flush_noop);
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
                 static_cast<png_uint_32>(image.height), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    ctx->row_ptrs.resize(image.height);
    for (int y = 0; y < image.height; ++y) {
        ctx->row_ptrs[y] = const_cast<png_bytep>(image.pixels.data() +
                                                 static_cast<std::size_t>(y) * image.width * 3);
    }
    png_write_image(png, ctx->row_ptrs.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return std::move(ctx->output);
}

namespace {

// --------------------------------------------------------------- JPEG read

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    jmp_buf jump;
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    longjmp(err->jump, 1);
}

void jpeg_silence_message(j_common_ptr, int) {}

RasterImage decode_jpeg(std::span<const std::uint8_t> bytes) {
    jpeg_decompress_struct cinfo;
    JpegErrorMgr err;
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;
    err.pub.emit_message = jpeg_silence_message;

    auto image = std::make_unique<RasterImage>();

    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw CorruptFile("corrupt JPEG data");
    }

    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;  // grayscale sources are expanded here
    jpeg_start_decompress(&cinfo);

    image->width = static_cast<int>(cinfo.output_width);
    image->height = static_cast<int>(cinfo.output_height);
    if (image->width < 1 || image->height < 1) {
        jpeg_destroy_decompress(&cinfo);
        throw ZeroDimension("JPEG declares a zero dimension");
    }
    image->pixels.resize(image->pixel_count() * 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = image->pixels.data() +
                       static_cast<std::size_t>(cinfo.output_scanline) * image->width * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return std::move(*image);
}

// ---------------------------------------------------------------- BMP read

std::uint16_t get_u16_le(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
std::uint32_t get_u32_le(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
std::int32_t get_i32_le(const std::uint8_t* p) {
    return static_cast<std::int32_t>(get_u32_le(p));
}

RasterImage decode_bmp(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 54) throw CorruptFile("BMP shorter than its headers");
    const std::uint32_t data_offset = get_u32_le(&bytes[10]);
    const std::uint32_t dib_size = get_u32_le(&bytes[14]);
    if (dib_size < 40 || 14 + dib_size > bytes.size()) throw CorruptFile("bad BMP DIB header");

    const std::int32_t raw_width = get_i32_le(&bytes[18]);
    const std::int32_t raw_height = get_i32_le(&bytes[22]);
    const std::uint16_t planes = get_u16_le(&bytes[26]);
    const std::uint16_t bpp = get_u16_le(&bytes[28]);
    const std::uint32_t compression = get_u32_le(&bytes[30]);

    if (raw_width == 0 || raw_height == 0) throw ZeroDimension("BMP declares a zero dimension");
    if (raw_width < 0) throw CorruptFile("negative BMP width");
    if (planes != 1 || compression != 0) throw UnsupportedFormat("unsupported BMP variant");
    if (bpp != 8 && bpp != 24 && bpp != 32) {
        throw UnsupportedFormat("unsupported BMP bit depth " + std::to_string(bpp));
    }

    const bool top_down = raw_height < 0;
    const int width = raw_width;
    const int height = top_down ? -raw_height : raw_height;

    // 8-bit files carry a BGRA palette right after the DIB header.
    std::vector<Rgb> palette;
    if (bpp == 8) {
        std::uint32_t colors = get_u32_le(&bytes[46]);
        if (colors == 0) colors = 256;
        const std::size_t palette_at = 14 + dib_size;
        if (palette_at + colors * 4ull > bytes.size()) throw CorruptFile("BMP palette truncated");
        palette.resize(colors);
        for (std::uint32_t i = 0; i < colors; ++i) {
            const std::uint8_t* e = &bytes[palette_at + i * 4];
            palette[i] = {e[2], e[1], e[0]};
        }
    }

    const std::size_t row_stride = (static_cast<std::size_t>(width) * bpp / 8 + 3) & ~std::size_t{3};
    if (data_offset > bytes.size() ||
        bytes.size() - data_offset < row_stride * static_cast<std::size_t>(height)) {
        throw CorruptFile("BMP pixel data truncated");
    }
    if (bpp == 32) {
        std::fputs("stegkit: warning: alpha channel dropped on load\n", stderr);
    }

    RasterImage image(width, height);
    for (int y = 0; y < height; ++y) {
        const int src_y = top_down ? y : height - 1 - y;
        const std::uint8_t* row = bytes.data() + data_offset + row_stride * src_y;
        for (int x = 0; x < width; ++x) {
            Rgb c;
            if (bpp == 8) {
                const std::uint8_t idx = row[x];
                if (idx >= palette.size()) throw CorruptFile("BMP palette index out of range");
                c = palette[idx];
            } else {
                const std::uint8_t* p = row + x * (bpp / 8);
                c = {p[2], p[1], p[0]};
            }
            image.set_pixel_at(x, y, c);
        }
    }
    return image;
}

void put_u16_le(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}
void put_u32_le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 24));
}

}  // namespace

std::vector<std::uint8_t> encode_bmp(const RasterImage& image) {
    if (image.width < 1 || image.height < 1) throw ZeroDimension("cannot encode an empty image");
    const std::size_t row_bytes = static_cast<std::size_t>(image.width) * 3;
    const std::size_t row_stride = (row_bytes + 3) & ~std::size_t{3};
    const std::size_t data_size = row_stride * image.height;

    std::vector<std::uint8_t> out;
    out.reserve(54 + data_size);
    // BITMAPFILEHEADER
    out.push_back('B');
    out.push_back('M');
    put_u32_le(out, static_cast<std::uint32_t>(54 + data_size));
    put_u16_le(out, 0);
    put_u16_le(out, 0);
    put_u32_le(out, 54);
    // BITMAPINFOHEADER, 24-bit BI_RGB, bottom-up
    put_u32_le(out, 40);
    put_u32_le(out, static_cast<std::uint32_t>(image.width));
    put_u32_le(out, static_cast<std::uint32_t>(image.height));
    put_u16_le(out, 1);
    put_u16_le(out, 24);
    put_u32_le(out, 0);
    put_u32_le(out, static_cast<std::uint32_t>(data_size));
    put_u32_le(out, 2835);  // 72 dpi
    put_u32_le(out, 2835);
    put_u32_le(out, 0);
    put_u32_le(out, 0);

    for (int y = image.height - 1; y >= 0; --y) {
        for (int x = 0; x < image.width; ++x) {
            const Rgb c = image.pixel_at(x, y);
            out.push_back(c.b);
            out.push_back(c.g);
            out.push_back(c.r);
        }
        for (std::size_t pad = row_bytes; pad < row_stride; ++pad) out.push_back(0);
    }
    return out;
}

RasterImage decode_image(std::span<const std::uint8_t> bytes) {
    RasterImage image;
    if (has_png_signature(bytes)) {
        image = decode_png(bytes);
    } else if (has_jpeg_signature(bytes)) {
        image = decode_jpeg(bytes);
    } else if (has_bmp_signature(bytes)) {
        image = decode_bmp(bytes);
    } else {
        throw UnsupportedFormat("unrecognized image format (expected PNG, BMP or JPEG)");
    }
    if (image.width < 1 || image.height < 1) {
        throw ZeroDimension("image has a zero dimension");
    }
    return image;
}

RasterImage load_image(const std::filesystem::path& source) {
    std::ifstream in(source, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + source.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoFailure("cannot read " + source.string());
    return decode_image(bytes);
}

void save_lossless(const RasterImage& image, const std::filesystem::path& destination,
                   std::optional<ImageFormat> format) {
    std::string ext = destination.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".jpg" || ext == ".jpeg") {
        throw UnsupportedFormat("lossy output is unsupported for stego images; use .png or .bmp");
    }
    const ImageFormat fmt = format.value_or(ext == ".bmp" ? ImageFormat::bmp : ImageFormat::png);
    const std::vector<std::uint8_t> bytes =
        fmt == ImageFormat::bmp ? encode_bmp(image) : encode_png(image);

    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open " + destination.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoFailure("write failed: " + destination.string());
}

}  // namespace stegkit
