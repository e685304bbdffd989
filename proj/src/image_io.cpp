#include "dehaze/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

namespace dehaze {
namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void png_error_to_exception(png_structp png, png_const_charp msg) {
    (void)png;
    throw IoError(std::string("PNG error: ") + msg);
}

void png_warning_silent(png_structp, png_const_charp) {}

RgbImage load_png(std::FILE* f, const std::string& path) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                             png_error_to_exception, png_warning_silent);
    if (!png) throw IoError("failed to initialize PNG reader");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("failed to initialize PNG reader");
    }

    try {
        png_init_io(png, f);
        png_read_info(png, info);

        png_uint_32 w = png_get_image_width(png, info);
        png_uint_32 h = png_get_image_height(png, info);
        int bit_depth = png_get_bit_depth(png, info);
        int color_type = png_get_color_type(png, info);

        if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
        if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
        if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
        if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
            png_set_gray_to_rgb(png);
        png_set_strip_alpha(png);
        png_set_interlace_handling(png);
        png_read_update_info(png, info);

        bit_depth = png_get_bit_depth(png, info);
        std::size_t rowbytes = png_get_rowbytes(png, info);
        std::vector<unsigned char> data(rowbytes * h);
        std::vector<png_bytep> rows(h);
        for (png_uint_32 y = 0; y < h; ++y) rows[y] = data.data() + y * rowbytes;
        png_read_image(png, rows.data());
        png_read_end(png, nullptr);
        png_destroy_read_struct(&png, &info, nullptr);

        RgbImage img(static_cast<int>(w), static_cast<int>(h));
        if (bit_depth == 16) {
            // PNG stores 16-bit samples big-endian.
            for (png_uint_32 y = 0; y < h; ++y) {
                const unsigned char* row = data.data() + y * rowbytes;
                for (png_uint_32 x = 0; x < w; ++x) {
                    for (int c = 0; c < 3; ++c) {
                        unsigned hi = row[(x * 3 + c) * 2];
                        unsigned lo = row[(x * 3 + c) * 2 + 1];
                        img.set(c, static_cast<int>(x), static_cast<int>(y),
                                static_cast<double>((hi << 8) | lo) / 65535.0);
                    }
                }
            }
        } else {
            for (png_uint_32 y = 0; y < h; ++y) {
                const unsigned char* row = data.data() + y * rowbytes;
                for (png_uint_32 x = 0; x < w; ++x) {
                    for (int c = 0; c < 3; ++c) {
                        img.set(c, static_cast<int>(x), static_cast<int>(y),
                                static_cast<double>(row[x * 3 + c]) / 255.0);
                    }
                }
            }
        }
        return img;
    } catch (...) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("failed to read PNG file: " + path);
    }
}

int ppm_read_token(std::FILE* f, char* buf, int cap) {
    int ch;
    do {
        ch = std::fgetc(f);
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = std::fgetc(f);
        }
    } while (ch != EOF && std::isspace(ch));
    if (ch == EOF) return 0;
    int n = 0;
    while (ch != EOF && !std::isspace(ch) && n < cap - 1) {
        buf[n++] = static_cast<char>(ch);
        ch = std::fgetc(f);
    }
    buf[n] = '\0';
    return n;
}

RgbImage load_ppm(std::FILE* f, const std::string& path) {
    char tok[64];
    if (!ppm_read_token(f, tok, sizeof(tok)) || std::strcmp(tok, "P6") != 0) {
        throw FormatError("unsupported image format in " + path);
    }
    long dims[3];
    for (int i = 0; i < 3; ++i) {
        if (!ppm_read_token(f, tok, sizeof(tok))) {
            throw IoError("truncated PPM header: " + path);
        }
        char* end = nullptr;
        dims[i] = std::strtol(tok, &end, 10);
        if (end == tok || *end != '\0' || dims[i] <= 0) {
            throw FormatError("invalid PPM header field '" + std::string(tok) + "' in " + path);
        }
    }
    long w = dims[0], h = dims[1], maxval = dims[2];
    if (maxval > 65535) {
        throw FormatError("unsupported PPM maxval " + std::to_string(maxval) + " in " + path);
    }
    const int bytes_per_sample = maxval < 256 ? 1 : 2;
    std::size_t total = static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3 * bytes_per_sample;
    std::vector<unsigned char> data(total);
    if (std::fread(data.data(), 1, total, f) != total) {
        throw IoError("truncated PPM pixel data: " + path);
    }

    RgbImage img(static_cast<int>(w), static_cast<int>(h));
    const double scale = 1.0 / static_cast<double>(maxval);
    std::size_t i = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < 3; ++c) {
                unsigned v;
                if (bytes_per_sample == 1) {
                    v = data[i++];
                } else {
                    v = static_cast<unsigned>(data[i] << 8) | data[i + 1];  // big-endian
                    i += 2;
                }
                img.set(c, x, y, static_cast<double>(v) * scale);
            }
        }
    }
    return img;
}

unsigned char quantize8(double v) {
    return static_cast<unsigned char>(std::lround(clamp01(v) * 255.0));
}

}  // namespace

RgbImage load_image(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw IoError("cannot open file: " + path);

    unsigned char magic[8] = {0};
    std::size_t got = std::fread(magic, 1, sizeof(magic), f.get());
    std::rewind(f.get());

    static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    if (got >= 8 && std::memcmp(magic, png_sig, 8) == 0) {
        return load_png(f.get(), path);
    }
    if (got >= 2 && magic[0] == 'P' && magic[1] == '6') {
        return load_ppm(f.get(), path);
    }
    if (got >= 2 && magic[0] == 'P' && magic[1] >= '1' && magic[1] <= '7') {
        throw FormatError("unsupported image format P" + std::string(1, static_cast<char>(magic[1])) +
                          " (only P6 PPM and PNG): " + path);
    }
    throw FormatError("unrecognized image format: " + path);
}

void save_image(const RgbImage& img, const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw IoError("cannot open file for writing: " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                              png_error_to_exception, png_warning_silent);
    if (!png) throw IoError("failed to initialize PNG writer");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("failed to initialize PNG writer");
    }

    try {
        png_init_io(png, f.get());
        png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()),
                     static_cast<png_uint_32>(img.height()), 8, PNG_COLOR_TYPE_RGB,
                     PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
        png_write_info(png, info);

        std::vector<unsigned char> row(static_cast<std::size_t>(img.width()) * 3);
        for (int y = 0; y < img.height(); ++y) {
            for (int x = 0; x < img.width(); ++x) {
                row[x * 3 + 0] = quantize8(img.at(0, x, y));
                row[x * 3 + 1] = quantize8(img.at(1, x, y));
                row[x * 3 + 2] = quantize8(img.at(2, x, y));
            }
            png_write_row(png, row.data());
        }
        png_write_end(png, nullptr);
        png_destroy_write_struct(&png, &info);
    } catch (...) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed to write PNG file: " + path);
    }
}

void save_gray_image(const ScalarMap& map, const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw IoError("cannot open file for writing: " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                              png_error_to_exception, png_warning_silent);
    if (!png) throw IoError("failed to initialize PNG writer");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("failed to initialize PNG writer");
    }

    try {
        png_init_io(png, f.get());
        png_set_IHDR(png, info, static_cast<png_uint_32>(map.width()),
                     static_cast<png_uint_32>(map.height()), 8, PNG_COLOR_TYPE_GRAY,
                     PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
        png_write_info(png, info);

        std::vector<unsigned char> row(static_cast<std::size_t>(map.width()));
        for (int y = 0; y < map.height(); ++y) {
            for (int x = 0; x < map.width(); ++x) {
                // round half-up
                row[x] = static_cast<unsigned char>(std::floor(clamp01(map.at(x, y)) * 255.0 + 0.5));
            }
            png_write_row(png, row.data());
        }
        png_write_end(png, nullptr);
        png_destroy_write_struct(&png, &info);
    } catch (...) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed to write PNG file: " + path);
    }
}

}  // namespace dehaze
