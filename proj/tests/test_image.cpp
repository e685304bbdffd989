#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dehaze/errors.hpp"
#include "dehaze/image.hpp"
#include "dehaze/image_io.hpp"

using namespace dehaze;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

RgbImage gradient_image(int w, int h) {
    RgbImage img(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            img.set_pixel(x, y, x / double(w), y / double(h),
                          (x + y) / double(w + h));
        }
    }
    return img;
}

}  // namespace

TEST_CASE("rgb image clamps on write") {
    RgbImage img(2, 2);
    img.set(0, 0, 0, 1.7);
    img.set(1, 0, 0, -0.3);
    CHECK(img.at(0, 0, 0) == 1.0);
    CHECK(img.at(1, 0, 0) == 0.0);
}

TEST_CASE("scalar map stats") {
    ScalarMap m(3, 1);
    m.set(0, 0, 0.5);
    m.set(1, 0, -1.0);
    m.set(2, 0, 2.0);
    CHECK(m.min_value() == -1.0);
    CHECK(m.max_value() == 2.0);
    CHECK(m.mean() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("load 2x1 ppm extremes") {
    const auto path = temp_file("t_img_2x1.ppm");
    write_bytes(path, std::string("P6\n2 1\n255\n") +
                          std::string("\xff\xff\xff", 3) +
                          std::string("\x00\x00\x00", 3));
    const RgbImage img = load_image(path.string());
    REQUIRE(img.width() == 2);
    REQUIRE(img.height() == 1);
    for (int c = 0; c < 3; ++c) {
        CHECK(img.at(c, 0, 0) == 1.0);
        CHECK(img.at(c, 1, 0) == 0.0);
    }
}

TEST_CASE("load 16-bit ppm scales by 65535") {
    const auto path = temp_file("t_img_16.ppm");
    std::string px;
    px += std::string("\xff\xff", 2);  // 65535
    px += std::string("\x80\x00", 2);  // 32768
    px += std::string("\x00\x01", 2);  // 1
    write_bytes(path, "P6\n1 1\n65535\n" + px);
    const RgbImage img = load_image(path.string());
    CHECK(img.at(0, 0, 0) == 1.0);
    CHECK(img.at(1, 0, 0) == doctest::Approx(32768.0 / 65535.0).epsilon(1e-12));
    CHECK(img.at(2, 0, 0) == doctest::Approx(1.0 / 65535.0).epsilon(1e-12));
}

TEST_CASE("png round trip of mid-gray") {
    const auto path = temp_file("t_img_gray.png");
    RgbImage img(4, 3);
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 4; ++x)
            img.set_pixel(x, y, 128.0 / 255.0, 128.0 / 255.0, 128.0 / 255.0);
    save_image(img, path.string());
    const RgbImage back = load_image(path.string());
    REQUIRE(back.width() == 4);
    REQUIRE(back.height() == 3);
    for (int c = 0; c < 3; ++c) CHECK(back.at(c, 2, 1) == doctest::Approx(128.0 / 255.0));
}

TEST_CASE("save then load stays within one quantization step") {
    const auto path = temp_file("t_img_rt.png");
    const RgbImage img = gradient_image(17, 11);
    save_image(img, path.string());
    const RgbImage back = load_image(path.string());
    double max_diff = 0;
    for (int c = 0; c < 3; ++c)
        for (int y = 0; y < 11; ++y)
            for (int x = 0; x < 17; ++x)
                max_diff = std::max(max_diff,
                                    std::abs(back.at(c, x, y) - img.at(c, x, y)));
    CHECK(max_diff <= 1.0 / 255.0);
}

TEST_CASE("save load save is byte identical") {
    const auto p1 = temp_file("t_img_q1.png");
    const auto p2 = temp_file("t_img_q2.png");
    save_image(gradient_image(9, 7), p1.string());
    save_image(load_image(p1.string()), p2.string());
    CHECK(read_bytes(p1) == read_bytes(p2));
}

TEST_CASE("save all zeros gives black pixels") {
    const auto path = temp_file("t_img_black.png");
    save_image(RgbImage(5, 5), path.string());
    const RgbImage back = load_image(path.string());
    for (int c = 0; c < 3; ++c)
        for (int y = 0; y < 5; ++y)
            for (int x = 0; x < 5; ++x) CHECK(back.at(c, x, y) == 0.0);
}

TEST_CASE("io error paths") {
    CHECK_THROWS_AS(load_image("/nonexistent/nope.png"), IoError);
    CHECK_THROWS_AS(save_image(RgbImage(1, 1), "/nonexistent/dir/out.png"),
                    IoError);
    CHECK_THROWS_AS(save_image(RgbImage(1, 1),
                               std::filesystem::temp_directory_path().string()),
                    IoError);

    const auto trunc = temp_file("t_img_trunc.png");
    const auto good = temp_file("t_img_good.png");
    save_image(gradient_image(8, 8), good.string());
    const std::string full = read_bytes(good);
    write_bytes(trunc, full.substr(0, full.size() / 2));
    CHECK_THROWS_AS(load_image(trunc.string()), IoError);

    const auto junk = temp_file("t_img_junk.bin");
    write_bytes(junk, "this is not an image at all, not even close");
    CHECK_THROWS_AS(load_image(junk.string()), FormatError);
}

TEST_CASE("white balance leaves gray images alone") {
    RgbImage img(6, 4);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 6; ++x) {
            const double v = 0.1 + 0.12 * x + 0.03 * y;
            img.set_pixel(x, y, v, v, v);
        }
    const RgbImage out = white_balance(img);
    for (int c = 0; c < 3; ++c)
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 6; ++x)
                CHECK(out.at(c, x, y) == doctest::Approx(img.at(c, x, y)).epsilon(1e-9));
}

TEST_CASE("white balance equalizes constant channels") {
    RgbImage img(5, 5);
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5; ++x) img.set_pixel(x, y, 0.2, 0.4, 0.6);
    const RgbImage out = white_balance(img);
    for (int c = 0; c < 3; ++c) CHECK(out.at(c, 2, 2) == doctest::Approx(0.4).epsilon(1e-9));
}

TEST_CASE("white balance rejects a dead channel") {
    RgbImage black(3, 3);
    CHECK_THROWS_AS(white_balance(black), DegenerateInputError);
    RgbImage no_blue(3, 3);
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 3; ++x) no_blue.set_pixel(x, y, 0.5, 0.5, 0.0);
    CHECK_THROWS_AS(white_balance(no_blue), DegenerateInputError);
}

TEST_CASE("white balance is idempotent when nothing clamps") {
    RgbImage img(8, 8);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x)
            img.set_pixel(x, y, 0.2 + 0.02 * x, 0.3 + 0.02 * y,
                          0.25 + 0.01 * (x + y));
    const RgbImage once = white_balance(img);
    const RgbImage twice = white_balance(once);
    for (int c = 0; c < 3; ++c)
        for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 8; ++x)
                CHECK(twice.at(c, x, y) ==
                      doctest::Approx(once.at(c, x, y)).epsilon(1e-6));
}

TEST_CASE("gray conversion weights") {
    RgbImage img(3, 1);
    img.set_pixel(0, 0, 1, 1, 1);
    img.set_pixel(1, 0, 1, 0, 0);
    img.set_pixel(2, 0, 0.5, 0.5, 0.5);
    const ScalarMap g = to_gray(img);
    CHECK(g.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.at(1, 0) == doctest::Approx(0.299).epsilon(1e-12));
    CHECK(g.at(2, 0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("dimension contract enforcement") {
    ScalarMap a(3, 3), b(4, 3);
    CHECK_THROWS_AS(require_same_size(a, b, "test"), ContractError);
}
