#include "facekit/image_io.hpp"

#include "facekit/errors.hpp"
#include "support/checks.hpp"

#include <doctest.h>
#include <zlib.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

using namespace facekit;
using facekit::testing::check_throws_code;
using facekit::testing::TempDir;

namespace {

using Bytes = std::vector<std::uint8_t>;

void be32(Bytes& out, std::uint32_t v) {
    out.push_back(std::uint8_t(v >> 24));
    out.push_back(std::uint8_t(v >> 16));
    out.push_back(std::uint8_t(v >> 8));
    out.push_back(std::uint8_t(v));
}

Bytes chunk(const char type[4], const Bytes& data) {
    Bytes out;
    be32(out, std::uint32_t(data.size()));
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    const uLong crc =
        crc32(crc32(0L, Z_NULL, 0), out.data() + 4, uInt(4 + data.size()));
    be32(out, std::uint32_t(crc));
    return out;
}

Bytes deflate_bytes(const Bytes& raw) {
    uLongf len = compressBound(uLong(raw.size()));
    Bytes out(len);
    REQUIRE(compress2(out.data(), &len, raw.data(), uLong(raw.size()), 6) == Z_OK);
    out.resize(len);
    return out;
}

/// Assembles a PNG from pre-filtered scanlines (filter byte included).
Bytes build_png(std::uint32_t w, std::uint32_t h, int bit_depth, int color_type,
                int interlace, const Bytes& raw, const Bytes& plte = {}) {
    Bytes ihdr;
    be32(ihdr, w);
    be32(ihdr, h);
    ihdr.push_back(std::uint8_t(bit_depth));
    ihdr.push_back(std::uint8_t(color_type));
    ihdr.push_back(0);
    ihdr.push_back(0);
    ihdr.push_back(std::uint8_t(interlace));

    Bytes png = {137, 80, 78, 71, 13, 10, 26, 10};
    auto append = [&](const Bytes& c) { png.insert(png.end(), c.begin(), c.end()); };
    append(chunk("IHDR", ihdr));
    if (!plte.empty())
        append(chunk("PLTE", plte));
    append(chunk("tEXt", {'k', 0, 'v'})); // ancillary, must be skipped
    append(chunk("IDAT", deflate_bytes(raw)));
    append(chunk("IEND", {}));
    return png;
}

std::uint8_t paeth_ref(std::uint8_t a, std::uint8_t b, std::uint8_t c) {
    const int p = int(a) + int(b) - int(c);
    const int pa = std::abs(p - int(a)), pb = std::abs(p - int(b)), pc = std::abs(p - int(c));
    if (pa <= pb && pa <= pc)
        return a;
    return pb <= pc ? b : c;
}

/// Applies PNG filter `type` to every row of unfiltered pixel data.
Bytes filter_rows(const Bytes& pixels, std::uint32_t w, std::uint32_t h, int channels,
                  int type) {
    const std::size_t stride = std::size_t(w) * channels;
    Bytes out;
    Bytes prev(stride, 0);
    for (std::uint32_t y = 0; y < h; ++y) {
        const std::uint8_t* cur = pixels.data() + y * stride;
        out.push_back(std::uint8_t(type));
        for (std::size_t i = 0; i < stride; ++i) {
            const std::uint8_t a = i >= std::size_t(channels) ? cur[i - channels] : 0;
            const std::uint8_t b = prev[i];
            const std::uint8_t c = i >= std::size_t(channels) ? prev[i - channels] : 0;
            std::uint8_t v = cur[i];
            switch (type) {
                case 0: break;
                case 1: v = std::uint8_t(v - a); break;
                case 2: v = std::uint8_t(v - b); break;
                case 3: v = std::uint8_t(v - ((int(a) + int(b)) >> 1)); break;
                case 4: v = std::uint8_t(v - paeth_ref(a, b, c)); break;
            }
            out.push_back(v);
        }
        std::memcpy(prev.data(), cur, stride);
    }
    return out;
}

GrayImage random_gray(int w, int h, std::mt19937& rng) {
    std::uniform_int_distribution<int> value(0, 255);
    GrayImage img(w, h);
    for (auto& px : img.pixels)
        px = std::uint8_t(value(rng));
    return img;
}

std::uint8_t luma_ref(int r, int g, int b) {
    return std::uint8_t(std::lround(0.299 * r + 0.587 * g + 0.114 * b));
}

} // namespace

TEST_CASE("PNG encode/decode round-trips") {
    std::mt19937 rng(401);
    for (const auto& [w, h] : {std::pair{1, 1}, std::pair{7, 3}, std::pair{64, 48}}) {
        const GrayImage img = random_gray(w, h, rng);
        CHECK(decode_png(encode_png(img)) == img);
    }
}

TEST_CASE("PNG decoder handles every filter type") {
    std::mt19937 rng(409);
    const GrayImage img = random_gray(13, 9, rng);
    const Bytes pixels(img.pixels.begin(), img.pixels.end());
    for (int filter = 0; filter <= 4; ++filter) {
        const Bytes raw = filter_rows(pixels, 13, 9, 1, filter);
        const Bytes png = build_png(13, 9, 8, 0, 0, raw);
        CHECK(decode_png(png) == img);
    }
}

TEST_CASE("color PNGs reduce to ITU-R 601 luma") {
    // 2x2 RGB: red, green, blue, white
    const Bytes rgb = {255, 0, 0, 0, 255, 0, 0, 0, 255, 255, 255, 255};
    const Bytes png = build_png(2, 2, 8, 2, 0, filter_rows(rgb, 2, 2, 3, 1));
    const GrayImage img = decode_png(png);
    CHECK(img.at(0, 0) == luma_ref(255, 0, 0));
    CHECK(img.at(1, 0) == luma_ref(0, 255, 0));
    CHECK(img.at(0, 1) == luma_ref(0, 0, 255));
    CHECK(img.at(1, 1) == 255);

    // RGBA: alpha ignored
    const Bytes rgba = {10, 20, 30, 0, 200, 100, 50, 255};
    const GrayImage ia = decode_png(build_png(2, 1, 8, 6, 0, filter_rows(rgba, 2, 1, 4, 0)));
    CHECK(ia.at(0, 0) == luma_ref(10, 20, 30));
    CHECK(ia.at(1, 0) == luma_ref(200, 100, 50));

    // gray + alpha: gray channel taken directly
    const Bytes ga = {77, 0, 200, 128};
    const GrayImage ig = decode_png(build_png(2, 1, 8, 4, 0, filter_rows(ga, 2, 1, 2, 0)));
    CHECK(ig.at(0, 0) == 77);
    CHECK(ig.at(1, 0) == 200);

    // palette
    const Bytes plte = {255, 0, 0, 0, 0, 255};
    const Bytes indices = {0, 1, 1, 0};
    const GrayImage ip =
        decode_png(build_png(2, 2, 8, 3, 0, filter_rows(indices, 2, 2, 1, 2), plte));
    CHECK(ip.at(0, 0) == luma_ref(255, 0, 0));
    CHECK(ip.at(1, 0) == luma_ref(0, 0, 255));
}

TEST_CASE("unsupported or damaged PNGs are rejected") {
    std::mt19937 rng(419);
    const GrayImage img = random_gray(4, 4, rng);
    const Bytes pixels(img.pixels.begin(), img.pixels.end());
    const Bytes raw = filter_rows(pixels, 4, 4, 1, 0);

    check_throws_code([&] { decode_png(build_png(4, 4, 16, 0, 0, raw)); },
                      ErrorCode::IoFailure); // 16-bit
    check_throws_code([&] { decode_png(build_png(4, 4, 8, 0, 1, raw)); },
                      ErrorCode::IoFailure); // interlaced

    Bytes png = encode_png(img);
    png[20] ^= 0xff; // corrupt IHDR payload -> CRC mismatch
    check_throws_code([&] { decode_png(png); }, ErrorCode::IoFailure);

    Bytes truncated = encode_png(img);
    truncated.resize(truncated.size() / 2);
    check_throws_code([&] { decode_png(truncated); }, ErrorCode::IoFailure);

    check_throws_code([] { decode_png({1, 2, 3}); }, ErrorCode::IoFailure);
}

TEST_CASE("PGM round-trip and parsing") {
    TempDir dir("pgm");
    std::mt19937 rng(421);
    const GrayImage img = random_gray(33, 21, rng);
    save_pgm(img, dir.file("x.pgm"));
    CHECK(load_image(dir.file("x.pgm")) == img);

    // ASCII P2 with comments
    std::ofstream(dir.file("a.pgm")) << "P2\n# comment\n3 2\n255\n0 10 20\n30 40 255\n";
    const GrayImage ascii = load_image(dir.file("a.pgm"));
    REQUIRE(ascii.width == 3);
    REQUIRE(ascii.height == 2);
    CHECK(ascii.at(0, 0) == 0);
    CHECK(ascii.at(2, 1) == 255);

    std::ofstream(dir.file("deep.pgm")) << "P5\n2 2\n65535\n";
    check_throws_code([&] { load_image(dir.file("deep.pgm")); }, ErrorCode::IoFailure);

    std::ofstream(dir.file("short.pgm")) << "P5\n4 4\n255\nxx";
    check_throws_code([&] { load_image(dir.file("short.pgm")); }, ErrorCode::IoFailure);
}

TEST_CASE("random corruptions raise IoFailure instead of crashing") {
    std::mt19937 rng(443);
    const GrayImage img = random_gray(24, 16, rng);
    const Bytes png = encode_png(img);
    std::uniform_int_distribution<std::size_t> pos(0, png.size() - 1);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int trial = 0; trial < 300; ++trial) {
        Bytes mutated = png;
        for (int hits = 0; hits < 1 + trial % 4; ++hits)
            mutated[pos(rng)] = std::uint8_t(byte(rng));
        try {
            decode_png(mutated); // surviving CRC by chance is acceptable
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::IoFailure);
        }
        Bytes chopped(png.begin(), png.begin() + long(pos(rng)));
        try {
            decode_png(chopped);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::IoFailure);
        }
    }
}

TEST_CASE("load_image dispatches on magic bytes") {
    TempDir dir("dispatch");
    std::mt19937 rng(431);
    const GrayImage img = random_gray(5, 5, rng);
    save_png(img, dir.file("x.png"));
    CHECK(load_image(dir.file("x.png")) == img);

    std::ofstream(dir.file("junk.bin")) << "not an image";
    check_throws_code([&] { load_image(dir.file("junk.bin")); }, ErrorCode::IoFailure);
    check_throws_code([&] { load_image(dir.file("missing.png")); }, ErrorCode::IoFailure);
}
