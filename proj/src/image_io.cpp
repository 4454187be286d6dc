#include "facekit/image_io.hpp"

#include "facekit/errors.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>

namespace facekit {

namespace {

constexpr std::uint8_t kPngSignature[8] = {137, 80, 78, 71, 13, 10, 26, 10};

[[noreturn]] void fail(const std::string& why) {
    throw Error(ErrorCode::IoFailure, why);
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail("cannot open image file: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

std::uint32_t read_be32(const std::uint8_t* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const long v = std::lround(0.299 * r + 0.587 * g + 0.114 * b);
    return static_cast<std::uint8_t>(std::clamp(v, 0L, 255L));
}

std::uint8_t paeth(std::uint8_t a, std::uint8_t b, std::uint8_t c) {
    const int p = int(a) + int(b) - int(c);
    const int pa = std::abs(p - int(a));
    const int pb = std::abs(p - int(b));
    const int pc = std::abs(p - int(c));
    if (pa <= pb && pa <= pc)
        return a;
    if (pb <= pc)
        return b;
    return c;
}

// In-place scanline unfiltering; `raw` holds height rows of
// (1 filter byte + width*channels data bytes).
void unfilter(std::vector<std::uint8_t>& raw, std::uint32_t width, std::uint32_t height,
              int channels) {
    const std::size_t stride = std::size_t(width) * channels;
    std::vector<std::uint8_t> prev(stride, 0);
    for (std::uint32_t y = 0; y < height; ++y) {
        std::uint8_t* row = raw.data() + std::size_t(y) * (stride + 1);
        const std::uint8_t filter = row[0];
        std::uint8_t* cur = row + 1;
        switch (filter) {
            case 0:
                break;
            case 1: // Sub
                for (std::size_t i = channels; i < stride; ++i)
                    cur[i] = std::uint8_t(cur[i] + cur[i - channels]);
                break;
            case 2: // Up
                for (std::size_t i = 0; i < stride; ++i)
                    cur[i] = std::uint8_t(cur[i] + prev[i]);
                break;
            case 3: // Average
                for (std::size_t i = 0; i < stride; ++i) {
                    const int a = i >= std::size_t(channels) ? cur[i - channels] : 0;
                    cur[i] = std::uint8_t(cur[i] + ((a + prev[i]) >> 1));
                }
                break;
            case 4: // Paeth
                for (std::size_t i = 0; i < stride; ++i) {
                    const std::uint8_t a = i >= std::size_t(channels) ? cur[i - channels] : 0;
                    const std::uint8_t c = i >= std::size_t(channels) ? prev[i - channels] : 0;
                    cur[i] = std::uint8_t(cur[i] + paeth(a, prev[i], c));
                }
                break;
            default:
                fail("PNG: unknown filter type " + std::to_string(filter));
        }
        std::memcpy(prev.data(), cur, stride);
    }
}

void append_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(std::uint8_t(v >> 24));
    out.push_back(std::uint8_t(v >> 16));
    out.push_back(std::uint8_t(v >> 8));
    out.push_back(std::uint8_t(v));
}

void append_chunk(std::vector<std::uint8_t>& out, const char type[4],
                  const std::vector<std::uint8_t>& data) {
    append_be32(out, std::uint32_t(data.size()));
    const std::size_t type_at = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    const uLong crc = crc32(crc32(0L, Z_NULL, 0), out.data() + type_at, uInt(4 + data.size()));
    append_be32(out, std::uint32_t(crc));
}

// ---- PGM ----

struct PgmScanner {
    const std::vector<std::uint8_t>& bytes;
    std::size_t pos = 0;

    void skip_space_and_comments() {
        while (pos < bytes.size()) {
            if (std::isspace(bytes[pos])) {
                ++pos;
            } else if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n')
                    ++pos;
            } else {
                break;
            }
        }
    }

    long next_int() {
        skip_space_and_comments();
        if (pos >= bytes.size() || !std::isdigit(bytes[pos]))
            fail("PGM: expected an integer in header");
        long v = 0;
        while (pos < bytes.size() && std::isdigit(bytes[pos])) {
            v = v * 10 + (bytes[pos] - '0');
            if (v > 1'000'000'000L)
                fail("PGM: header value too large");
            ++pos;
        }
        return v;
    }
};

} // namespace

GrayImage decode_pgm(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2'))
        fail("PGM: bad magic");
    const bool binary = bytes[1] == '5';

    PgmScanner sc{bytes, 2};
    const long width = sc.next_int();
    const long height = sc.next_int();
    const long maxval = sc.next_int();
    if (width <= 0 || height <= 0)
        fail("PGM: dimensions must be positive");
    if (maxval <= 0 || maxval > 255)
        fail("PGM: only 8-bit maxval supported");

    GrayImage img{int(width), int(height)};
    if (binary) {
        // exactly one whitespace byte separates the header from the raster
        if (sc.pos >= bytes.size() || !std::isspace(bytes[sc.pos]))
            fail("PGM: missing raster separator");
        ++sc.pos;
        if (bytes.size() - sc.pos < img.pixels.size())
            fail("PGM: truncated raster");
        std::memcpy(img.pixels.data(), bytes.data() + sc.pos, img.pixels.size());
    } else {
        for (auto& px : img.pixels) {
            const long v = sc.next_int();
            if (v > maxval)
                fail("PGM: sample exceeds maxval");
            px = std::uint8_t(v);
        }
    }
    return img;
}

GrayImage decode_png(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kPngSignature, 8) != 0)
        fail("PNG: bad signature");

    std::uint32_t width = 0, height = 0;
    int bit_depth = 0, color_type = 0;
    bool seen_ihdr = false, seen_iend = false;
    std::vector<std::uint8_t> palette; // RGB triples
    std::vector<std::uint8_t> idat;

    std::size_t pos = 8;
    while (pos + 8 <= bytes.size() && !seen_iend) {
        const std::uint32_t length = read_be32(bytes.data() + pos);
        if (pos + 12 + std::size_t(length) > bytes.size())
            fail("PNG: truncated chunk");
        const char* type = reinterpret_cast<const char*>(bytes.data() + pos + 4);
        const std::uint8_t* data = bytes.data() + pos + 8;

        const uLong crc = crc32(crc32(0L, Z_NULL, 0), bytes.data() + pos + 4, 4 + length);
        if (crc != read_be32(bytes.data() + pos + 8 + length))
            fail("PNG: chunk CRC mismatch");

        if (std::memcmp(type, "IHDR", 4) == 0) {
            if (length != 13)
                fail("PNG: bad IHDR length");
            width = read_be32(data);
            height = read_be32(data + 4);
            bit_depth = data[8];
            color_type = data[9];
            if (width == 0 || height == 0)
                fail("PNG: zero dimensions");
            if (data[10] != 0 || data[11] != 0)
                fail("PNG: unsupported compression or filter method");
            if (data[12] != 0)
                fail("PNG: interlaced images not supported");
            if (bit_depth != 8)
                fail("PNG: only bit depth 8 supported");
            if (color_type != 0 && color_type != 2 && color_type != 3 && color_type != 4 &&
                color_type != 6)
                fail("PNG: unsupported color type " + std::to_string(color_type));
            seen_ihdr = true;
        } else if (std::memcmp(type, "PLTE", 4) == 0) {
            if (length % 3 != 0 || length == 0)
                fail("PNG: bad PLTE length");
            palette.assign(data, data + length);
        } else if (std::memcmp(type, "IDAT", 4) == 0) {
            idat.insert(idat.end(), data, data + length);
        } else if (std::memcmp(type, "IEND", 4) == 0) {
            seen_iend = true;
        }
        // ancillary chunks are skipped
        pos += 12 + length;
    }
    if (!seen_ihdr)
        fail("PNG: missing IHDR");
    if (!seen_iend)
        fail("PNG: missing IEND");
    if (idat.empty())
        fail("PNG: missing IDAT");

    const int channels =
        color_type == 0 ? 1 : color_type == 2 ? 3 : color_type == 3 ? 1 : color_type == 4 ? 2 : 4;
    if (color_type == 3 && palette.empty())
        fail("PNG: palette image without PLTE");

    const std::size_t stride = std::size_t(width) * channels;
    const std::size_t raw_size = (stride + 1) * height;
    std::vector<std::uint8_t> raw(raw_size);
    uLongf dest_len = raw_size;
    const int rc = uncompress(raw.data(), &dest_len, idat.data(), uLong(idat.size()));
    if (rc != Z_OK || dest_len != raw_size)
        fail("PNG: IDAT decompression failed");

    unfilter(raw, width, height, channels);

    GrayImage img{int(width), int(height)};
    for (std::uint32_t y = 0; y < height; ++y) {
        const std::uint8_t* row = raw.data() + std::size_t(y) * (stride + 1) + 1;
        for (std::uint32_t x = 0; x < width; ++x) {
            const std::uint8_t* px = row + std::size_t(x) * channels;
            std::uint8_t g = 0;
            switch (color_type) {
                case 0:
                case 4:
                    g = px[0];
                    break;
                case 2:
                case 6:
                    g = luma(px[0], px[1], px[2]);
                    break;
                case 3: {
                    const std::size_t idx = std::size_t(px[0]) * 3;
                    if (idx + 2 >= palette.size())
                        fail("PNG: palette index out of range");
                    g = luma(palette[idx], palette[idx + 1], palette[idx + 2]);
                    break;
                }
            }
            img.at(int(x), int(y)) = g;
        }
    }
    return img;
}

std::vector<std::uint8_t> encode_png(const GrayImage& img) {
    std::vector<std::uint8_t> raw;
    raw.reserve((std::size_t(img.width) + 1) * img.height);
    for (int y = 0; y < img.height; ++y) {
        raw.push_back(0); // filter: none
        raw.insert(raw.end(), img.pixels.begin() + std::size_t(y) * img.width,
                   img.pixels.begin() + std::size_t(y + 1) * img.width);
    }

    uLongf comp_len = compressBound(uLong(raw.size()));
    std::vector<std::uint8_t> compressed(comp_len);
    if (compress2(compressed.data(), &comp_len, raw.data(), uLong(raw.size()),
                  Z_BEST_COMPRESSION) != Z_OK)
        fail("PNG: deflate failed");
    compressed.resize(comp_len);

    std::vector<std::uint8_t> ihdr;
    append_be32(ihdr, std::uint32_t(img.width));
    append_be32(ihdr, std::uint32_t(img.height));
    ihdr.push_back(8); // bit depth
    ihdr.push_back(0); // color type: grayscale
    ihdr.push_back(0); // compression
    ihdr.push_back(0); // filter
    ihdr.push_back(0); // interlace

    std::vector<std::uint8_t> out(kPngSignature, kPngSignature + 8);
    append_chunk(out, "IHDR", ihdr);
    append_chunk(out, "IDAT", compressed);
    append_chunk(out, "IEND", {});
    return out;
}

GrayImage load_image(const std::string& path) {
    const auto bytes = read_file(path);
    if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature, 8) == 0)
        return decode_png(bytes);
    if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '2'))
        return decode_pgm(bytes);
    fail("unsupported image format (expected 8-bit PNG or PGM): " + path);
}

void save_png(const GrayImage& img, const std::string& path) {
    const auto bytes = encode_png(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail("cannot open image for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out)
        fail("failed writing image: " + path);
}

void save_pgm(const GrayImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail("cannot open image for writing: " + path);
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              std::streamsize(img.pixels.size()));
    if (!out)
        fail("failed writing image: " + path);
}

} // namespace facekit
