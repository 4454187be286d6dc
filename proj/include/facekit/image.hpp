#pragma once

#include <cstdint>
#include <vector>

namespace facekit {

/// 8-bit intensity raster, row-major. pixels.size() == width * height.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t& at(int x, int y) {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    bool empty() const { return width <= 0 || height <= 0; }

    bool operator==(const GrayImage&) const = default;
};

/// Real-valued raster, row-major. values.size() == width * height.
struct RealImage {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    RealImage() = default;
    RealImage(int w, int h, double fill = 0.0)
        : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}

    double at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * width + x];
    }
    double& at(int x, int y) {
        return values[static_cast<std::size_t>(y) * width + x];
    }
    bool empty() const { return width <= 0 || height <= 0; }

    bool operator==(const RealImage&) const = default;
};

inline RealImage to_real(const GrayImage& img) {
    RealImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        out.values[i] = static_cast<double>(img.pixels[i]);
    return out;
}

} // namespace facekit
