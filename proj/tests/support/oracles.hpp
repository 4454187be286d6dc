#pragma once

// Brute-force reference implementations the unit and acceptance suites
// check the library against. These deliberately take the direct route
// (dense 2D convolution, per-pixel counting) rather than sharing any
// code with the implementations they verify.

#include "facekit/image.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace facekit::oracle {

/// Direct evaluation of the LBP sum: neighbors clockwise from the
/// top-left, neighbor n weighted 2^n, s(x) = 1 iff x >= 0.
inline int lbp_code(const std::array<double, 9>& patch) {
    static constexpr int dx[8] = {-1, 0, 1, 1, 1, 0, -1, -1};
    static constexpr int dy[8] = {-1, -1, -1, 0, 1, 1, 1, 0};
    const double center = patch[4];
    int value = 0;
    int weight = 1;
    for (int n = 0; n < 8; ++n) {
        const double neighbor = patch[(dy[n] + 1) * 3 + (dx[n] + 1)];
        if (neighbor - center >= 0.0)
            value += weight;
        weight *= 2;
    }
    return value;
}

/// Dense nested-loop Gaussian convolution with edge replication and a
/// unit-sum separable kernel, evaluated as a full 2D sum.
inline RealImage dense_gaussian_blur(const RealImage& img, double sigma) {
    const int radius = int(std::ceil(3.0 * sigma));
    std::vector<double> w(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        w[i + radius] = std::exp(-double(i) * i / (2.0 * sigma * sigma));
        sum += w[i + radius];
    }
    for (double& v : w)
        v /= sum;

    RealImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double acc = 0.0;
            for (int dy = -radius; dy <= radius; ++dy) {
                const int sy = std::clamp(y + dy, 0, img.height - 1);
                for (int dx = -radius; dx <= radius; ++dx) {
                    const int sx = std::clamp(x + dx, 0, img.width - 1);
                    acc += w[dy + radius] * w[dx + radius] * img.at(sx, sy);
                }
            }
            out.at(x, y) = acc;
        }
    }
    return out;
}

/// N = (I - mu) / (sqrt(var) + eps) evaluated with the dense blur.
inline RealImage dense_local_normalize(const RealImage& img, double sigma1,
                                       double sigma2, double eps) {
    const RealImage mu = dense_gaussian_blur(img, sigma1);
    RealImage sq(img.width, img.height);
    for (std::size_t i = 0; i < sq.values.size(); ++i) {
        const double d = img.values[i] - mu.values[i];
        sq.values[i] = d * d;
    }
    const RealImage var = dense_gaussian_blur(sq, sigma2);
    RealImage out(img.width, img.height);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] =
            (img.values[i] - mu.values[i]) / (std::sqrt(var.values[i]) + eps);
    return out;
}

/// Per-region counting of code frequencies, region bounds spelled out.
inline std::vector<double> regional_histograms(const GrayImage& codes, int rows,
                                               int cols) {
    std::vector<double> values(std::size_t(rows) * cols * 256, 0.0);
    const int base_h = codes.height / rows;
    const int base_w = codes.width / cols;
    std::size_t slice = 0;
    for (int gr = 0; gr < rows; ++gr) {
        for (int gc = 0; gc < cols; ++gc) {
            const int y0 = gr * base_h;
            const int y1 = gr + 1 == rows ? codes.height : (gr + 1) * base_h;
            const int x0 = gc * base_w;
            const int x1 = gc + 1 == cols ? codes.width : (gc + 1) * base_w;
            int count = 0;
            for (int y = y0; y < y1; ++y) {
                for (int x = x0; x < x1; ++x) {
                    values[slice * 256 + codes.at(x, y)] += 1.0;
                    ++count;
                }
            }
            for (int bin = 0; bin < 256; ++bin)
                values[slice * 256 + bin] /= double(count);
            ++slice;
        }
    }
    return values;
}

} // namespace facekit::oracle
