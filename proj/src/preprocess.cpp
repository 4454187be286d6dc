#include "facekit/preprocess.hpp"

#include "facekit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace facekit {

namespace {

std::vector<double> gaussian_kernel(double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> w(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        w[i + radius] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        sum += w[i + radius];
    }
    for (double& v : w)
        v /= sum;
    return w;
}

// One separable pass along x or y. Accumulating differences against the
// center tap keeps constant regions bit-exact regardless of how the
// normalized weights round.
RealImage blur_pass(const RealImage& img, const std::vector<double>& kernel, bool horizontal) {
    const int radius = static_cast<int>(kernel.size() / 2);
    RealImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const double center = img.at(x, y);
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) {
                int sx = x, sy = y;
                if (horizontal)
                    sx = std::clamp(x + i, 0, img.width - 1);
                else
                    sy = std::clamp(y + i, 0, img.height - 1);
                acc += kernel[i + radius] * (img.at(sx, sy) - center);
            }
            out.at(x, y) = center + acc;
        }
    }
    return out;
}

} // namespace

Size2i component_size(ComponentKind kind) {
    switch (kind) {
        case ComponentKind::Face:            return {92, 112};
        case ComponentKind::LeftEye:         return {27, 18};
        case ComponentKind::RightEye:        return {27, 18};
        case ComponentKind::Nose:            return {24, 38};
        case ComponentKind::MouthChin:       return {34, 40};
        case ComponentKind::ForeheadEyebrow: return {50, 42};
    }
    return {};
}

RealImage gaussian_blur(const RealImage& img, double sigma) {
    const auto kernel = gaussian_kernel(sigma);
    return blur_pass(blur_pass(img, kernel, true), kernel, false);
}

RealImage local_normalize(const RealImage& img, double sigma1, double sigma2, double eps) {
    if (!(sigma1 > 0.0) || !(sigma1 < sigma2))
        throw Error(ErrorCode::InvalidSigmas,
                    "sigmas must satisfy 0 < sigma1 < sigma2");

    const RealImage mu = gaussian_blur(img, sigma1);
    RealImage sq(img.width, img.height);
    for (std::size_t i = 0; i < sq.values.size(); ++i) {
        const double d = img.values[i] - mu.values[i];
        sq.values[i] = d * d;
    }
    const RealImage var = gaussian_blur(sq, sigma2);

    RealImage out(img.width, img.height);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        const double sd = std::sqrt(std::max(var.values[i], 0.0));
        out.values[i] = (img.values[i] - mu.values[i]) / (sd + eps);
    }
    return out;
}

RealImage local_normalize(const GrayImage& img, double sigma1, double sigma2, double eps) {
    return local_normalize(to_real(img), sigma1, sigma2, eps);
}

RealImage resize_bilinear(const RealImage& img, Size2i target) {
    RealImage out(target.width, target.height);
    const double sx_step = target.width > 1
                               ? static_cast<double>(img.width - 1) / (target.width - 1)
                               : 0.0;
    const double sy_step = target.height > 1
                               ? static_cast<double>(img.height - 1) / (target.height - 1)
                               : 0.0;
    for (int y = 0; y < target.height; ++y) {
        const double sy = sy_step * y;
        const int y0 = static_cast<int>(sy);
        const int y1 = std::min(y0 + 1, img.height - 1);
        const double fy = sy - y0;
        for (int x = 0; x < target.width; ++x) {
            const double sx = sx_step * x;
            const int x0 = static_cast<int>(sx);
            const int x1 = std::min(x0 + 1, img.width - 1);
            const double fx = sx - x0;
            const double top = img.at(x0, y0) * (1.0 - fx) + img.at(x1, y0) * fx;
            const double bottom = img.at(x0, y1) * (1.0 - fx) + img.at(x1, y1) * fx;
            out.at(x, y) = top * (1.0 - fy) + bottom * fy;
        }
    }
    return out;
}

GrayImage resize_bilinear(const GrayImage& img, Size2i target) {
    const RealImage real = resize_bilinear(to_real(img), target);
    GrayImage out(target.width, target.height);
    for (std::size_t i = 0; i < real.values.size(); ++i) {
        const long v = std::lround(real.values[i]);
        out.pixels[i] = static_cast<std::uint8_t>(std::clamp(v, 0L, 255L));
    }
    return out;
}

RealImage preprocess_component(const GrayImage& roi, ComponentKind kind,
                               const PreprocessConfig& cfg) {
    const RealImage resized = resize_bilinear(to_real(roi), component_size(kind));
    return local_normalize(resized, cfg.sigma1, cfg.sigma2, cfg.eps);
}

} // namespace facekit
