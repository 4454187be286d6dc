#pragma once

#include "facekit/geometry.hpp"
#include "facekit/image.hpp"

namespace facekit {

struct PreprocessConfig {
    double sigma1 = 2.0;  // mean estimate
    double sigma2 = 8.0;  // deviation estimate; must exceed sigma1
    double eps = 1e-6;    // added to the deviation before dividing

    bool operator==(const PreprocessConfig&) const = default;
};

struct Size2i {
    int width = 0;
    int height = 0;

    bool operator==(const Size2i&) const = default;
};

/// Fixed training size for each component. Descriptors are only
/// comparable between images resized to the same grid, so these are
/// constants rather than configuration.
Size2i component_size(ComponentKind kind);

/// Separable Gaussian convolution. Kernel radius = ceil(3 * sigma),
/// weights normalized to unit sum, borders handled by edge replication.
/// A constant image is reproduced exactly.
RealImage gaussian_blur(const RealImage& img, double sigma);

/// N = (I - mu) / (sigma + eps) with mu = blur(I, sigma1) and
/// sigma = sqrt(blur((I - mu)^2, sigma2)).
/// Throws InvalidSigmas unless 0 < sigma1 < sigma2.
RealImage local_normalize(const RealImage& img, double sigma1, double sigma2, double eps);
RealImage local_normalize(const GrayImage& img, double sigma1, double sigma2, double eps);

/// Bilinear interpolation with corner-aligned sampling.
RealImage resize_bilinear(const RealImage& img, Size2i target);
GrayImage resize_bilinear(const GrayImage& img, Size2i target);

/// Resize the cropped component to its fixed size, then normalize.
/// The result stays real-valued; downstream LBP only compares order.
RealImage preprocess_component(const GrayImage& roi, ComponentKind kind,
                               const PreprocessConfig& cfg = {});

} // namespace facekit
