#pragma once

#include "facekit/config.hpp"
#include "facekit/image.hpp"
#include "facekit/landmarks.hpp"
#include "facekit/lbp.hpp"
#include "facekit/pose.hpp"

#include <map>

namespace facekit {

/// Crop -> resize -> normalize -> LBP -> regional histograms for one
/// component. Shared by enrollment and probe processing so both sides
/// always see identical descriptors.
LbpDescriptor compute_descriptor(const GrayImage& img, const LandmarkSet& ls,
                                 ComponentKind kind, const Config& cfg);

/// Descriptors for every component active in the bucket.
std::map<ComponentKind, LbpDescriptor> compute_descriptors(const GrayImage& img,
                                                           const LandmarkSet& ls,
                                                           PoseBucket bucket,
                                                           const Config& cfg);

} // namespace facekit
