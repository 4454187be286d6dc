#include "facekit/pipeline.hpp"

#include "facekit/geometry.hpp"
#include "facekit/preprocess.hpp"

namespace facekit {

LbpDescriptor compute_descriptor(const GrayImage& img, const LandmarkSet& ls,
                                 ComponentKind kind, const Config& cfg) {
    const BoundingBox box = component_box(ls, kind, cfg.margins);
    const GrayImage roi = extract_roi(img, box);
    const RealImage normalized = preprocess_component(roi, kind, cfg.preprocess);
    const GrayImage codes = lbp_image(normalized);
    return descriptor(codes, kind, cfg.grids[static_cast<std::size_t>(kind)]);
}

std::map<ComponentKind, LbpDescriptor> compute_descriptors(const GrayImage& img,
                                                           const LandmarkSet& ls,
                                                           PoseBucket bucket,
                                                           const Config& cfg) {
    std::map<ComponentKind, LbpDescriptor> out;
    for (ComponentKind kind : active_components(bucket))
        out.emplace(kind, compute_descriptor(img, ls, kind, cfg));
    return out;
}

} // namespace facekit
