#pragma once

#include "facekit/config.hpp"
#include "facekit/gallery.hpp"
#include "facekit/image.hpp"

#include <string>
#include <vector>

namespace facekit {

/// One probe: image + landmark file + ground-truth subject.
/// Loaded from CSV with header `image,landmarks,subject`; relative paths
/// are resolved against the manifest's directory.
struct ProbeRow {
    std::string image_path;
    std::string landmarks_path;
    std::string subject_id;
};

std::vector<ProbeRow> load_manifest(const std::string& path);

enum class OccludeMode { None, Top, Bottom };

std::string_view to_string(OccludeMode mode);

/// Zeroes the top or bottom `fraction` of the image rows, emulating
/// sunglasses / scarf occlusion before any component is extracted.
void apply_occlusion(GrayImage& img, OccludeMode mode, double fraction);

struct EvalRow {
    std::string condition;
    std::size_t probes = 0;
    std::size_t correct = 0;

    /// Rank-1 rate as a percentage rounded to one decimal.
    double rate_percent() const;
};

struct EvalReport {
    OccludeMode occlude = OccludeMode::None;
    double occlude_fraction = 0.5;
    std::vector<EvalRow> rows;
};

/// Runs identify over every manifest row. The first report row is the
/// fused (or holistic) condition; with `ablate`, one row per component
/// follows, counting only probes whose bucket keeps that component
/// active. Probes whose bucket has no enrolled entries count as misses.
EvalReport run_evaluation(const Gallery& gallery, const std::vector<ProbeRow>& probes,
                          const Config& cfg, OccludeMode occlude, double occlude_fraction,
                          bool holistic, bool ablate);

std::string render_table(const EvalReport& report);
std::string render_json(const EvalReport& report);

} // namespace facekit
