#pragma once

#include "facekit/config.hpp"
#include "facekit/image.hpp"
#include "facekit/landmarks.hpp"
#include "facekit/lbp.hpp"
#include "facekit/pose.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace facekit {

/// One enrolled capture. The descriptor keys are exactly the components
/// active for the entry's pose bucket.
struct GalleryEntry {
    std::string subject_id;
    PoseBucket pose = PoseBucket::Frontal;
    std::map<ComponentKind, LbpDescriptor> descriptors;
    std::string source_ref;

    bool operator==(const GalleryEntry&) const = default;
};

inline constexpr int kGalleryFormatVersion = 1;

/// Pose-partitioned store of enrolled descriptors. A gallery only holds
/// entries produced under one configuration fingerprint; mixing is
/// rejected at enroll and load time.
struct Gallery {
    int format_version = kGalleryFormatVersion;
    std::string config_fingerprint;
    std::array<std::vector<GalleryEntry>, kPoseBucketCount> partitions;

    std::size_t total_entries() const {
        std::size_t n = 0;
        for (const auto& p : partitions)
            n += p.size();
        return n;
    }

    bool operator==(const Gallery&) const = default;
};

/// Empty gallery bound to the configuration's fingerprint.
Gallery make_gallery(const Config& cfg);

/// Runs the full enrollment pipeline (pose -> components -> preprocess
/// -> descriptors) and appends one entry to the pose partition.
/// Throws ConfigMismatch when cfg does not match the gallery fingerprint.
Gallery enroll(Gallery gallery, const std::string& subject_id, const GrayImage& img,
               const LandmarkSet& ls, const Config& cfg);

const std::vector<GalleryEntry>& partition_for(const Gallery& gallery, PoseBucket bucket);

/// Throws IoFailure on write errors.
void save_gallery(const Gallery& gallery, const std::string& path);

/// Validates format version and every structural invariant.
/// Throws IoFailure, CorruptGallery or UnsupportedVersion.
Gallery load_gallery(const std::string& path);

/// Parse/serialize without touching the filesystem.
Gallery parse_gallery(const std::string& bytes);
std::string serialize_gallery(const Gallery& gallery);

} // namespace facekit
