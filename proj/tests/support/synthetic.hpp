#pragma once

// Synthetic data used by the test suites and the demo-data generator:
// a symmetric 3D landmark template that can be rigidly rotated by known
// yaw/pitch angles, and per-subject block textures.

#include "facekit/image.hpp"
#include "facekit/landmarks.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace facekit::synth {

/// Camera model used to project template points: 640x480 raster,
/// focal length 540, principal point (320, 240), y up in camera space.
inline constexpr int kImageWidth = 640;
inline constexpr int kImageHeight = 480;

/// Frontal template: pitch, yaw and roll are all exactly zero.
LandmarkSet frontal_landmarks(const std::string& image_ref = "synthetic");

/// Template rotated rigidly about the head center. Positive yaw moves
/// the right-labeled cheek away from the camera (the Right bucket);
/// positive pitch moves the forehead away (the Up bucket).
LandmarkSet rotated_landmarks(double yaw_deg, double pitch_deg,
                              const std::string& image_ref = "synthetic");

/// Deterministic per-subject texture: 8x8 blocks of subject-seeded
/// intensities, plus optional per-capture uniform noise in
/// [-noise_amplitude, +noise_amplitude].
GrayImage subject_texture(std::uint32_t subject_seed, int noise_amplitude = 0,
                          std::uint32_t capture_seed = 0);

struct DatasetSpec {
    int subjects = 10;
    int captures = 2;
    int noise_amplitude = 6;
    std::uint32_t seed = 1;
    bool png = true; // otherwise PGM
};

/// Writes <dir>/sNN_cM.{png|pgm}, matching .landmarks.json files and a
/// probes.csv manifest covering every capture. Returns the manifest path.
std::filesystem::path write_dataset(const std::filesystem::path& dir,
                                    const DatasetSpec& spec);

} // namespace facekit::synth
