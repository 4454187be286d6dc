#pragma once

#include "facekit/config.hpp"
#include "facekit/gallery.hpp"
#include "facekit/lbp.hpp"
#include "facekit/pose.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace facekit {

/// Per-component fusion weights for one pose bucket. Valid weights are
/// in [0, 1], zero on inactive components, and sum to 1 over the
/// bucket's active components.
struct FusionWeights {
    PoseBucket bucket = PoseBucket::Frontal;
    std::array<double, kComponentCount> weights{};

    double weight(ComponentKind kind) const {
        return weights[static_cast<std::size_t>(kind)];
    }

    bool operator==(const FusionWeights&) const = default;
};

/// Violation messages; empty when the weights satisfy every invariant.
std::vector<std::string> validate_weights(const FusionWeights& w);

struct MatchResult {
    std::string subject_id;
    double score = 0.0; // fused S in (0, 1]
    std::map<ComponentKind, double> component_scores;
    std::string entry_ref;
    bool rejected = false;
};

struct MatchStats {
    std::size_t entries_scored = 0;
};

/// Chi-square distance between two nonnegative histogram sequences:
/// sum (a-b)^2 / (a + b + 1e-12). Throws LengthMismatch.
double chi_square(std::span<const double> h1, std::span<const double> h2);

/// Similarity s = 1 / (1 + chi_square); 1 iff identical descriptors.
/// Throws DescriptorMismatch when kind or grid dims differ.
double component_score(const LbpDescriptor& probe, const LbpDescriptor& gallery);

/// Weighted sum over components with positive weight.
/// Throws MissingScore when such a component has no score.
double fuse(const std::map<ComponentKind, double>& scores, const FusionWeights& weights);

/// Weights proportional to each component's standalone recognition rate
/// (face 85, eyes 60/61, nose 65, mouth-chin 70, forehead 72),
/// restricted to the bucket's active set and renormalized to sum 1.
FusionWeights default_weights(PoseBucket bucket);

/// Weight 1 on the whole-face component; the holistic baseline.
FusionWeights holistic_weights(PoseBucket bucket);

/// Configured override for the bucket, or default_weights.
FusionWeights weights_for(const Config& cfg, PoseBucket bucket);

/// Scores the probe against the bucket's partition only, fuses per-entry
/// component scores, keeps each subject's best entry, and returns the
/// top_k subjects by descending score (ties by ascending subject_id).
/// Results under reject_tau are flagged rejected.
/// Throws NoCandidates on an empty partition and ConfigMismatch when
/// config_fingerprint differs from the gallery's.
std::vector<MatchResult> identify(const std::map<ComponentKind, LbpDescriptor>& probe,
                                  PoseBucket bucket, const Gallery& gallery,
                                  const FusionWeights& weights,
                                  const std::string& config_fingerprint,
                                  std::size_t top_k = 5, double reject_tau = 0.0,
                                  MatchStats* stats = nullptr);

} // namespace facekit
