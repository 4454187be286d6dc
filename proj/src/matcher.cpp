#include "facekit/matcher.hpp"

#include "facekit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace facekit {

namespace {

constexpr double kChiSquareEps = 1e-12;

// Standalone recognition rates used as relative component reliabilities.
constexpr std::array<double, kComponentCount> kComponentRates = {
    85.0, // Face
    60.0, // LeftEye
    61.0, // RightEye
    65.0, // Nose
    70.0, // MouthChin
    72.0, // ForeheadEyebrow
};

} // namespace

std::vector<std::string> validate_weights(const FusionWeights& w) {
    std::vector<std::string> issues;
    const auto active = active_components(w.bucket);
    double sum = 0.0;
    for (ComponentKind kind : all_components()) {
        const double v = w.weight(kind);
        const std::string name(to_string(kind));
        if (!(v >= 0.0 && v <= 1.0))
            issues.push_back(name + ": weight must be in [0, 1]");
        const bool is_active = std::find(active.begin(), active.end(), kind) != active.end();
        if (!is_active && v != 0.0)
            issues.push_back(name + ": inactive component must have weight 0");
        if (is_active)
            sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        issues.push_back("active weights must sum to 1");
    return issues;
}

double chi_square(std::span<const double> h1, std::span<const double> h2) {
    if (h1.size() != h2.size())
        throw Error(ErrorCode::LengthMismatch,
                    "histogram lengths differ: " + std::to_string(h1.size()) + " vs " +
                        std::to_string(h2.size()));
    double d = 0.0;
    for (std::size_t k = 0; k < h1.size(); ++k) {
        const double diff = h1[k] - h2[k];
        d += diff * diff / (h1[k] + h2[k] + kChiSquareEps);
    }
    return d;
}

double component_score(const LbpDescriptor& probe, const LbpDescriptor& gallery) {
    if (probe.kind != gallery.kind || probe.grid_rows != gallery.grid_rows ||
        probe.grid_cols != gallery.grid_cols)
        throw Error(ErrorCode::DescriptorMismatch,
                    "descriptors disagree on kind or grid dims");
    if (probe.values == gallery.values)
        return 1.0;
    return 1.0 / (1.0 + chi_square(probe.values, gallery.values));
}

double fuse(const std::map<ComponentKind, double>& scores, const FusionWeights& weights) {
    double fused = 0.0;
    for (ComponentKind kind : all_components()) {
        const double w = weights.weight(kind);
        if (w <= 0.0)
            continue;
        auto it = scores.find(kind);
        if (it == scores.end())
            throw Error(ErrorCode::MissingScore,
                        "no score for weighted component " + std::string(to_string(kind)));
        fused += w * it->second;
    }
    return fused;
}

FusionWeights default_weights(PoseBucket bucket) {
    FusionWeights w;
    w.bucket = bucket;
    const auto active = active_components(bucket);
    double total = 0.0;
    for (ComponentKind kind : active)
        total += kComponentRates[static_cast<std::size_t>(kind)];
    for (ComponentKind kind : active)
        w.weights[static_cast<std::size_t>(kind)] =
            kComponentRates[static_cast<std::size_t>(kind)] / total;
    return w;
}

FusionWeights holistic_weights(PoseBucket bucket) {
    FusionWeights w;
    w.bucket = bucket;
    w.weights[static_cast<std::size_t>(ComponentKind::Face)] = 1.0;
    return w;
}

FusionWeights weights_for(const Config& cfg, PoseBucket bucket) {
    const auto& configured = cfg.weight_overrides[static_cast<std::size_t>(bucket)];
    if (!configured)
        return default_weights(bucket);
    FusionWeights w;
    w.bucket = bucket;
    w.weights = *configured;
    return w;
}

std::vector<MatchResult> identify(const std::map<ComponentKind, LbpDescriptor>& probe,
                                  PoseBucket bucket, const Gallery& gallery,
                                  const FusionWeights& weights,
                                  const std::string& config_fingerprint,
                                  std::size_t top_k, double reject_tau,
                                  MatchStats* stats) {
    if (gallery.config_fingerprint != config_fingerprint)
        throw Error(ErrorCode::ConfigMismatch,
                    "gallery fingerprint " + gallery.config_fingerprint +
                        " does not match configuration " + config_fingerprint);

    const auto& partition = partition_for(gallery, bucket);
    if (partition.empty())
        throw Error(ErrorCode::NoCandidates,
                    "no enrolled entries for pose bucket " + std::string(to_string(bucket)));

    // Best entry per subject; entries are visited in partition order so
    // an earlier entry wins an exact score tie.
    std::map<std::string, MatchResult> best;
    for (const GalleryEntry& entry : partition) {
        if (stats)
            ++stats->entries_scored;

        MatchResult result;
        result.subject_id = entry.subject_id;
        result.entry_ref = entry.source_ref;
        for (ComponentKind kind : all_components()) {
            if (weights.weight(kind) <= 0.0)
                continue;
            auto probe_it = probe.find(kind);
            if (probe_it == probe.end())
                throw Error(ErrorCode::MissingScore,
                            "probe lacks a descriptor for weighted component " +
                                std::string(to_string(kind)));
            result.component_scores[kind] =
                component_score(probe_it->second, entry.descriptors.at(kind));
        }
        result.score = fuse(result.component_scores, weights);
        result.rejected = result.score < reject_tau;

        auto [it, inserted] = best.emplace(entry.subject_id, result);
        if (!inserted && result.score > it->second.score)
            it->second = result;
    }

    std::vector<MatchResult> ranked;
    ranked.reserve(best.size());
    for (auto& [_, result] : best)
        ranked.push_back(std::move(result));
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const MatchResult& a, const MatchResult& b) {
                         if (a.score != b.score)
                             return a.score > b.score;
                         return a.subject_id < b.subject_id;
                     });
    if (ranked.size() > top_k)
        ranked.resize(top_k);
    return ranked;
}

} // namespace facekit
