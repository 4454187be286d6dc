#include "facekit/evaluate.hpp"

#include "facekit/errors.hpp"
#include "facekit/image_io.hpp"
#include "facekit/matcher.hpp"
#include "facekit/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace facekit {

namespace {

std::string resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    if (path.is_absolute())
        return path.string();
    return (base / path).string();
}

bool rank1_hit(const std::map<ComponentKind, LbpDescriptor>& probe, PoseBucket bucket,
               const Gallery& gallery, const FusionWeights& weights, const Config& cfg,
               const std::string& fingerprint, const std::string& subject) {
    try {
        const auto ranked =
            identify(probe, bucket, gallery, weights, fingerprint, 1, cfg.reject_tau);
        return !ranked.empty() && !ranked.front().rejected &&
               ranked.front().subject_id == subject;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NoCandidates)
            return false;
        throw;
    }
}

} // namespace

std::vector<ProbeRow> load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::IoFailure, "cannot open probe manifest: " + path);
    const auto base = std::filesystem::path(path).parent_path();

    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorCode::BadArguments, "manifest is empty: " + path);
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "image,landmarks,subject")
        throw Error(ErrorCode::BadArguments,
                    "manifest must start with header 'image,landmarks,subject'");

    std::vector<ProbeRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::array<std::string, 3> fields;
        std::size_t start = 0;
        for (int f = 0; f < 3; ++f) {
            const std::size_t comma = line.find(',', start);
            if (f < 2 && comma == std::string::npos)
                throw Error(ErrorCode::BadArguments,
                            "manifest line " + std::to_string(line_no) +
                                ": expected 3 comma-separated fields");
            fields[f] = line.substr(start, comma == std::string::npos ? std::string::npos
                                                                      : comma - start);
            start = comma + 1;
        }
        if (fields[2].find(',') != std::string::npos)
            throw Error(ErrorCode::BadArguments,
                        "manifest line " + std::to_string(line_no) + ": too many fields");
        if (fields[2].empty())
            throw Error(ErrorCode::BadArguments,
                        "manifest line " + std::to_string(line_no) + ": empty subject id");
        rows.push_back({resolve(base, fields[0]), resolve(base, fields[1]), fields[2]});
    }
    return rows;
}

std::string_view to_string(OccludeMode mode) {
    switch (mode) {
        case OccludeMode::None:   return "none";
        case OccludeMode::Top:    return "top";
        case OccludeMode::Bottom: return "bottom";
    }
    return "none";
}

void apply_occlusion(GrayImage& img, OccludeMode mode, double fraction) {
    if (mode == OccludeMode::None)
        return;
    const int masked =
        std::clamp(int(std::lround(img.height * fraction)), 0, img.height);
    const int y0 = mode == OccludeMode::Top ? 0 : img.height - masked;
    const int y1 = mode == OccludeMode::Top ? masked : img.height;
    for (int y = y0; y < y1; ++y)
        std::fill_n(img.pixels.begin() + std::size_t(y) * img.width, img.width,
                    std::uint8_t{0});
}

double EvalRow::rate_percent() const {
    if (probes == 0)
        return 0.0;
    return std::round(1000.0 * double(correct) / double(probes)) / 10.0;
}

EvalReport run_evaluation(const Gallery& gallery, const std::vector<ProbeRow>& probes,
                          const Config& cfg, OccludeMode occlude, double occlude_fraction,
                          bool holistic, bool ablate) {
    EvalReport report;
    report.occlude = occlude;
    report.occlude_fraction = occlude_fraction;

    const std::string fingerprint = cfg.fingerprint();
    EvalRow main_row{holistic ? "holistic" : "fused", 0, 0};
    std::array<EvalRow, kComponentCount> ablate_rows;
    for (ComponentKind kind : all_components())
        ablate_rows[std::size_t(kind)].condition = std::string(to_string(kind));

    for (const ProbeRow& row : probes) {
        GrayImage img = load_image(row.image_path);
        apply_occlusion(img, occlude, occlude_fraction);
        const LandmarkSet ls = load_landmark_file(row.landmarks_path);
        const PoseAngles angles = estimate_pose(ls, cfg.pose);
        const PoseBucket bucket = bucket_pose(angles, cfg.pose.threshold_degrees);
        const auto descriptors = compute_descriptors(img, ls, bucket, cfg);

        const FusionWeights main_weights =
            holistic ? holistic_weights(bucket) : weights_for(cfg, bucket);
        ++main_row.probes;
        if (rank1_hit(descriptors, bucket, gallery, main_weights, cfg, fingerprint,
                      row.subject_id))
            ++main_row.correct;

        if (ablate) {
            const auto active = active_components(bucket);
            for (ComponentKind kind : active) {
                FusionWeights single;
                single.bucket = bucket;
                single.weights[std::size_t(kind)] = 1.0;
                EvalRow& r = ablate_rows[std::size_t(kind)];
                ++r.probes;
                if (rank1_hit(descriptors, bucket, gallery, single, cfg, fingerprint,
                              row.subject_id))
                    ++r.correct;
            }
        }
    }

    report.rows.push_back(main_row);
    if (ablate)
        for (const EvalRow& r : ablate_rows)
            report.rows.push_back(r);
    return report;
}

std::string render_table(const EvalReport& report) {
    std::ostringstream out;
    char line[128];
    std::snprintf(line, sizeof(line), "%-18s %7s %8s %7s\n", "condition", "probes",
                  "correct", "rate");
    out << line;
    for (const EvalRow& r : report.rows) {
        std::snprintf(line, sizeof(line), "%-18s %7zu %8zu %6.1f%%\n", r.condition.c_str(),
                      r.probes, r.correct, r.rate_percent());
        out << line;
    }
    return out.str();
}

std::string render_json(const EvalReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const EvalRow& r : report.rows) {
        rows.push_back({{"condition", r.condition},
                        {"probes", r.probes},
                        {"correct", r.correct},
                        {"rate_percent", r.rate_percent()}});
    }
    nlohmann::json doc = {{"occlude", std::string(to_string(report.occlude))},
                          {"occlude_fraction", report.occlude_fraction},
                          {"rows", std::move(rows)}};
    return doc.dump() + "\n";
}

} // namespace facekit
