#include "facekit/gallery.hpp"

#include "facekit/errors.hpp"
#include "facekit/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace facekit {

namespace {

using nlohmann::json;

[[noreturn]] void corrupt(const std::string& reason) {
    throw Error(ErrorCode::CorruptGallery, "corrupt gallery: " + reason);
}

void validate_descriptor(const LbpDescriptor& d, const std::string& ctx) {
    if (d.grid_rows < 1 || d.grid_cols < 1)
        corrupt(ctx + ": grid dims must be positive");
    const std::size_t expected =
        static_cast<std::size_t>(d.grid_rows) * d.grid_cols * LbpDescriptor::kBins;
    if (d.values.size() != expected)
        corrupt(ctx + ": expected " + std::to_string(expected) + " values, got " +
                std::to_string(d.values.size()));
    for (std::size_t region = 0; region < d.values.size(); region += LbpDescriptor::kBins) {
        double sum = 0.0;
        for (int bin = 0; bin < LbpDescriptor::kBins; ++bin) {
            const double v = d.values[region + bin];
            if (!(v >= 0.0))
                corrupt(ctx + ": descriptor entries must be >= 0");
            sum += v;
        }
        if (sum != 0.0 && std::abs(sum - 1.0) > 1e-9)
            corrupt(ctx + ": region histogram must sum to 1 or be all-zero");
    }
}

void validate_entry(const GalleryEntry& entry, PoseBucket bucket, const std::string& ctx) {
    if (entry.subject_id.empty())
        corrupt(ctx + ": subject_id must be nonempty");
    if (entry.pose != bucket)
        corrupt(ctx + ": entry pose does not match its partition");
    const auto active = active_components(bucket);
    if (entry.descriptors.size() != active.size())
        corrupt(ctx + ": descriptor key set must equal the bucket's active components");
    for (ComponentKind kind : active) {
        auto it = entry.descriptors.find(kind);
        if (it == entry.descriptors.end())
            corrupt(ctx + ": missing descriptor for " + std::string(to_string(kind)));
        if (it->second.kind != kind)
            corrupt(ctx + ": descriptor kind does not match its key");
        validate_descriptor(it->second, ctx + "/" + std::string(to_string(kind)));
    }
}

} // namespace

Gallery make_gallery(const Config& cfg) {
    Gallery g;
    g.config_fingerprint = cfg.fingerprint();
    return g;
}

Gallery enroll(Gallery gallery, const std::string& subject_id, const GrayImage& img,
               const LandmarkSet& ls, const Config& cfg) {
    if (gallery.config_fingerprint != cfg.fingerprint())
        throw Error(ErrorCode::ConfigMismatch,
                    "gallery fingerprint " + gallery.config_fingerprint +
                        " does not match configuration " + cfg.fingerprint());

    const PoseAngles angles = estimate_pose(ls, cfg.pose);
    const PoseBucket bucket = bucket_pose(angles, cfg.pose.threshold_degrees);

    GalleryEntry entry;
    entry.subject_id = subject_id;
    entry.pose = bucket;
    entry.source_ref = ls.image_ref;
    entry.descriptors = compute_descriptors(img, ls, bucket, cfg);

    gallery.partitions[static_cast<std::size_t>(bucket)].push_back(std::move(entry));
    return gallery;
}

const std::vector<GalleryEntry>& partition_for(const Gallery& gallery, PoseBucket bucket) {
    return gallery.partitions[static_cast<std::size_t>(bucket)];
}

std::string serialize_gallery(const Gallery& gallery) {
    json partitions = json::object();
    for (PoseBucket bucket : all_pose_buckets()) {
        json entries = json::array();
        for (const GalleryEntry& entry : partition_for(gallery, bucket)) {
            json descriptors = json::object();
            for (const auto& [kind, d] : entry.descriptors) {
                descriptors[std::string(to_string(kind))] = {
                    {"grid", {d.grid_rows, d.grid_cols}},
                    {"values", d.values},
                };
            }
            entries.push_back({{"subject_id", entry.subject_id},
                               {"source_ref", entry.source_ref},
                               {"descriptors", std::move(descriptors)}});
        }
        partitions[std::string(to_string(bucket))] = std::move(entries);
    }
    json doc = {{"format_version", gallery.format_version},
                {"config_fingerprint", gallery.config_fingerprint},
                {"partitions", std::move(partitions)}};
    return doc.dump() + "\n";
}

Gallery parse_gallery(const std::string& bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::exception& e) {
        corrupt(std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        corrupt("top level must be an object");
    if (!doc.contains("format_version") || !doc["format_version"].is_number_integer())
        corrupt("missing format_version");
    const int version = doc["format_version"].get<int>();
    if (version != kGalleryFormatVersion)
        throw Error(ErrorCode::UnsupportedVersion,
                    "unsupported gallery format_version " + std::to_string(version));
    if (!doc.contains("config_fingerprint") || !doc["config_fingerprint"].is_string())
        corrupt("missing config_fingerprint");
    if (!doc.contains("partitions") || !doc["partitions"].is_object())
        corrupt("missing partitions");

    Gallery g;
    g.format_version = version;
    g.config_fingerprint = doc["config_fingerprint"].get<std::string>();

    const json& partitions = doc["partitions"];
    for (const auto& [name, _] : partitions.items()) {
        PoseBucket bucket;
        if (!pose_bucket_from_string(name, bucket))
            corrupt("unknown partition '" + name + "'");
    }
    for (PoseBucket bucket : all_pose_buckets()) {
        const std::string bucket_name(to_string(bucket));
        if (!partitions.contains(bucket_name))
            corrupt("missing partition '" + bucket_name + "'");
        const json& entries = partitions[bucket_name];
        if (!entries.is_array())
            corrupt("partition '" + bucket_name + "' must be an array");

        for (std::size_t i = 0; i < entries.size(); ++i) {
            const json& e = entries[i];
            const std::string ctx = bucket_name + "[" + std::to_string(i) + "]";
            if (!e.is_object() || !e.contains("subject_id") || !e["subject_id"].is_string() ||
                !e.contains("source_ref") || !e["source_ref"].is_string() ||
                !e.contains("descriptors") || !e["descriptors"].is_object())
                corrupt(ctx + ": entry must have subject_id, source_ref, descriptors");

            GalleryEntry entry;
            entry.subject_id = e["subject_id"].get<std::string>();
            entry.source_ref = e["source_ref"].get<std::string>();
            entry.pose = bucket;

            for (const auto& [kind_name, dj] : e["descriptors"].items()) {
                ComponentKind kind;
                if (!component_from_string(kind_name, kind))
                    corrupt(ctx + ": unknown component '" + kind_name + "'");
                if (!dj.is_object() || !dj.contains("grid") || !dj["grid"].is_array() ||
                    dj["grid"].size() != 2 || !dj["grid"][0].is_number_integer() ||
                    !dj["grid"][1].is_number_integer() || !dj.contains("values") ||
                    !dj["values"].is_array())
                    corrupt(ctx + "/" + kind_name + ": descriptor must have grid and values");
                LbpDescriptor d;
                d.kind = kind;
                d.grid_rows = dj["grid"][0].get<int>();
                d.grid_cols = dj["grid"][1].get<int>();
                d.values.reserve(dj["values"].size());
                for (const json& v : dj["values"]) {
                    if (!v.is_number())
                        corrupt(ctx + "/" + kind_name + ": values must be numbers");
                    d.values.push_back(v.get<double>());
                }
                entry.descriptors.emplace(kind, std::move(d));
            }
            validate_entry(entry, bucket, ctx);
            g.partitions[static_cast<std::size_t>(bucket)].push_back(std::move(entry));
        }
    }
    return g;
}

void save_gallery(const Gallery& gallery, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::IoFailure, "cannot open gallery for writing: " + path);
    out << serialize_gallery(gallery);
    out.flush();
    if (!out)
        throw Error(ErrorCode::IoFailure, "failed writing gallery: " + path);
}

Gallery load_gallery(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoFailure, "cannot open gallery file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_gallery(buf.str());
}

} // namespace facekit
