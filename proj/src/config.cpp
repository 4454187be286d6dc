#include "facekit/config.hpp"

#include "facekit/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace facekit {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& key, const std::string& reason) {
    throw Error(ErrorCode::BadConfig, "config key '" + key + "': " + reason);
}

void check_known_keys(const json& obj, const std::string& prefix,
                      std::initializer_list<std::string_view> known) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (auto k : known)
            ok = ok || key == k;
        if (!ok)
            bad(prefix + key, "unknown key");
    }
}

double get_number(const json& obj, const std::string& prefix, const char* key,
                  double fallback) {
    auto it = obj.find(key);
    if (it == obj.end())
        return fallback;
    if (!it->is_number())
        bad(prefix + key, "must be a number");
    return it->get<double>();
}

bool get_bool(const json& obj, const std::string& prefix, const char* key,
              bool fallback) {
    auto it = obj.find(key);
    if (it == obj.end())
        return fallback;
    if (!it->is_boolean())
        bad(prefix + key, "must be a boolean");
    return it->get<bool>();
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

std::array<GridSpec, kComponentCount> Config::default_grids() {
    std::array<GridSpec, kComponentCount> grids;
    grids.fill({3, 3});
    grids[static_cast<std::size_t>(ComponentKind::Face)] = {8, 8};
    return grids;
}

std::string Config::fingerprint() const {
    std::ostringstream canon;
    canon << "fk1";
    canon << ";sizes=";
    for (ComponentKind kind : all_components()) {
        const Size2i s = component_size(kind);
        canon << s.width << "x" << s.height << ",";
    }
    canon << ";grids=";
    for (ComponentKind kind : all_components()) {
        const GridSpec g = grids[static_cast<std::size_t>(kind)];
        canon << g.rows << "x" << g.cols << ",";
    }
    canon << ";sigma1=" << format_double(preprocess.sigma1);
    canon << ";sigma2=" << format_double(preprocess.sigma2);
    canon << ";eps=" << format_double(preprocess.eps);
    canon << ";neighbors=cw8-tl";

    char out[17];
    std::snprintf(out, sizeof(out), "%016llx",
                  static_cast<unsigned long long>(fnv1a(canon.str())));
    return out;
}

Config parse_config(const std::string& bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::exception& e) {
        bad("<document>", std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        bad("<document>", "top level must be an object");
    check_known_keys(doc, "", {"pose", "preprocess", "geometry", "features", "fusion", "matcher"});

    Config cfg;

    if (doc.contains("pose")) {
        const json& p = doc["pose"];
        if (!p.is_object())
            bad("pose", "must be an object");
        check_known_keys(p, "pose.", {"threshold_degrees", "flip_yaw", "flip_pitch"});
        cfg.pose.threshold_degrees =
            get_number(p, "pose.", "threshold_degrees", cfg.pose.threshold_degrees);
        if (!(cfg.pose.threshold_degrees > 0.0))
            bad("pose.threshold_degrees", "must be > 0");
        cfg.pose.flip_yaw = get_bool(p, "pose.", "flip_yaw", false);
        cfg.pose.flip_pitch = get_bool(p, "pose.", "flip_pitch", false);
    }

    if (doc.contains("preprocess")) {
        const json& p = doc["preprocess"];
        if (!p.is_object())
            bad("preprocess", "must be an object");
        check_known_keys(p, "preprocess.", {"sigma1", "sigma2", "eps"});
        cfg.preprocess.sigma1 = get_number(p, "preprocess.", "sigma1", cfg.preprocess.sigma1);
        cfg.preprocess.sigma2 = get_number(p, "preprocess.", "sigma2", cfg.preprocess.sigma2);
        cfg.preprocess.eps = get_number(p, "preprocess.", "eps", cfg.preprocess.eps);
    }
    if (!(cfg.preprocess.sigma1 > 0.0) || !(cfg.preprocess.sigma1 < cfg.preprocess.sigma2))
        bad("preprocess.sigma1", "must satisfy 0 < sigma1 < sigma2");
    if (!(cfg.preprocess.eps > 0.0))
        bad("preprocess.eps", "must be > 0");

    if (doc.contains("geometry")) {
        const json& g = doc["geometry"];
        if (!g.is_object())
            bad("geometry", "must be an object");
        check_known_keys(g, "geometry.", {"margins"});
        if (g.contains("margins")) {
            const json& m = g["margins"];
            if (!m.is_object())
                bad("geometry.margins", "must be an object");
            check_known_keys(m, "geometry.margins.",
                             {"eye_breadth_scale", "nose_length_scale", "nose_breadth_scale",
                              "forehead_breadth_scale", "face_pad"});
            MarginConfig& mc = cfg.margins;
            mc.eye_breadth_scale =
                get_number(m, "geometry.margins.", "eye_breadth_scale", mc.eye_breadth_scale);
            mc.nose_length_scale =
                get_number(m, "geometry.margins.", "nose_length_scale", mc.nose_length_scale);
            mc.nose_breadth_scale =
                get_number(m, "geometry.margins.", "nose_breadth_scale", mc.nose_breadth_scale);
            mc.forehead_breadth_scale = get_number(m, "geometry.margins.",
                                                   "forehead_breadth_scale",
                                                   mc.forehead_breadth_scale);
            mc.face_pad = get_number(m, "geometry.margins.", "face_pad", mc.face_pad);
            for (double v : {mc.eye_breadth_scale, mc.nose_length_scale, mc.nose_breadth_scale,
                             mc.forehead_breadth_scale}) {
                if (!(v > 0.0))
                    bad("geometry.margins", "scale factors must be > 0");
            }
            if (mc.face_pad < 0.0)
                bad("geometry.margins.face_pad", "must be >= 0");
        }
    }

    if (doc.contains("features")) {
        const json& f = doc["features"];
        if (!f.is_object())
            bad("features", "must be an object");
        check_known_keys(f, "features.", {"grid"});
        if (f.contains("grid")) {
            const json& g = f["grid"];
            if (!g.is_object())
                bad("features.grid", "must be an object");
            for (const auto& [name, value] : g.items()) {
                ComponentKind kind;
                if (!component_from_string(name, kind))
                    bad("features.grid." + name, "unknown component");
                if (!value.is_array() || value.size() != 2 ||
                    !value[0].is_number_integer() || !value[1].is_number_integer())
                    bad("features.grid." + name, "must be [rows, cols]");
                GridSpec spec{value[0].get<int>(), value[1].get<int>()};
                const Size2i size = component_size(kind);
                // LBP code images are 2px smaller in each dimension.
                if (spec.rows < 1 || spec.cols < 1 || spec.rows > size.height - 2 ||
                    spec.cols > size.width - 2)
                    bad("features.grid." + name,
                        "grid must fit the component's LBP image (" +
                            std::to_string(size.width - 2) + "x" +
                            std::to_string(size.height - 2) + ")");
                cfg.grids[static_cast<std::size_t>(kind)] = spec;
            }
        }
    }

    if (doc.contains("fusion")) {
        const json& f = doc["fusion"];
        if (!f.is_object())
            bad("fusion", "must be an object");
        check_known_keys(f, "fusion.", {"weights"});
        if (f.contains("weights")) {
            const json& w = f["weights"];
            if (!w.is_object())
                bad("fusion.weights", "must be an object");
            for (const auto& [bucket_name, kinds] : w.items()) {
                PoseBucket bucket;
                if (!pose_bucket_from_string(bucket_name, bucket))
                    bad("fusion.weights." + bucket_name, "unknown pose bucket");
                if (!kinds.is_object())
                    bad("fusion.weights." + bucket_name, "must be an object");
                std::array<double, kComponentCount> weights{};
                for (const auto& [kind_name, value] : kinds.items()) {
                    ComponentKind kind;
                    if (!component_from_string(kind_name, kind))
                        bad("fusion.weights." + bucket_name + "." + kind_name,
                            "unknown component");
                    if (!value.is_number())
                        bad("fusion.weights." + bucket_name + "." + kind_name,
                            "must be a number");
                    weights[static_cast<std::size_t>(kind)] = value.get<double>();
                }

                const auto active = active_components(bucket);
                double sum = 0.0;
                for (ComponentKind kind : all_components()) {
                    const double v = weights[static_cast<std::size_t>(kind)];
                    if (v < 0.0 || v > 1.0)
                        bad("fusion.weights." + bucket_name, "weights must be in [0, 1]");
                    const bool is_active =
                        std::find(active.begin(), active.end(), kind) != active.end();
                    if (!is_active && v != 0.0)
                        bad("fusion.weights." + bucket_name + "." +
                                std::string(to_string(kind)),
                            "component is inactive for this bucket; weight must be 0");
                    if (is_active)
                        sum += v;
                }
                if (std::abs(sum - 1.0) > 1e-9)
                    bad("fusion.weights." + bucket_name,
                        "active weights must sum to 1, got " + format_double(sum));
                cfg.weight_overrides[static_cast<std::size_t>(bucket)] = weights;
            }
        }
    }

    if (doc.contains("matcher")) {
        const json& m = doc["matcher"];
        if (!m.is_object())
            bad("matcher", "must be an object");
        check_known_keys(m, "matcher.", {"reject_tau"});
        cfg.reject_tau = get_number(m, "matcher.", "reject_tau", cfg.reject_tau);
        if (cfg.reject_tau < 0.0 || cfg.reject_tau > 1.0)
            bad("matcher.reject_tau", "must be in [0, 1]");
    }

    return cfg;
}

Config load_config(const std::string& path) {
    if (path.empty())
        return Config{};
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoFailure, "cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace facekit
