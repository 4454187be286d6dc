#include "facekit/landmarks.hpp"

#include "facekit/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace facekit {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, kFacePointCount> kPointNames = {
    "mid_top_left_eyebrow",
    "under_mid_bottom_left_eyelid",
    "right_of_left_eyebrow",
    "left_of_left_eyebrow",
    "mid_top_right_eyebrow",
    "under_mid_bottom_right_eyelid",
    "right_of_right_eyebrow",
    "left_of_right_eyebrow",
    "nose_tip",
    "midpoint_between_eyebrows",
    "left_corner_mouth",
    "right_corner_mouth",
    "outside_left_corner_mouth",
    "outside_right_corner_mouth",
    "top_dip_upper_lip",
    "bottom_chin",
    "top_skull",
    "top_right_forehead",
    "middle_forehead",
    "mid_right_cheek",
    "mid_left_cheek",
};

[[noreturn]] void malformed(const std::string& why) {
    throw Error(ErrorCode::MalformedJson, "malformed landmark file: " + why);
}

double require_number(const json& obj, const char* key, const std::string& ctx) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_number())
        malformed(ctx + ": field '" + key + "' must be a number");
    return it->get<double>();
}

} // namespace

const std::array<FacePointId, kFacePointCount>& all_face_points() {
    static const auto ids = [] {
        std::array<FacePointId, kFacePointCount> a{};
        for (int i = 0; i < kFacePointCount; ++i)
            a[i] = static_cast<FacePointId>(i);
        return a;
    }();
    return ids;
}

std::string_view to_string(FacePointId id) {
    return kPointNames[static_cast<std::size_t>(id)];
}

bool face_point_from_string(std::string_view name, FacePointId& out) {
    for (int i = 0; i < kFacePointCount; ++i) {
        if (kPointNames[static_cast<std::size_t>(i)] == name) {
            out = static_cast<FacePointId>(i);
            return true;
        }
    }
    return false;
}

LandmarkSet parse_landmark_file(const std::string& bytes) {
    // JSON objects silently collapse duplicate keys, so duplicates are
    // caught with a parser callback before the document is materialized.
    std::vector<std::set<std::string>> key_stack;
    std::string duplicate_key;
    auto cb = [&](int /*depth*/, json::parse_event_t event, json& parsed) {
        if (event == json::parse_event_t::object_start) {
            key_stack.emplace_back();
        } else if (event == json::parse_event_t::object_end) {
            key_stack.pop_back();
        } else if (event == json::parse_event_t::key) {
            const auto key = parsed.get<std::string>();
            if (!key_stack.empty() && !key_stack.back().insert(key).second &&
                duplicate_key.empty()) {
                duplicate_key = key;
            }
        }
        return true;
    };

    json doc;
    try {
        doc = json::parse(bytes, cb);
    } catch (const json::exception& e) {
        malformed(e.what());
    }

    if (!duplicate_key.empty()) {
        FacePointId id;
        if (face_point_from_string(duplicate_key, id))
            throw Error(ErrorCode::DuplicatePoint,
                        "duplicate point '" + duplicate_key + "'");
        malformed("duplicate key '" + duplicate_key + "'");
    }

    if (!doc.is_object())
        malformed("top level must be an object");
    for (const auto& [key, _] : doc.items()) {
        if (key != "image" && key != "width" && key != "height" && key != "points")
            malformed("unknown key '" + key + "'");
    }

    LandmarkSet ls;
    if (!doc.contains("image") || !doc["image"].is_string())
        malformed("'image' must be a string");
    ls.image_ref = doc["image"].get<std::string>();

    for (const char* key : {"width", "height"}) {
        if (!doc.contains(key) || !doc[key].is_number_integer())
            malformed(std::string("'") + key + "' must be an integer");
    }
    ls.width = doc["width"].get<int>();
    ls.height = doc["height"].get<int>();
    if (ls.width <= 0 || ls.height <= 0)
        malformed("width and height must be positive");

    if (!doc.contains("points") || !doc["points"].is_object())
        malformed("'points' must be an object");

    for (const auto& [name, value] : doc["points"].items()) {
        FacePointId id;
        if (!face_point_from_string(name, id))
            malformed("unknown point name '" + name + "'");
        if (!value.is_object())
            malformed("point '" + name + "' must be an object");
        for (const auto& [field, _] : value.items()) {
            if (field != "px" && field != "py" && field != "x" && field != "y" &&
                field != "z")
                malformed("point '" + name + "': unknown field '" + field + "'");
        }
        Landmark lm;
        lm.px = require_number(value, "px", name);
        lm.py = require_number(value, "py", name);
        lm.x = require_number(value, "x", name);
        lm.y = require_number(value, "y", name);
        lm.z = require_number(value, "z", name);
        ls.points.emplace(id, lm);
    }

    for (FacePointId id : all_face_points()) {
        if (!ls.points.count(id))
            throw Error(ErrorCode::MissingPoint,
                        "missing point '" + std::string(to_string(id)) + "'");
    }

    for (const auto& [id, lm] : ls.points) {
        const std::string name(to_string(id));
        if (!(lm.px >= 0.0 && lm.px < ls.width))
            throw Error(ErrorCode::OutOfRange,
                        name + ": px " + std::to_string(lm.px) +
                            " outside [0, " + std::to_string(ls.width) + ")");
        if (!(lm.py >= 0.0 && lm.py < ls.height))
            throw Error(ErrorCode::OutOfRange,
                        name + ": py " + std::to_string(lm.py) +
                            " outside [0, " + std::to_string(ls.height) + ")");
        if (!(lm.z > 0.0))
            throw Error(ErrorCode::OutOfRange, name + ": z must be > 0");
    }
    return ls;
}

LandmarkSet load_landmark_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoFailure, "cannot open landmark file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_landmark_file(buf.str());
}

std::string serialize_landmark_set(const LandmarkSet& ls) {
    json points = json::object();
    for (const auto& [id, lm] : ls.points) {
        points[std::string(to_string(id))] = {
            {"px", lm.px}, {"py", lm.py}, {"x", lm.x}, {"y", lm.y}, {"z", lm.z}};
    }
    json doc = {{"image", ls.image_ref},
                {"width", ls.width},
                {"height", ls.height},
                {"points", points}};
    return doc.dump(2) + "\n";
}

ValidationReport validate(const LandmarkSet& ls) {
    ValidationReport report;
    auto add = [&](const std::string& where, const std::string& rule) {
        report.violations.push_back({where, rule});
    };

    if (ls.width <= 0)
        add("width", "width > 0");
    if (ls.height <= 0)
        add("height", "height > 0");

    for (FacePointId id : all_face_points()) {
        auto it = ls.points.find(id);
        if (it == ls.points.end()) {
            add(std::string(to_string(id)), "point present");
            continue;
        }
        const Landmark& lm = it->second;
        const std::string name(to_string(id));
        if (!(lm.px >= 0.0 && lm.px < ls.width))
            add(name, "0 <= px < width");
        if (!(lm.py >= 0.0 && lm.py < ls.height))
            add(name, "0 <= py < height");
        if (!(lm.z > 0.0))
            add(name, "z > 0");
        if (!std::isfinite(lm.px) || !std::isfinite(lm.py) || !std::isfinite(lm.x) ||
            !std::isfinite(lm.y) || !std::isfinite(lm.z))
            add(name, "coordinates finite");
    }
    return report;
}

} // namespace facekit
