// facekit — enroll, identify, pose and evaluate subcommands over the
// component-based face identification pipeline.

#include "facekit/config.hpp"
#include "facekit/errors.hpp"
#include "facekit/evaluate.hpp"
#include "facekit/gallery.hpp"
#include "facekit/image_io.hpp"
#include "facekit/matcher.hpp"
#include "facekit/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

namespace {

using facekit::Config;
using facekit::Error;
using facekit::ErrorCode;
using nlohmann::json;

struct EnrollArgs {
    std::string gallery, image, landmarks, subject;
};

struct IdentifyArgs {
    std::string gallery, image, landmarks;
    std::size_t topk = 5;
    double tau = -1.0; // <0: use config value
};

struct PoseArgs {
    std::string landmarks;
};

struct EvaluateArgs {
    std::string gallery, probes;
    std::string occlude = "none";
    double occlude_frac = 0.5;
    bool ablate = false;
    bool holistic = false;
};

void warn_roll(const facekit::PoseAngles& angles, const Config& cfg) {
    if (facekit::roll_only_exceeds(angles, cfg.pose.threshold_degrees))
        std::cerr << "warning: |roll| exceeds the threshold but only yaw/pitch "
                     "select a pose bucket; treating as frontal\n";
}

facekit::Gallery open_or_create_gallery(const std::string& path, const Config& cfg) {
    if (std::filesystem::exists(path))
        return facekit::load_gallery(path);
    return facekit::make_gallery(cfg);
}

int run_enroll(const EnrollArgs& args, const Config& cfg) {
    facekit::Gallery gallery = open_or_create_gallery(args.gallery, cfg);
    const facekit::GrayImage img = facekit::load_image(args.image);
    const facekit::LandmarkSet ls = facekit::load_landmark_file(args.landmarks);

    const auto angles = facekit::estimate_pose(ls, cfg.pose);
    warn_roll(angles, cfg);
    const auto bucket = facekit::bucket_pose(angles, cfg.pose.threshold_degrees);

    gallery = facekit::enroll(std::move(gallery), args.subject, img, ls, cfg);
    facekit::save_gallery(gallery, args.gallery);

    json components = json::array();
    for (auto kind : facekit::active_components(bucket))
        components.push_back(std::string(facekit::to_string(kind)));
    json out = {{"pose", std::string(facekit::to_string(bucket))},
                {"components", std::move(components)}};
    std::cout << out.dump() << "\n";
    return 0;
}

int run_identify(const IdentifyArgs& args, const Config& cfg) {
    const facekit::Gallery gallery = facekit::load_gallery(args.gallery);
    const facekit::GrayImage img = facekit::load_image(args.image);
    const facekit::LandmarkSet ls = facekit::load_landmark_file(args.landmarks);

    const auto angles = facekit::estimate_pose(ls, cfg.pose);
    warn_roll(angles, cfg);
    const auto bucket = facekit::bucket_pose(angles, cfg.pose.threshold_degrees);
    const auto descriptors = facekit::compute_descriptors(img, ls, bucket, cfg);

    const double tau = args.tau >= 0.0 ? args.tau : cfg.reject_tau;
    const auto ranked =
        facekit::identify(descriptors, bucket, gallery, facekit::weights_for(cfg, bucket),
                          cfg.fingerprint(), args.topk, tau);

    int rank = 0;
    for (const auto& result : ranked) {
        json components = json::object();
        for (const auto& [kind, score] : result.component_scores)
            components[std::string(facekit::to_string(kind))] = score;
        json line = {{"rank", ++rank},
                     {"subject", result.subject_id},
                     {"score", result.score},
                     {"pose", std::string(facekit::to_string(bucket))},
                     {"components", std::move(components)},
                     {"rejected", result.rejected}};
        std::cout << line.dump() << "\n";
    }
    return 0;
}

int run_pose(const PoseArgs& args, const Config& cfg) {
    const facekit::LandmarkSet ls = facekit::load_landmark_file(args.landmarks);
    const auto angles = facekit::estimate_pose(ls, cfg.pose);
    warn_roll(angles, cfg);
    const auto bucket = facekit::bucket_pose(angles, cfg.pose.threshold_degrees);

    // fixed two decimals; keep -0.00 out of the output
    auto round2 = [](double v) {
        const double r = std::round(v * 100.0) / 100.0;
        return r == 0.0 ? 0.0 : r;
    };
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "{\"pitch\":%.2f,\"yaw\":%.2f,\"roll\":%.2f,\"bucket\":\"%s\"}\n",
                  round2(angles.pitch), round2(angles.yaw), round2(angles.roll),
                  std::string(facekit::to_string(bucket)).c_str());
    std::cout << buf;
    return 0;
}

int run_evaluate(const EvaluateArgs& args, const Config& cfg) {
    const facekit::Gallery gallery = facekit::load_gallery(args.gallery);
    const auto probes = facekit::load_manifest(args.probes);

    facekit::OccludeMode mode = facekit::OccludeMode::None;
    if (args.occlude == "top")
        mode = facekit::OccludeMode::Top;
    else if (args.occlude == "bottom")
        mode = facekit::OccludeMode::Bottom;
    else if (args.occlude != "none")
        throw Error(ErrorCode::BadArguments, "--occlude must be top, bottom or none");
    if (args.occlude_frac <= 0.0 || args.occlude_frac >= 1.0)
        throw Error(ErrorCode::BadArguments, "--occlude-frac must be in (0, 1)");

    const auto report = facekit::run_evaluation(gallery, probes, cfg, mode,
                                                args.occlude_frac, args.holistic,
                                                args.ablate);
    std::cout << facekit::render_table(report);
    std::cout << facekit::render_json(report);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"component-based pose-adaptive face identification toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "toolkit configuration JSON file");

    EnrollArgs enroll_args;
    auto* enroll = app.add_subcommand("enroll", "add a capture to a gallery");
    enroll->add_option("--gallery", enroll_args.gallery, "gallery JSON file")->required();
    enroll->add_option("--image", enroll_args.image, "PNG or PGM image")->required();
    enroll->add_option("--landmarks", enroll_args.landmarks, "landmark JSON file")->required();
    enroll->add_option("--subject", enroll_args.subject, "subject identifier")->required();

    IdentifyArgs identify_args;
    auto* identify = app.add_subcommand("identify", "rank gallery subjects for a probe");
    identify->add_option("--gallery", identify_args.gallery, "gallery JSON file")->required();
    identify->add_option("--image", identify_args.image, "PNG or PGM image")->required();
    identify->add_option("--landmarks", identify_args.landmarks, "landmark JSON file")
        ->required();
    identify->add_option("--topk", identify_args.topk, "number of results")
        ->check(CLI::PositiveNumber);
    identify->add_option("--tau", identify_args.tau, "open-set rejection threshold")
        ->check(CLI::Range(0.0, 1.0));

    PoseArgs pose_args;
    auto* pose = app.add_subcommand("pose", "report pitch/yaw/roll and the pose bucket");
    pose->add_option("--landmarks", pose_args.landmarks, "landmark JSON file")->required();

    EvaluateArgs evaluate_args;
    auto* evaluate = app.add_subcommand("evaluate", "rank-1 rates over a probe manifest");
    evaluate->add_option("--gallery", evaluate_args.gallery, "gallery JSON file")->required();
    evaluate->add_option("--probes", evaluate_args.probes,
                         "CSV manifest: image,landmarks,subject")->required();
    evaluate->add_option("--occlude", evaluate_args.occlude,
                         "mask an image region first: top, bottom or none");
    evaluate->add_option("--occlude-frac", evaluate_args.occlude_frac,
                         "fraction of rows masked by --occlude");
    evaluate->add_flag("--ablate", evaluate_args.ablate,
                       "also report per-component rank-1 rates");
    evaluate->add_flag("--holistic", evaluate_args.holistic,
                       "score with weight 1 on the whole-face component");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        const json err = {{"error", "BadArguments"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    }

    try {
        const Config cfg = facekit::load_config(config_path);
        if (enroll->parsed())
            return run_enroll(enroll_args, cfg);
        if (identify->parsed())
            return run_identify(identify_args, cfg);
        if (pose->parsed())
            return run_pose(pose_args, cfg);
        if (evaluate->parsed())
            return run_evaluate(evaluate_args, cfg);
        return 2;
    } catch (const Error& e) {
        const json err = {{"error", std::string(e.code_name())}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return facekit::exit_status_for(e.code());
    } catch (const std::exception& e) {
        const json err = {{"error", "Internal"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
