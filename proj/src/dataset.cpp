#include "dgs/dataset.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "dgs/image_io.hpp"

namespace dgs {

DatasetInfo load_dataset_info(const std::string& dir) {
    std::ifstream f(dir + "/dataset.json");
    if (!f) throw std::runtime_error("dataset: cannot open manifest in " + dir);
    nlohmann::json j;
    f >> j;
    DatasetInfo info;
    info.dir = dir;
    info.K = CameraIntrinsics{j.at("fx"), j.at("fy"), j.at("cx"),
                              j.at("cy"), j.at("width"), j.at("height")};
    info.frame_count = j.at("frame_count");
    info.object_ids = j.value("object_ids", std::vector<int>{});
    info.hand_instance_id = j.value("hand_instance_id", 250);
    info.seed = j.value("seed", 0ULL);
    info.depth_noise_sigma = j.value("depth_noise_sigma", 0.0);
    info.depth_hole_prob = j.value("depth_hole_prob", 0.0);
    return info;
}

Frame load_frame(const DatasetInfo& info, int index) {
    if (index < 0 || index >= info.frame_count)
        throw std::out_of_range("dataset: frame " + std::to_string(index) + " out of range");
    char name[64];
    std::snprintf(name, sizeof(name), "/%05d", index);

    Frame f;
    f.index = index;
    f.rgb = read_ppm(info.dir + "/color" + name + ".ppm");
    f.depth = read_pgm16(info.dir + "/depth" + name + ".pgm");

    const std::string labels_path = info.dir + "/labels" + name + ".pgm";
    if (std::filesystem::exists(labels_path)) {
        const Image<uint8_t> labels8 = read_pgm8(labels_path);
        f.gt_labels = LabelImage(labels8.width(), labels8.height());
        for (size_t i = 0; i < labels8.size(); ++i) f.gt_labels[i] = labels8[i];
    }
    const std::string hand_path = info.dir + "/hand" + name + ".pgm";
    if (std::filesystem::exists(hand_path)) {
        const Image<uint8_t> hand = read_pgm8(hand_path);
        f.hand_mask = Mask(hand.width(), hand.height());
        for (size_t i = 0; i < hand.size(); ++i) f.hand_mask[i] = hand[i] ? 1 : 0;
    }

    return f;
}

void attach_ground_truth(Frame& frame, const Trajectory& camera,
                         const std::map<int, Trajectory>& objects) {
    auto it = camera.find(frame.index);
    if (it != camera.end()) frame.gt_camera = it->second;
    for (const auto& [id, traj] : objects) {
        auto pit = traj.find(frame.index);
        if (pit != traj.end()) frame.gt_object_poses[id] = pit->second;
    }
}

Trajectory load_gt_camera(const DatasetInfo& info) {
    return read_trajectory(info.dir + "/gt_camera.txt");
}

std::map<int, Trajectory> load_gt_objects(const DatasetInfo& info) {
    std::map<int, Trajectory> out;
    for (int id : info.object_ids) {
        const std::string path = info.dir + "/gt_object_" + std::to_string(id) + ".txt";
        if (std::filesystem::exists(path)) out[id] = read_trajectory(path);
    }
    return out;
}

}  // namespace dgs
