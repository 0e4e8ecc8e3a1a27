#pragma once

#include <map>
#include <string>
#include <vector>

#include "dgs/camera.hpp"
#include "dgs/frame.hpp"
#include "dgs/trajectory_io.hpp"

namespace dgs {

/// Manifest of a rendered dataset directory.
struct DatasetInfo {
    std::string dir;
    CameraIntrinsics K;
    int frame_count = 0;
    std::vector<int> object_ids;
    int hand_instance_id = 250;
    uint64_t seed = 0;
    double depth_noise_sigma = 0.0;
    double depth_hole_prob = 0.0;
};

DatasetInfo load_dataset_info(const std::string& dir);

/// Loads one frame's image layers; ground-truth poses are attached
/// separately from the trajectory files.
Frame load_frame(const DatasetInfo& info, int index);

void attach_ground_truth(Frame& frame, const Trajectory& camera,
                         const std::map<int, Trajectory>& objects);

Trajectory load_gt_camera(const DatasetInfo& info);
std::map<int, Trajectory> load_gt_objects(const DatasetInfo& info);

}  // namespace dgs
