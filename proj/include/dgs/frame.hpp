#pragma once

#include <map>
#include <optional>

#include "dgs/image.hpp"
#include "dgs/pose.hpp"

namespace dgs {

/// One observed RGB-D frame. Depth of 0 marks an invalid measurement.
/// The ground-truth layers are populated only for synthetic datasets.
struct Frame {
    int index = 0;
    ColorImage rgb;     // values in [0,1]
    DepthImage depth;   // meters, 0 = invalid

    LabelImage gt_labels;  // instance ids, 0 = background; empty when unavailable
    Mask hand_mask;        // empty when unavailable
    std::optional<RigidPose> gt_camera;      // camera-to-world
    std::map<int, RigidPose> gt_object_poses;  // canonical-to-world, by instance id

    bool has_gt_labels() const { return !gt_labels.empty(); }
    bool has_hand_mask() const { return !hand_mask.empty(); }
};

}  // namespace dgs
