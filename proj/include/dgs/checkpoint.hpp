#pragma once

#include <string>
#include <vector>

#include "dgs/map.hpp"

namespace dgs {

/// Keyframe bookkeeping stored alongside the map (poses only, no images).
struct KeyframeRecord {
    int keyframe_id = 0;
    int frame_index = 0;
    RigidPose camera_from_world;
};

struct Checkpoint {
    DecomposedMap map;
    std::vector<KeyframeRecord> keyframes;
};

// Binary container, little-endian, versioned "DGSMAP" header. Layout:
// magic[6] u32 version, background gaussians, objects with trajectories and
// interaction state, keyframe records. Gaussian fields in declared order:
// color rgb, center xyz, radius, opacity, instance id.
void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

/// ASCII export, one record per Gaussian: x y z r g b radius opacity id.
/// Object centers are written in their canonical frame.
void export_point_cloud(const std::string& path, const DecomposedMap& map);

}  // namespace dgs
