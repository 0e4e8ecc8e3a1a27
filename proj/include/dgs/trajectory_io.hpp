#pragma once

#include <map>
#include <string>

#include "dgs/pose.hpp"

namespace dgs {

/// Plain-text pose stream, one record per line:
///   frame tx ty tz qw qx qy qz
/// Values are printed with 17 significant digits so files round-trip exactly.
/// Camera streams store camera-to-world poses, object streams
/// canonical-to-world.
using Trajectory = std::map<int, RigidPose>;

void write_trajectory(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory(const std::string& path);

std::string format_pose_record(int frame, const RigidPose& pose);

}  // namespace dgs
