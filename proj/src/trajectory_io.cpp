#include "dgs/trajectory_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dgs {

std::string format_pose_record(int frame, const RigidPose& pose) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%d %.17g %.17g %.17g %.17g %.17g %.17g %.17g", frame,
                  pose.t.x(), pose.t.y(), pose.t.z(), pose.q.w(), pose.q.x(), pose.q.y(),
                  pose.q.z());
    return buf;
}

void write_trajectory(const std::string& path, const Trajectory& traj) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("trajectory_io: cannot create " + path);
    for (const auto& [frame, pose] : traj) f << format_pose_record(frame, pose) << "\n";
    if (!f) throw std::runtime_error("trajectory_io: failed writing " + path);
}

Trajectory read_trajectory(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("trajectory_io: cannot open " + path);
    Trajectory traj;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        int frame = 0;
        double tx, ty, tz, qw, qx, qy, qz;
        if (!(ss >> frame >> tx >> ty >> tz >> qw >> qx >> qy >> qz))
            throw std::runtime_error("trajectory_io: malformed record in " + path + ": " + line);
        RigidPose p;
        p.t = Vec3(tx, ty, tz);
        p.q = Quat(qw, qx, qy, qz);
        traj[frame] = p;
    }
    return traj;
}

}  // namespace dgs
