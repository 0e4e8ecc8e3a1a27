#pragma once

#include <vector>

#include "dgs/pose.hpp"

namespace dgs {

enum class JointKind { prismatic, revolute, free };

struct JointHypothesis {
    JointKind kind = JointKind::free;
    Vec3 direction = Vec3::UnitX();  // prismatic direction or revolute axis (unit)
    Vec3 axis_point = Vec3::Zero();  // revolute only, meters
    // diagnostics
    double max_rotation_angle = 0.0;       // max |theta_t|
    double eigenvalue_ratio = 0.0;         // (l2 + l3) / l1
    double max_axis_deviation = 0.0;       // max delta-theta_t, radians
    double max_parallel_translation = 0.0; // max ||T_t parallel||
};

struct ArticulationThresholds {
    double eps_rot = 0.05;    // radians
    double eps_eig = 0.05;
    double eps_axis = 0.1;    // radians
    double eps_trans = 0.01;  // meters
};

/// Rotation angle per pose: 2*arccos(|w_t|).
std::vector<double> rotation_angles(const std::vector<RigidPose>& trajectory);

/// Classifies a recovered trajectory (poses relative to the object's
/// canonical frame, >= 3 of them) as a prismatic joint, a revolute joint, or
/// free rigid motion, estimating the direction / axis. An all-identity
/// trajectory reports free motion with zeroed diagnostics.
JointHypothesis classify_joint(const std::vector<RigidPose>& trajectory,
                               const ArticulationThresholds& thresholds = {});

}  // namespace dgs
