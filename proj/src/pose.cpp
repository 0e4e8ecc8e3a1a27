#include "dgs/pose.hpp"

#include <cmath>
#include <stdexcept>

namespace dgs {

RigidPose compose(const RigidPose& a, const RigidPose& b) {
    RigidPose out;
    out.q = a.q * b.q;
    out.t = a.q * b.t + a.t;
    out.normalize();
    return out;
}

double quat_rotation_angle(const Quat& q) {
    const double n = q.norm();
    if (std::abs(n - 1.0) > 1e-6) {
        throw std::invalid_argument("quat_rotation_angle: quaternion is not unit (norm=" +
                                    std::to_string(n) + ")");
    }
    // |w| keeps the angle in [0, pi] under the double cover. Evaluating
    // 2*acos(|w|) as atan2(|vec|, |w|) stays accurate near zero rotation.
    const double vec = std::sqrt(q.x() * q.x() + q.y() * q.y() + q.z() * q.z());
    return 2.0 * std::atan2(vec, std::abs(q.w()));
}

double rotation_angle_between(const RigidPose& a, const RigidPose& b) {
    Quat rel = a.q.conjugate() * b.q;
    rel.normalize();
    return quat_rotation_angle(rel);
}

RigidPose constant_velocity_predict(const RigidPose& prev, const RigidPose& prev2) {
    return compose(prev, compose(prev2.inverse(), prev));
}

}  // namespace dgs
