#pragma once

#include <cmath>

#include "dgs/types.hpp"

namespace dgs {

/// Rigid transform x -> q * x + t with a unit quaternion (w,x,y,z).
/// Camera poses are stored camera-to-world in trajectories and ground truth;
/// object poses map the object's canonical frame to the world.
struct RigidPose {
    Quat q{1.0, 0.0, 0.0, 0.0};
    Vec3 t{0.0, 0.0, 0.0};

    static RigidPose identity() { return RigidPose{}; }

    /// Renormalizes the quaternion in place. Mandatory after optimizer steps.
    /// Already-unit quaternions are left bit-identical, which makes repeated
    /// normalization idempotent.
    void normalize() {
        if (std::abs(q.squaredNorm() - 1.0) > 1e-14) q.normalize();
    }

    RigidPose normalized() const {
        RigidPose p = *this;
        p.normalize();
        return p;
    }

    Vec3 apply(const Vec3& p) const { return q * p + t; }

    RigidPose inverse() const {
        RigidPose inv;
        inv.q = q.conjugate();
        inv.t = -(inv.q * t);
        return inv;
    }

    Mat3 rotation() const { return q.toRotationMatrix(); }
};

/// Applies b first, then a. The quaternion of the result is renormalized.
RigidPose compose(const RigidPose& a, const RigidPose& b);

/// Rotation angle of a unit quaternion in [0, pi], computed as 2*acos(|w|).
/// Throws std::invalid_argument if the quaternion norm deviates from 1 by
/// more than 1e-6.
double quat_rotation_angle(const Quat& q);

/// Angle of the relative rotation between two poses, in radians.
double rotation_angle_between(const RigidPose& a, const RigidPose& b);

/// Constant-velocity extrapolation: compose(prev, compose(inverse(prev2), prev)).
RigidPose constant_velocity_predict(const RigidPose& prev, const RigidPose& prev2);

}  // namespace dgs
