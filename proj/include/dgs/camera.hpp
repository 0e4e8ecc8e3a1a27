#pragma once

#include "dgs/types.hpp"

namespace dgs {

struct CameraIntrinsics {
    double fx = 0.0;
    double fy = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    int width = 0;
    int height = 0;

    /// Throws std::invalid_argument on non-positive focal lengths or a
    /// principal point outside the image.
    void validate() const;
};

/// Pinhole projection of a camera-frame point with z > 0.
/// Returns (u, v, d) with u = fx*x/z + cx, v = fy*y/z + cy, d = z.
/// Throws std::domain_error when z <= 0; callers cull those points.
Vec3 project(const Vec3& point, const CameraIntrinsics& K);

/// Inverse of project: pixel (u,v) at the given depth back to camera frame.
/// Throws std::invalid_argument when depth <= 0.
Vec3 backproject(double u, double v, double depth, const CameraIntrinsics& K);

}  // namespace dgs
