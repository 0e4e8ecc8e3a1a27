#include "dgs/camera.hpp"

#include <stdexcept>

namespace dgs {

void CameraIntrinsics::validate() const {
    if (fx <= 0.0 || fy <= 0.0) {
        throw std::invalid_argument("CameraIntrinsics: focal lengths must be positive");
    }
    if (width <= 0 || height <= 0) {
        throw std::invalid_argument("CameraIntrinsics: image size must be positive");
    }
    if (cx < 0.0 || cx >= width || cy < 0.0 || cy >= height) {
        throw std::invalid_argument("CameraIntrinsics: principal point outside image");
    }
}

Vec3 project(const Vec3& point, const CameraIntrinsics& K) {
    if (point.z() <= 0.0) {
        throw std::domain_error("project: point is behind the camera (z <= 0)");
    }
    const double inv_z = 1.0 / point.z();
    return Vec3(K.fx * point.x() * inv_z + K.cx, K.fy * point.y() * inv_z + K.cy, point.z());
}

Vec3 backproject(double u, double v, double depth, const CameraIntrinsics& K) {
    if (depth <= 0.0) {
        throw std::invalid_argument("backproject: depth must be positive");
    }
    return Vec3((u - K.cx) * depth / K.fx, (v - K.cy) * depth / K.fy, depth);
}

}  // namespace dgs
